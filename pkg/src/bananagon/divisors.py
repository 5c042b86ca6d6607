"""Chip-firing ground truth: firing moves, Dhar reduction, rank, brute-force gonality.

Divisors are plain tuples of ints indexed by vertex id.  Graph arguments may
be any banana tree/path/star, or a raw adjacency sequence
(``adj[v] = {w: multiplicity}``) for general multigraphs; reduction and rank
work on the latter too, adjacency moves need a tree.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Iterator, NamedTuple, Sequence

Divisor = tuple[int, ...]
Adjacency = Sequence[dict[int, int]]

DEFAULT_DEGREE_CAP = 12
DEFAULT_VERTEX_CAP = 9


class CapExceeded(ValueError):
    """Instance is larger than a brute-force routine is allowed to handle."""


def _adj(G) -> Adjacency:
    return G.adjacency if hasattr(G, "adjacency") else G


def multigraph(n: int, edges: Iterable[tuple[int, int, int]]) -> tuple[dict[int, int], ...]:
    """Adjacency for an arbitrary loopless multigraph given as ``(u, v, mult)`` triples."""
    adj: list[dict[int, int]] = [{} for _ in range(n)]
    for u, v, m in edges:
        adj[u][v] = adj[u].get(v, 0) + m
        adj[v][u] = adj[v].get(u, 0) + m
    return tuple(adj)


def degree(D: Sequence[int]) -> int:
    return sum(D)


def is_effective(D: Sequence[int]) -> bool:
    return all(x >= 0 for x in D)


def parse_divisor(text: str) -> Divisor:
    """Parse ``d:3,0,0,1``."""
    body = text.strip()
    if body.startswith("d:"):
        body = body[2:]
    try:
        return tuple(int(x) for x in body.split(",")) if body else ()
    except ValueError:
        raise ValueError(f"bad divisor {text!r}") from None


def format_divisor(D: Sequence[int]) -> str:
    return "d:" + ",".join(map(str, D))


def point(n: int, v: int, chips: int = 1) -> Divisor:
    D = [0] * n
    D[v] = chips
    return tuple(D)


def fire_set(G, D: Sequence[int], S: Iterable[int], times: int = 1) -> Divisor:
    """Fire every vertex of ``S`` ``times`` times; only boundary edges move chips."""
    adj = _adj(G)
    S = set(S)
    out = list(D)
    for u in S:
        for w, m in adj[u].items():
            if w not in S:
                out[u] -= m * times
                out[w] += m * times
    return tuple(out)


def is_legal_firing(G, D: Sequence[int], S: Iterable[int]) -> bool:
    return is_effective(D) and is_effective(fire_set(G, D, S))


def _side_of(adj: Adjacency, start: int, cut: tuple[int, int]) -> set[int]:
    a, b = cut
    seen = {start}
    queue = [start]
    while queue:
        u = queue.pop()
        for w in adj[u]:
            if (u, w) in ((a, b), (b, a)) or w in seen:
                continue
            seen.add(w)
            queue.append(w)
    return seen


def adjacency_move(G, D: Sequence[int], frm: int, to: int) -> Divisor:
    """Fire the side of ``frm`` cut off by the (frm, to) bunch: |E(frm, to)| chips cross."""
    adj = _adj(G)
    if to not in adj[frm]:
        raise ValueError(f"vertices {frm} and {to} are not adjacent")
    side = _side_of(adj, frm, (frm, to))
    if to in side:
        raise ValueError("adjacency moves need the bunch to be a bridge")
    return fire_set(adj, D, side)


def is_legal_adjacency_move(G, D: Sequence[int], frm: int, to: int) -> bool:
    return is_effective(D) and is_effective(adjacency_move(G, D, frm, to))


def _distances(adj: Adjacency, q: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[q] = 0
    queue = deque([q])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    if min(dist) < 0:
        raise ValueError("graph is disconnected")
    return dist


def _unburnt(adj: Adjacency, D: Sequence[int], q: int) -> tuple[set[int], dict[int, int]]:
    """One burning pass from ``q``.  Returns the unburnt set and each unburnt
    vertex's edge count into the burnt region."""
    n = len(adj)
    burnt = [False] * n
    burnt[q] = True
    hot = [0] * n
    stack = [q]
    while stack:
        u = stack.pop()
        for w, m in adj[u].items():
            if burnt[w]:
                continue
            hot[w] += m
            if hot[w] > D[w]:
                burnt[w] = True
                stack.append(w)
    rest = {v for v in range(n) if not burnt[v]}
    return rest, {v: hot[v] for v in rest}


def dhar_reduce(G, D: Sequence[int], q: int) -> Divisor:
    """The unique q-reduced divisor linearly equivalent to ``D``."""
    adj = _adj(G)
    D = list(D)
    dist = _distances(adj, q)
    # Phase 1: clear debt away from q, farthest layer first.  Firing the ball of
    # radius d-1 feeds every vertex at distance d and touches nothing farther.
    for d in range(max(dist), 0, -1):
        need = 0
        for v in range(len(adj)):
            if dist[v] == d and D[v] < 0:
                inward = sum(m for w, m in adj[v].items() if dist[w] == d - 1)
                need = max(need, -(D[v] // inward))
        if need:
            ball = [v for v in range(len(adj)) if dist[v] < d]
            D = list(fire_set(adj, D, ball, need))
    # Phase 2: fire the unburnt region as often as stays legal, until all burns.
    while True:
        rest, hot = _unburnt(adj, D, q)
        if not rest:
            return tuple(D)
        times = min(D[v] // h for v, h in hot.items() if h > 0)
        D = list(fire_set(adj, D, rest, times))


def is_q_reduced(G, D: Sequence[int], q: int) -> bool:
    adj = _adj(G)
    if any(D[v] < 0 for v in range(len(adj)) if v != q):
        return False
    rest, _ = _unburnt(adj, D, q)
    return not rest


def equivalent(G, D: Sequence[int], D2: Sequence[int]) -> bool:
    if degree(D) != degree(D2):
        return False
    return dhar_reduce(G, D, 0) == dhar_reduce(G, D2, 0)


def has_positive_rank(G, D: Sequence[int]) -> bool:
    """True iff for every vertex v some effective equivalent of ``D`` has a chip on v."""
    n = len(_adj(G))
    return all(dhar_reduce(G, D, v)[v] >= 1 for v in range(n))


def _minus(D: Sequence[int], v: int) -> Divisor:
    out = list(D)
    out[v] -= 1
    return tuple(out)


def rank(G, D: Sequence[int], max_degree: int = DEFAULT_DEGREE_CAP) -> int:
    """Baker-Norine rank by the recursion r(D) = 1 + min_v r(D - v), memoized on reduced forms."""
    if degree(D) < 0:
        return -1
    if degree(D) > max_degree:
        raise CapExceeded(f"degree {degree(D)} exceeds rank cap {max_degree}")
    adj = _adj(G)
    n = len(adj)
    memo: dict[Divisor, int] = {}

    def go(E: Divisor) -> int:
        R = dhar_reduce(adj, E, 0)
        if R[0] < 0:
            return -1
        if R in memo:
            return memo[R]
        best = None
        for v in range(n):
            sub = go(_minus(R, v))
            if best is None or sub < best:
                best = sub
            if best == -1:
                break
        memo[R] = best + 1
        return best + 1

    return go(tuple(D))


def rank_at_least(G, D: Sequence[int], r: int, memo: dict | None = None) -> bool:
    """Decide r(D) >= r without computing the exact rank."""
    adj = _adj(G)
    if memo is None:
        memo = {}
    R = dhar_reduce(adj, D, 0)
    if R[0] < 0:
        return False
    if r <= 0:
        return True
    key = (R, r)
    hit = memo.get(key)
    if hit is None:
        hit = all(rank_at_least(adj, _minus(R, v), r - 1, memo) for v in range(len(adj)))
        memo[key] = hit
    return hit


def effective_divisors(n: int, d: int) -> Iterator[Divisor]:
    """All effective degree-d divisors on n vertices, lexicographic by vertex id."""
    if n == 1:
        yield (d,)
        return
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(d + n - 2 - prev)
        yield tuple(parts)


class OracleResult(NamedTuple):
    gonality: int
    witness: Divisor


def _check_vertex_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"{n} vertices exceeds oracle cap {cap}")


def gonality_oracle(G, max_vertices: int = DEFAULT_VERTEX_CAP) -> OracleResult:
    """Brute-force gonality.

    Degrees are tried in increasing order; within a degree only the
    0-reduced representative of each class is tested, since positive rank is
    a class property and every effective class has an effective 0-reduced form.
    """
    adj = _adj(G)
    n = len(adj)
    _check_vertex_cap(n, max_vertices)
    for d in itertools.count(1):
        for D in effective_divisors(n, d):
            if is_q_reduced(adj, D, 0) and has_positive_rank(adj, D):
                return OracleResult(d, D)
    raise AssertionError("unreachable")


def gon_r_oracle(
    G,
    r: int,
    max_vertices: int = DEFAULT_VERTEX_CAP,
    max_degree: int = DEFAULT_DEGREE_CAP,
    start: int | None = None,
) -> int:
    """Minimum degree of a divisor of rank at least ``r``.

    ``start`` lets callers skip degrees already known to be too small
    (e.g. ``gon_{r-1} + 1``).
    """
    if r < 1:
        raise ValueError("r must be positive")
    adj = _adj(G)
    n = len(adj)
    _check_vertex_cap(n, max_vertices)
    memo: dict = {}
    for d in range(start if start is not None else r, max_degree + 1):
        for D in effective_divisors(n, d):
            if is_q_reduced(adj, D, 0) and rank_at_least(adj, D, r, memo):
                return d
    raise CapExceeded(f"gon_{r} exceeds degree cap {max_degree}")


def adjacency_reachable_set(G, D: Sequence[int], max_states: int = 100_000) -> set[Divisor]:
    """Every effective divisor reachable from ``D`` by legal adjacency moves."""
    adj = _adj(G)
    D = tuple(D)
    moves = []
    for u in range(len(adj)):
        for w, m in adj[u].items():
            side = _side_of(adj, u, (u, w))
            if w in side:
                raise ValueError("adjacency moves need a banana tree")
            moves.append((u, w, m))
    seen = {D}
    queue = deque([D])
    while queue:
        cur = queue.popleft()
        for u, w, m in moves:
            if cur[u] >= m:
                nxt = list(cur)
                nxt[u] -= m
                nxt[w] += m
                nxt = tuple(nxt)
                if nxt not in seen:
                    if len(seen) >= max_states:
                        raise CapExceeded(f"more than {max_states} states")
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def adjacency_reachable(G, D: Sequence[int], D2: Sequence[int], max_states: int = 100_000) -> bool:
    return tuple(D2) in adjacency_reachable_set(G, D, max_states)
