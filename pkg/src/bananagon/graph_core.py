"""Banana trees, paths, stars and monocultures.

A banana tree is a loopless multigraph whose underlying simple graph is a
tree.  Vertices are the dense ids ``0..n-1``; a path ``B_A`` puts vertex
``v_i`` at id ``i`` and its bunch ``j`` (0-based) between ``v_j`` and
``v_{j+1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence, Union


class GraphFormatError(ValueError):
    """Raised for text that is not a valid graph description."""


@dataclass(frozen=True)
class BananaTree:
    n_vertices: int
    bunches: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        n = self.n_vertices
        if n < 1:
            raise ValueError("a banana tree needs at least one vertex")
        bunches = tuple((int(u), int(v), int(m)) for u, v, m in self.bunches)
        object.__setattr__(self, "bunches", bunches)
        if len(bunches) != n - 1:
            raise ValueError(f"expected {n - 1} bunches, got {len(bunches)}")
        seen = set()
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, m in bunches:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad bunch endpoints ({u}, {v})")
            if m < 1:
                raise ValueError(f"bunch ({u}, {v}) has multiplicity {m} < 1")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"vertex pair {key} repeated")
            seen.add(key)
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError("underlying simple graph has a cycle")
            parent[ru] = rv

    @cached_property
    def adjacency(self) -> tuple[dict[int, int], ...]:
        adj: list[dict[int, int]] = [{} for _ in range(self.n_vertices)]
        for u, v, m in self.bunches:
            adj[u][v] = m
            adj[v][u] = m
        return tuple(adj)

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, _, m in self.bunches]

    @property
    def n_edges(self) -> int:
        return sum(self.multiplicities)

    def mult(self, u: int, v: int) -> int:
        return self.adjacency[u].get(v, 0)

    def to_tree(self) -> "BananaTree":
        return self


@dataclass(frozen=True)
class BananaPath:
    A: tuple[int, ...] = ()

    def __post_init__(self):
        A = tuple(int(a) for a in self.A)
        object.__setattr__(self, "A", A)
        for a in A:
            if a < 1:
                raise ValueError(f"bunch sizes must be positive, got {a}")

    @property
    def n_vertices(self) -> int:
        return len(self.A) + 1

    @property
    def multiplicities(self) -> list[int]:
        return list(self.A)

    def reversed(self) -> "BananaPath":
        return BananaPath(self.A[::-1])

    @cached_property
    def _tree(self) -> BananaTree:
        return BananaTree(self.n_vertices, tuple((j, j + 1, a) for j, a in enumerate(self.A)))

    def to_tree(self) -> BananaTree:
        return self._tree

    @property
    def adjacency(self):
        return self._tree.adjacency

    def __str__(self):
        return "path:" + ",".join(map(str, self.A))


@dataclass(frozen=True)
class BananaStar:
    """Star ``S_(a_1^r_1, ..., a_k^r_k)`` with ``a_1 > ... > a_k``; center is vertex 0."""

    bunch_classes: tuple[tuple[int, int], ...]

    def __post_init__(self):
        classes = tuple((int(a), int(r)) for a, r in self.bunch_classes)
        object.__setattr__(self, "bunch_classes", classes)
        if not classes:
            raise ValueError("a banana star needs at least one bunch class")
        for a, r in classes:
            if a < 1 or r < 1:
                raise ValueError(f"bad bunch class {a}^{r}")
        for (a1, _), (a2, _) in zip(classes, classes[1:]):
            if a1 <= a2:
                raise ValueError("bunch sizes of a star must be strictly decreasing")

    @property
    def n_leaves(self) -> int:
        return sum(r for _, r in self.bunch_classes)

    @property
    def n_vertices(self) -> int:
        return self.n_leaves + 1

    @property
    def multiplicities(self) -> list[int]:
        return [a for a, r in self.bunch_classes for _ in range(r)]

    @cached_property
    def _tree(self) -> BananaTree:
        return star_to_tree(self)

    def to_tree(self) -> BananaTree:
        return self._tree

    @property
    def adjacency(self):
        return self._tree.adjacency

    def __str__(self):
        return "star:" + ",".join(f"{a}^{r}" for a, r in self.bunch_classes)


@dataclass(frozen=True)
class MonocultureSpec:
    A_prime: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "A_prime", tuple(int(a) for a in self.A_prime))
        if not self.A_prime:
            raise ValueError("monoculture pattern must be nonempty")
        if self.n < 0:
            raise ValueError("number of bunches must be nonnegative")


Graph = Union[BananaTree, BananaPath, BananaStar]


def as_tree(G: Graph) -> BananaTree:
    return G.to_tree()


def make_path(A: Iterable[int]) -> BananaPath:
    return BananaPath(tuple(A))


def make_monoculture(spec: MonocultureSpec) -> BananaPath:
    s = len(spec.A_prime)
    return BananaPath(tuple(spec.A_prime[i % s] for i in range(spec.n)))


def monoculture(A_prime: Sequence[int], n: int) -> BananaPath:
    return make_monoculture(MonocultureSpec(tuple(A_prime), n))


def make_star(classes: Iterable[tuple[int, int]]) -> BananaStar:
    return BananaStar(tuple(classes))


def star_to_tree(star: BananaStar) -> BananaTree:
    bunches = []
    leaf = 1
    for a, r in star.bunch_classes:
        for _ in range(r):
            bunches.append((0, leaf, a))
            leaf += 1
    return BananaTree(leaf, tuple(bunches))


def genus(G: Graph) -> int:
    return sum(G.multiplicities) - G.n_vertices + 1


def lcm_bound(G: Graph) -> int:
    mults = G.multiplicities
    return math.lcm(*mults) if mults else 1


def max_bunch(G: Graph) -> int:
    return max(G.multiplicities, default=0)


def ripen(G: Graph) -> Graph:
    """Contract every solitary edge.  Paths stay paths; gonality is unchanged."""
    if isinstance(G, BananaPath):
        return BananaPath(tuple(a for a in G.A if a >= 2))
    T = as_tree(G)
    parent = list(range(T.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, m in T.bunches:
        if m == 1:
            ru, rv = find(u), find(v)
            parent[max(ru, rv)] = min(ru, rv)
    roots = sorted({find(v) for v in range(T.n_vertices)})
    relabel = {r: i for i, r in enumerate(roots)}
    bunches = tuple(
        (relabel[find(u)], relabel[find(v)], m) for u, v, m in T.bunches if m >= 2
    )
    return BananaTree(len(roots), bunches)


def delete_edge(G: Graph, index: int) -> Graph:
    """Remove one edge from bunch ``index`` (0-based position in the bunch list)."""
    if isinstance(G, BananaPath):
        if G.A[index] < 2:
            raise ValueError("deleting a solitary edge would disconnect the graph")
        A = list(G.A)
        A[index] -= 1
        return BananaPath(tuple(A))
    T = as_tree(G)
    u, v, m = T.bunches[index]
    if m < 2:
        raise ValueError("deleting a solitary edge would disconnect the graph")
    bunches = list(T.bunches)
    bunches[index] = (u, v, m - 1)
    return BananaTree(T.n_vertices, tuple(bunches))


def split_heavy_offsets(P: BananaPath) -> list[tuple[int, BananaPath]]:
    """Like :func:`split_heavy` but also returns each piece's first vertex id in ``P``."""
    pending = [(0, P.A)]
    done = []
    while pending:
        offset, A = pending.pop()
        m = len(A) + 1
        j = next((j for j, a in enumerate(A) if a > m), None)
        if j is None:
            done.append((offset, BananaPath(A)))
        else:
            pending.append((offset + j + 1, A[j + 1:]))
            pending.append((offset, A[:j]))
    done.sort(key=lambda t: t[0])
    return done


def split_heavy(P: BananaPath) -> list[BananaPath]:
    """Cut ``P`` at heavy bunches (size above the piece's vertex count) until none remain.

    A bunch that heavy can never be crossed by a divisor of degree at most the
    piece's vertex count, so gonality is additive over the pieces.
    """
    return [piece for _, piece in split_heavy_offsets(P)]


def canonical_path(P: BananaPath) -> BananaPath:
    return P if P.A <= P.A[::-1] else P.reversed()


def tree_as_path(G: Graph) -> BananaPath | None:
    """Relabel ``G`` as a path starting from its lowest-id leaf, or ``None`` if it is not one."""
    if isinstance(G, BananaPath):
        return G
    T = as_tree(G)
    adj = T.adjacency
    if T.n_vertices == 1:
        return BananaPath(())
    if any(len(nb) > 2 for nb in adj):
        return None
    start = min(v for v in range(T.n_vertices) if len(adj[v]) == 1)
    A = []
    prev, cur = -1, start
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            break
        A.append(adj[cur][nxt[0]])
        prev, cur = cur, nxt[0]
    return BananaPath(tuple(A))


def tree_as_star(G: Graph) -> BananaStar | None:
    """Return the star form of ``G`` if some vertex is adjacent to all others (n >= 3)."""
    if isinstance(G, BananaStar):
        return G
    T = as_tree(G)
    n = T.n_vertices
    if n < 3:
        return None
    adj = T.adjacency
    centers = [v for v in range(n) if len(adj[v]) == n - 1]
    if not centers:
        return None
    counts: dict[int, int] = {}
    for m in adj[centers[0]].values():
        counts[m] = counts.get(m, 0) + 1
    return BananaStar(tuple(sorted(counts.items(), reverse=True)))


# -- text formats -----------------------------------------------------------

def _parse_ints(text: str, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise GraphFormatError(f"bad {what}: {text!r}") from None


def parse_graph(text: str) -> Graph:
    """Parse ``path:3,2,3``, ``star:4^1,3^3`` or a ``bt1`` document."""
    stripped = text.strip()
    try:
        if stripped.startswith("path:"):
            return make_path(_parse_ints(stripped[5:], "path"))
        if stripped.startswith("star:"):
            classes = []
            for item in stripped[5:].split(","):
                a, _, r = item.strip().partition("^")
                classes.append((int(a), int(r) if r else 1))
            return make_star(classes)
        lines = [ln.split("#")[0].strip() for ln in stripped.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or lines[0].split()[0] != "bt1":
            raise GraphFormatError("expected 'path:', 'star:' or a 'bt1' header")
        header = lines[0].split()
        if len(header) != 2:
            raise GraphFormatError("header must be 'bt1 <n_vertices>'")
        bunches = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 3:
                raise GraphFormatError(f"bad bunch line {ln!r}")
            bunches.append(tuple(int(p) for p in parts))
        return BananaTree(int(header[1]), tuple(bunches))
    except GraphFormatError:
        raise
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def read_graph(spec: str) -> Graph:
    """Accept shorthand (``path:...`` / ``star:...``) or a path to a ``bt1`` file."""
    if spec.startswith(("path:", "star:", "bt1")):
        return parse_graph(spec)
    p = Path(spec)
    if not p.is_file():
        raise GraphFormatError(f"not a graph shorthand or readable file: {spec!r}")
    return parse_graph(p.read_text())


def format_tree(G: Graph) -> str:
    T = as_tree(G)
    lines = [f"bt1 {T.n_vertices}"]
    lines += [f"{u} {v} {m}" for u, v, m in T.bunches]
    return "\n".join(lines) + "\n"


def describe(G: Graph) -> str:
    if isinstance(G, (BananaPath, BananaStar)):
        return str(G)
    return "bt1:" + ";".join(f"{u}-{v}x{m}" for u, v, m in G.bunches)
