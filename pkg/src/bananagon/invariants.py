"""Closed-form invariants of banana trees.

Scramble number and screewidth coincide on banana trees: both equal the
largest k such that some connected set of at least k vertices has every
internal bunch of size at least k.  Gonality has closed forms for stars and
long monocultures; paths go through the DP, anything else small through
the brute-force oracle.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import divisors
from .graph_core import (
    BananaPath,
    BananaStar,
    BananaTree,
    Graph,
    as_tree,
    delete_edge,
    describe,
    genus,
    lcm_bound,
    max_bunch,
    monoculture,
    ripen,
    tree_as_path,
    tree_as_star,
)
from .path_dp import gonality_dp


class NotComputable(ValueError):
    """No method is available for this graph's gonality at this size."""


def _components(T: BananaTree, k: int) -> list[list[int]]:
    """Vertex sets of the forest keeping only bunches of size >= k (BFS order, by lowest id)."""
    adj = T.adjacency
    seen = [False] * T.n_vertices
    comps = []
    for s in range(T.n_vertices):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if not seen[w] and adj[u][w] >= k:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def scramble_screewidth(G: Graph) -> int:
    T = as_tree(G)
    for k in range(max_bunch(T) + 1, 1, -1):
        if any(len(c) >= k for c in _components(T, k)):
            return k
    return 1


@dataclass(frozen=True)
class ScrambleWitness:
    eggs: tuple[int, ...]  # singleton eggs
    claimed_order: int


@dataclass(frozen=True)
class TreeCutDecomposition:
    bags: tuple[tuple[int, ...], ...]
    links: tuple[tuple[int, int], ...]  # pairs of bag indices

    def width(self, G: Graph) -> int:
        """Max over node and link weights, computed from scratch for any tree-shaped bag layout."""
        T = as_tree(G)
        node_of = {}
        for b, bag in enumerate(self.bags):
            for v in bag:
                node_of[v] = b
        nb: list[list[int]] = [[] for _ in self.bags]
        for x, y in self.links:
            nb[x].append(y)
            nb[y].append(x)
        node_w = [len(bag) for bag in self.bags]
        link_w = {tuple(sorted(l)): 0 for l in self.links}
        for u, v, m in T.bunches:
            path = _tree_path(nb, node_of[u], node_of[v])
            for x, y in zip(path, path[1:]):
                link_w[tuple(sorted((x, y)))] += m
            for x in path[1:-1]:
                node_w[x] += m
        return max(node_w + list(link_w.values()))

    def is_valid(self, G: Graph) -> bool:
        T = as_tree(G)
        flat = sorted(v for bag in self.bags for v in bag)
        if flat != list(range(T.n_vertices)):
            return False
        if len(self.links) != len(self.bags) - 1:
            return False
        nb: list[list[int]] = [[] for _ in self.bags]
        for x, y in self.links:
            nb[x].append(y)
            nb[y].append(x)
        return len(_reach(nb, 0)) == len(self.bags)


def _reach(nb, s):
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for w in nb[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _tree_path(nb, s, t) -> list[int]:
    prev = {s: None}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for w in nb[u]:
            if w not in prev:
                prev[w] = u
                queue.append(w)
    path = [t]
    while path[-1] != s:
        path.append(prev[path[-1]])
    return path[::-1]


def scramble_witness(G: Graph) -> ScrambleWitness:
    T = as_tree(G)
    k = scramble_screewidth(T)
    comp = next(c for c in _components(T, k) if len(c) >= k)
    return ScrambleWitness(tuple(sorted(comp[:k])), k)


def scramble_order(G: Graph, eggs: Sequence[int]) -> int:
    """Order of the scramble with the given singleton eggs on a banana tree.

    Hitting number is the egg count; the egg-cut number is the cheapest bunch
    whose removal leaves eggs on both sides (a tree has no cheaper cuts).
    """
    T = as_tree(G)
    eggs = set(eggs)
    if len(eggs) < 2:
        return len(eggs)
    adj = T.adjacency
    cut = math.inf
    for u, v, m in T.bunches:
        side = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in side and (x, w) not in ((u, v), (v, u)):
                    side.add(w)
                    stack.append(w)
        if eggs & side and eggs - side:
            cut = min(cut, m)
    return int(min(len(eggs), cut))


def scramble_witness_valid(G: Graph, w: ScrambleWitness) -> bool:
    T = as_tree(G)
    eggs = set(w.eggs)
    if len(eggs) < w.claimed_order:
        return False
    inside = [m for u, v, m in T.bunches if u in eggs and v in eggs]
    if len(inside) != len(eggs) - 1:  # induced subforest of a tree is connected iff |E| = |V| - 1
        return False
    if any(m < w.claimed_order for m in inside):
        return False
    return scramble_order(T, w.eggs) >= w.claimed_order


def tcd_witness(G: Graph) -> TreeCutDecomposition:
    """Grow bags by BFS from the lowest-id leaf, joining a neighbour's bag across bunches larger than k."""
    T = as_tree(G)
    k = scramble_screewidth(T)
    adj = T.adjacency
    n = T.n_vertices
    start = min((v for v in range(n) if len(adj[v]) <= 1), default=0)
    bag_of = {start: 0}
    bags = [[start]]
    links = []
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w in bag_of:
                continue
            if adj[u][w] > k:
                bag_of[w] = bag_of[u]
                bags[bag_of[u]].append(w)
            else:
                bag_of[w] = len(bags)
                bags.append([w])
                links.append((bag_of[u], bag_of[w]))
            queue.append(w)
    return TreeCutDecomposition(tuple(tuple(sorted(b)) for b in bags), tuple(links))


def star_gonality(S: BananaStar) -> int:
    sizes = [a for a, _ in S.bunch_classes] + [1]
    best = sizes[0]
    covered = 0
    for j, (_, r) in enumerate(S.bunch_classes):
        covered += r
        best = min(best, covered + sizes[j + 1])
    return best


def star_witness(S: BananaStar) -> tuple[int, ...]:
    """Degree-``star_gonality`` divisor: a chip on every leaf across a bunch larger
    than the best threshold size, and that many chips on the center."""
    sizes = [a for a, _ in S.bunch_classes] + [1]
    best_j, best, covered = 0, sizes[0], 0
    for j, (_, r) in enumerate(S.bunch_classes):
        covered += r
        if covered + sizes[j + 1] < best:
            best_j, best = j + 1, covered + sizes[j + 1]
    threshold = sizes[best_j]
    T = S.to_tree()
    D = [0] * T.n_vertices
    D[0] = threshold
    for _, leaf, m in T.bunches:
        if m > threshold:
            D[leaf] = 1
    return tuple(D)


def star_scramble(S: BananaStar) -> int:
    best = 0
    covered = 0
    for a, r in S.bunch_classes:
        covered += r
        best = max(best, min(a, 1 + covered))
    return best


@dataclass(frozen=True)
class MonocultureGonality:
    value: int
    exact: bool  # False: value is only the lcm upper bound


def monoculture_gonality(A_prime: Sequence[int], n: int) -> MonocultureGonality:
    if not A_prime:
        raise ValueError("monoculture pattern must be nonempty")
    L = math.lcm(*A_prime)
    return MonocultureGonality(L, n >= len(A_prime) * L * L)


def compute_gonality(G: Graph, oracle_cap: int = divisors.DEFAULT_VERTEX_CAP) -> tuple[int, str]:
    """Gonality and the method used: ``dp`` for paths, ``star`` for stars, else ``oracle``."""
    if isinstance(G, BananaPath):
        return gonality_dp(G).gonality, "dp"
    if isinstance(G, BananaStar):
        return star_gonality(G), "star"
    R = ripen(G)
    P = tree_as_path(R)
    if P is not None:
        return gonality_dp(P).gonality, "dp"
    S = tree_as_star(R)
    if S is not None:
        return star_gonality(S), "star"
    if R.n_vertices > oracle_cap:
        raise NotComputable(
            f"tree with {R.n_vertices} vertices after ripening is neither a path nor a star "
            f"and exceeds the oracle cap of {oracle_cap}"
        )
    return divisors.gonality_oracle(R, max_vertices=oracle_cap).gonality, "oracle"


def bn_bound(g: int) -> int:
    return (g + 3) // 2


@dataclass(frozen=True)
class BnCheck:
    gonality: int
    bound: int
    holds: bool
    equality: bool
    max_bunch_ok: bool


def bn_check(G: Graph, gonality: int | None = None) -> BnCheck:
    if gonality is None:
        gonality, _ = compute_gonality(G)
    bound = bn_bound(genus(G))
    equality = gonality == bound
    return BnCheck(
        gonality=gonality,
        bound=bound,
        holds=gonality <= bound,
        equality=equality,
        max_bunch_ok=(not equality) or max_bunch(G) <= 4,
    )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass
class GapConstruction:
    r: int
    a: int
    b: int | None
    n: int
    bunch_index: int  # 0-based; the bunch joins v_{bunch_index} and v_{bunch_index + 1}
    graph: BananaPath
    gon_before: int | None = None
    gon_after: int | None = None

    @property
    def graph_after(self) -> BananaPath:
        return delete_edge(self.graph, self.bunch_index)


def construct_gap(r: int, verify: bool = False) -> GapConstruction:
    """A banana path whose central bunch loses one edge and gains exactly ``r`` gonality."""
    if r < 1:
        raise ValueError("r must be positive")
    if r == 1:
        out = GapConstruction(r, 3, None, 3, 1, BananaPath((3, 3, 3)))
    else:
        a = 3
        while not (r <= (a - 1) // 2 and (a - 1) % r != 0):
            a += 1
        b = r
        while not (_is_prime(b) and a % b != 0 and (a - 1) % b != 0):
            b += a - 1
        n = 4 * (a * b) ** 2 + 1
        out = GapConstruction(r, a, b, n, (n - 1) // 2, monoculture((a, b), n))
    if verify:
        out.gon_before = gonality_dp(out.graph).gonality
        out.gon_after = gonality_dp(out.graph_after).gonality
    return out


@dataclass
class InvariantReport:
    graph: str
    n_vertices: int
    gonality: int | None
    gonality_method: str | None
    sn_scw: int
    genus: int
    lcm_bound: int
    bn_bound: int
    bn_equality: bool | None
    max_bunch: int
    witnesses: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def invariant_report(G: Graph, witnesses: bool = False) -> InvariantReport:
    try:
        gon, method = compute_gonality(G)
    except NotComputable:
        gon, method = None, None
    g = genus(G)
    report = InvariantReport(
        graph=describe(G),
        n_vertices=G.n_vertices,
        gonality=gon,
        gonality_method=method,
        sn_scw=scramble_screewidth(G),
        genus=g,
        lcm_bound=lcm_bound(G),
        bn_bound=bn_bound(g),
        bn_equality=None if gon is None else gon == bn_bound(g),
        max_bunch=max_bunch(G),
    )
    if witnesses:
        sw = scramble_witness(G)
        tcd = tcd_witness(G)
        report.witnesses = {
            "scramble_eggs": list(sw.eggs),
            "tcd_bags": [list(b) for b in tcd.bags],
            "tcd_links": [list(l) for l in tcd.links],
        }
        if isinstance(G, BananaPath):
            report.witnesses["divisor"] = list(gonality_dp(G).witness)
    return report
