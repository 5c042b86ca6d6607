"""Exhaustive experiments over small banana paths."""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import divisors
from .graph_core import BananaPath, BananaTree, canonical_path, genus, lcm_bound, make_star
from .invariants import (
    bn_check,
    scramble_screewidth,
    scramble_witness,
    scramble_witness_valid,
    star_gonality,
    tcd_witness,
)
from .path_dp import gonality_dp, positive_rank_path


def canonical_paths(n_vertices: int, sizes: range) -> Iterator[BananaPath]:
    """Every path on ``n_vertices`` with bunch sizes from ``sizes``, once per reversal class."""
    for A in itertools.product(sizes, repeat=n_vertices - 1):
        if A <= A[::-1]:
            yield BananaPath(A)


def enumeration_domain(n_vertices: int) -> Iterator[BananaPath]:
    # Size V+1 stands for every size above V: such a bunch is never crossed.
    return canonical_paths(n_vertices, range(2, n_vertices + 2))


def domain_count(n_vertices: int) -> int:
    V = n_vertices
    return (V ** (V - 1) + V ** math.ceil((V - 1) / 2)) // 2


@dataclass
class Table1Row:
    vertices: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_list(self, width: int | None = None) -> list[int]:
        width = width or self.vertices
        return [self.counts.get(g, 0) for g in range(2, width + 1)]


def _tally(args: tuple[int, int, int]) -> Counter:
    V, worker, jobs = args
    out: Counter = Counter()
    for idx, P in enumerate(enumeration_domain(V)):
        if idx % jobs == worker:
            out[gonality_dp(P).gonality] += 1
    return out


def table1_row(n_vertices: int, jobs: int = 1) -> Table1Row:
    if jobs <= 1:
        counts = _tally((n_vertices, 0, 1))
    else:
        with ProcessPoolExecutor(jobs) as pool:
            counts = sum(pool.map(_tally, [(n_vertices, w, jobs) for w in range(jobs)]), Counter())
    return Table1Row(n_vertices, dict(sorted(counts.items())))


def table1(max_vertices: int, jobs: int = 1) -> list[Table1Row]:
    if max_vertices < 2:
        raise ValueError("max_vertices must be at least 2")
    return [table1_row(V, jobs) for V in range(2, max_vertices + 1)]


@dataclass
class ConjectureRecord:
    graph: BananaPath
    gon1: int
    gon2: int
    gon3: int | None
    genus: int
    triggered: bool
    claim1_ok: bool | None
    claim2_ok: bool | None

    @property
    def violation(self) -> bool:
        return self.claim1_ok is False or self.claim2_ok is False


def conjecture_record(P: BananaPath) -> ConjectureRecord:
    """Evaluate: gon2 = gon1 + 1 implies g = C(gon1, 2) and (gon1 >= 2 =>) gon3 = 2 gon1."""
    n = P.n_vertices
    gon1 = gonality_dp(P).gonality
    # gon_r <= r * gon1, so 3 * gon1 bounds every search below.
    cap = 3 * gon1
    gon2 = divisors.gon_r_oracle(P, 2, max_vertices=n, max_degree=cap, start=gon1 + 1)
    g = genus(P)
    triggered = gon2 == gon1 + 1
    gon3 = claim1 = claim2 = None
    if triggered:
        claim1 = g == math.comb(gon1, 2)
        gon3 = divisors.gon_r_oracle(P, 3, max_vertices=n, max_degree=cap, start=gon2 + 1)
        claim2 = gon3 == 2 * gon1 if gon1 >= 2 else True
    return ConjectureRecord(P, gon1, gon2, gon3, g, triggered, claim1, claim2)


def conjecture_check(max_vertices: int = 5, max_bunch: int = 5) -> list[ConjectureRecord]:
    records = []
    for V in range(2, max_vertices + 1):
        for P in canonical_paths(V, range(2, max_bunch + 1)):
            records.append(conjecture_record(P))
    return records


# -- self-test suites -------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def small_trees(max_vertices: int, sizes: range) -> Iterator[BananaTree]:
    """Paths on up to ``max_vertices`` vertices plus 4-vertex stars, with every size assignment."""
    for n in range(1, max_vertices + 1):
        for ms in itertools.product(sizes, repeat=n - 1):
            yield BananaTree(n, tuple((j, j + 1, m) for j, m in enumerate(ms)))
        if n >= 4:
            for ms in itertools.product(sizes, repeat=n - 1):
                if list(ms) == sorted(ms, reverse=True):  # leaves are interchangeable
                    yield BananaTree(n, tuple((0, j + 1, m) for j, m in enumerate(ms)))


def suite_dp_vs_oracle(max_vertices: int, max_bunch: int, dp: Callable = gonality_dp) -> SuiteResult:
    res = SuiteResult("dp_vs_oracle")
    for V in range(1, max_vertices + 1):
        for P in canonical_paths(V, range(2, max_bunch + 1)):
            got = dp(P).gonality
            want = divisors.gonality_oracle(P).gonality
            res.checked += 1
            if got != want:
                res.failures.append(f"{P}: dp={got} oracle={want}")
                return res
    return res


def suite_random_paths(seed: int, count: int, dp: Callable = gonality_dp) -> SuiteResult:
    res = SuiteResult("random_paths")
    rng = random.Random(seed)
    for _ in range(count):
        A = tuple(rng.randint(2, 7) for _ in range(rng.randint(5, 6)))
        P = BananaPath(A)
        got = dp(P).gonality
        want = divisors.gonality_oracle(P).gonality
        res.checked += 1
        if got != want:
            res.failures.append(f"{P}: dp={got} oracle={want}")
            return res
    return res


def suite_adjacency_equivalence(max_vertices: int = 4, max_bunch: int = 3, max_degree: int = 4) -> SuiteResult:
    res = SuiteResult("adjacency_equivalence")
    for T in small_trees(max_vertices, range(1, max_bunch + 1)):
        n = T.n_vertices
        for d in range(max_degree + 1):
            divs = list(divisors.effective_divisors(n, d))
            reduced = {D: divisors.dhar_reduce(T, D, 0) for D in divs}
            for D in divs:
                reach = divisors.adjacency_reachable_set(T, D)
                for D2 in divs:
                    res.checked += 1
                    if (D2 in reach) != (reduced[D] == reduced[D2]):
                        res.failures.append(f"{T.bunches}: {D} vs {D2}")
                        return res
    return res


def suite_witnesses(max_vertices: int, max_bunch: int, dp: Callable = gonality_dp) -> SuiteResult:
    res = SuiteResult("witnesses")
    for V in range(1, max_vertices + 1):
        for P in canonical_paths(V, range(1, max_bunch + 1)):
            k = scramble_screewidth(P)
            result = dp(P)
            sw = scramble_witness(P)
            tcd = tcd_witness(P)
            res.checked += 1
            problems = []
            if not scramble_witness_valid(P, sw) or sw.claimed_order != k:
                problems.append("scramble witness")
            if not tcd.is_valid(P) or tcd.width(P) != k:
                problems.append("tree-cut witness")
            if sum(result.witness) != result.gonality or not positive_rank_path(P, result.witness):
                problems.append("gonality witness")
            if not (k <= result.gonality <= min(lcm_bound(P), P.n_vertices)):
                problems.append("bound chain")
            if not bn_check(P, result.gonality).holds:
                problems.append("brill-noether bound")
            if problems:
                res.failures.append(f"{P}: {', '.join(problems)}")
                return res
    return res


def suite_stars(max_leaves: int, max_bunch: int) -> SuiteResult:
    res = SuiteResult("stars")
    sizes = range(1, max_bunch + 1)
    for n_leaves in range(1, max_leaves + 1):
        for ms in itertools.combinations_with_replacement(sizes[::-1], n_leaves):
            S = make_star(sorted(Counter(ms).items(), reverse=True))
            want = divisors.gonality_oracle(S).gonality
            res.checked += 1
            if star_gonality(S) != want:
                res.failures.append(f"{S}: formula={star_gonality(S)} oracle={want}")
                return res
    return res


LEVELS = {
    "quick": dict(paths=(4, 4), stars=(3, 3), random=5),
    "full": dict(paths=(5, 6), stars=(5, 4), random=20),
}


def selftest(level: str = "quick", seed: int = 0, dp: Callable = gonality_dp) -> list[SuiteResult]:
    cfg = LEVELS[level]
    pv, pb = cfg["paths"]
    sl, sb = cfg["stars"]
    return [
        suite_dp_vs_oracle(pv, pb, dp),
        suite_adjacency_equivalence(),
        suite_witnesses(pv, pb, dp),
        suite_stars(sl, sb),
        suite_random_paths(seed, cfg["random"], dp),
    ]
