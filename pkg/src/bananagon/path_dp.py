"""Polynomial-time gonality of banana paths.

``f(P, i, k)`` is the fewest chips that must be added to the suffix of ``P``
starting at ``v_i`` to get positive rank there, given ``k`` free chips already
on ``v_i``.  Peeling the leaf ``v_i`` gives

    f(i, 0) = min(1 + f(i+1, 0),  a + f(i+1, a))
    f(i, k) = min(f(i+1, a*floor(k/a)),  a*ceil(k/a) - k + f(i+1, a*ceil(k/a)))

with ``a`` the bunch between ``v_i`` and ``v_{i+1}`` and ``f(last, k) = [k == 0]``.
Only reachable ``(i, k)`` states are stored, and the recursion runs on an
explicit stack so paths with thousands of vertices are fine.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .divisors import Divisor
from .graph_core import BananaPath, split_heavy_offsets


class MemoTable:
    """Sparse ``(suffix index, k) -> f`` table; entries are write-once."""

    def __init__(self):
        self._data: dict[tuple[int, int], int] = {}

    def __contains__(self, key):
        return key in self._data

    def __getitem__(self, key):
        return self._data[key]

    def __setitem__(self, key, value):
        old = self._data.get(key)
        if old is not None and old != value:
            raise ValueError(f"memo entry {key} rewritten: {old} -> {value}")
        self._data[key] = value

    def __len__(self):
        return len(self._data)

    def items(self):
        return self._data.items()

    def clear(self):
        self._data.clear()


def _branches(k: int, a: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """(chips added at this vertex, chips carried onto the next vertex) per branch.

    The first branch is the preferred one on ties.
    """
    if k == 0:
        return (1, 0), (a, a)
    lo = a * (k // a)
    hi = a * -(-k // a)
    return (0, lo), (hi - k, hi)


def _cap(A: Sequence[int]) -> int | None:
    # f(k) = 0 for k >= m^2 + 1 holds when no bunch exceeds the vertex count m;
    # on heavier paths the plain recursion is still exact, just uncapped.
    m = len(A) + 1
    return m * m + 1 if max(A, default=0) <= m else None


def _solve(A: Sequence[int], i0: int, k0: int, memo: MemoTable, cap: int | None) -> int:
    last = len(A)
    stack = [(i0, k0)]
    while stack:
        i, k = stack[-1]
        if (i, k) in memo:
            stack.pop()
            continue
        if i == last:
            memo[i, k] = 1 if k == 0 else 0
            stack.pop()
            continue
        if cap is not None and k >= cap:
            memo[i, k] = 0
            stack.pop()
            continue
        branches = _branches(k, A[i])
        missing = [(i + 1, nk) for _, nk in branches if (i + 1, nk) not in memo]
        if missing:
            stack.extend(missing)
            continue
        memo[i, k] = min(add + memo[i + 1, nk] for add, nk in branches)
        stack.pop()
    return memo[i0, k0]


def f_value(P: BananaPath, i: int = 0, k: int = 0, memo: MemoTable | None = None) -> int:
    """f of the suffix of ``P`` starting at vertex ``i`` with ``k`` chips preloaded there."""
    if not 0 <= i < P.n_vertices:
        raise IndexError(f"vertex {i} not on a path with {P.n_vertices} vertices")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if memo is None:
        memo = MemoTable()
    return _solve(P.A, i, k, memo, _cap(P.A))


def f_profile(P: BananaPath, ks: Iterable[int]) -> dict[int, int]:
    memo = MemoTable()
    return {k: f_value(P, 0, k, memo) for k in ks}


@dataclass
class DpResult:
    gonality: int
    pieces: list[tuple[int, BananaPath, int]]  # (first vertex id, piece, piece gonality)
    witness: Divisor
    stats: dict = field(default_factory=dict)


def _piece_witness(A: Sequence[int], memo: MemoTable, cap: int | None) -> list[int]:
    chips = [0] * (len(A) + 1)
    k = 0
    for i, a in enumerate(A):
        if cap is not None and k >= cap:
            return chips
        target = memo[i, k]
        for add, nk in _branches(k, a):
            if add + memo[i + 1, nk] == target:
                chips[i] += add
                k = nk
                break
        else:
            raise AssertionError(f"no branch attains memo value at {(i, k)}")
    if k == 0:
        chips[-1] += 1
    return chips


def gonality_dp(P: BananaPath) -> DpResult:
    t0 = time.perf_counter()
    total = 0
    states = 0
    pieces = []
    witness = [0] * P.n_vertices
    for offset, piece in split_heavy_offsets(P):
        memo = MemoTable()
        cap = _cap(piece.A)
        g = _solve(piece.A, 0, 0, memo, cap)
        states += len(memo)
        total += g
        pieces.append((offset, piece, g))
        for j, c in enumerate(_piece_witness(piece.A, memo, cap)):
            witness[offset + j] += c
    stats = {"states": states, "pieces": len(pieces), "seconds": time.perf_counter() - t0}
    return DpResult(total, pieces, tuple(witness), stats)


def witness_divisor(P: BananaPath, result: DpResult | None = None) -> Divisor:
    return (result or gonality_dp(P)).witness


def gonality(P: BananaPath) -> int:
    return gonality_dp(P).gonality


def reduced_chips_path(P: BananaPath, D: Sequence[int]) -> list[int]:
    """For every vertex v, the chips on v in the v-reduced form of effective ``D``.

    On a path the v-reduced form comes from sweeping chips toward v from both
    ends, each bunch passing on the largest multiple of its size; the carry
    into v from one side does not depend on v, so one pass per side suffices.
    """
    A = P.A
    n = P.n_vertices
    from_left = [0] * n
    for j in range(1, n):
        a = A[j - 1]
        from_left[j] = a * ((D[j - 1] + from_left[j - 1]) // a)
    from_right = [0] * n
    for j in range(n - 2, -1, -1):
        a = A[j]
        from_right[j] = a * ((D[j + 1] + from_right[j + 1]) // a)
    return [D[v] + from_left[v] + from_right[v] for v in range(n)]


def positive_rank_path(P: BananaPath, D: Sequence[int]) -> bool:
    if len(D) != P.n_vertices:
        raise ValueError("divisor length does not match the path")
    if any(x < 0 for x in D):
        raise ValueError("divisor must be effective")
    return all(c >= 1 for c in reduced_chips_path(P, D))
