"""Fast exact evaluation over rank subsets, and the key inequality.

The win probability only depends on which *set* of numbers is visible at each
stage, so instead of summing over n! reveal orders we sum over the 2^n subsets
of ranks (the cube graph).  For a subset S let T(S) be the sum, over all
orders of revealing S, of the product of the stage probabilities of guessing
correctly.  Then T({r}) = 1 and, conditioning on the last element r revealed,

    T(S) = sum_{r in S} T(S - {r}) * f(S - {r})(#{r' in S : r' < r})

where the outcome index counts the visible numbers larger than x_r.  The win
probability is T(all) / n!.
"""
import math
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

import numpy as np

from .errors import BoundaryPoint, InvalidCode, NotDescending
from .game import make_input
from .strategy import CategoricalDistribution, softmax_guess, softmax_rows
from .validation import MAX_DP_N, check_finite, check_n

COORD_TOL = 1e-12


@dataclass(frozen=True)
class RankSubset:
    """Set of ranks (1 = largest) stored as a bit set; bit r-1 is rank r."""

    bits: int
    n: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bit set {self.bits:#x} is not a subset of 1..{self.n}")

    @classmethod
    def from_ranks(cls, ranks, n: int) -> "RankSubset":
        bits = 0
        for r in ranks:
            bits |= 1 << (r - 1)
        return cls(bits, n)

    @property
    def ranks(self) -> tuple:
        return tuple(r + 1 for r in range(self.n) if self.bits >> r & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def without(self, r: int) -> "RankSubset":
        return RankSubset(self.bits & ~(1 << (r - 1)), self.n)


@dataclass(frozen=True)
class TrailingCode:
    """Fixed last entries ``(d_{m+1}, ..., d_n)`` of a Lehmer code."""

    m: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(int(d) for d in self.entries)
        if self.m < 1:
            raise InvalidCode(f"m must be >= 1, got {self.m}")
        for k, d in enumerate(entries, start=self.m + 1):
            if not 0 <= d <= k - 1:
                raise InvalidCode(f"d_{k}={d} outside 0..{k - 1}")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.m + len(self.entries)


def _log_partition_table(x: np.ndarray) -> np.ndarray:
    """log(1 + sum_{j in S} exp(x_j)) for every bit set S."""
    n = len(x)
    table = np.zeros(1 << n)
    for b in range(n):
        lo = 1 << b
        table[lo:2 * lo] = np.logaddexp(table[:lo], x[b])
    return table


def _subsets_by_level(n: int):
    all_sets = np.arange(1 << n, dtype=np.int64)
    bits = (all_sets[:, None] >> np.arange(n)) & 1
    popcount = bits.sum(axis=1)
    for size in range(2, n + 1):
        sets = all_sets[popcount == size]  # ascending bit-set value
        rows, cols = np.nonzero(bits[sets])
        yield sets, cols.reshape(len(sets), size)


def subset_table(inp) -> np.ndarray:
    """The table T over all bit sets (T of the empty set is left at 0)."""
    inp = make_input(inp)
    n = check_n(inp.n, MAX_DP_N)
    x = np.asarray(inp.values)
    logz = _log_partition_table(x)
    T = np.zeros(1 << n)
    T[1 << np.arange(n)] = 1.0
    for sets, members in _subsets_by_level(n):
        acc = np.zeros(len(sets))
        for j in range(members.shape[1]):
            rest = sets ^ (1 << members[:, j])
            # outcome j: weight 1 if r is the largest, else exp of the
            # next-larger visible value (the previous member)
            log_num = 0.0 if j == 0 else x[members[:, j - 1]]
            acc += T[rest] * np.exp(log_num - logz[rest])
        T[sets] = acc
    return T


def dp_win_prob(inp) -> float:
    """Exact win probability of the softmax strategy via the subset recursion."""
    inp = make_input(inp)
    T = subset_table(inp)
    return float(T[-1]) / factorial(inp.n)


def inequality_terms(inp) -> tuple:
    """Summands softmax(0, x without x_i)(i - 1), i = 1..n."""
    inp = make_input(inp)
    x = inp.values
    return tuple(softmax_guess(x[:i - 1] + x[i:]).probs[i - 1] for i in range(1, inp.n + 1))


def inequality_lhs(inp) -> float:
    """Sum of the probabilities of a correct last guess over which number is
    revealed last; always exceeds 1 for distinct inputs."""
    return math.fsum(inequality_terms(inp))


def _check_interior(p) -> np.ndarray:
    p = np.asarray(check_finite(p, "coordinate"))
    if len(p) < 2:
        raise ValueError("need a point of a simplex of dimension >= 1")
    if np.any(p <= 0.0):
        raise BoundaryPoint(f"point {p.tolist()} is not in the open simplex")
    if abs(math.fsum(p) - 1.0) > COORD_TOL:
        raise BoundaryPoint(f"coordinates sum to {math.fsum(p)!r}, not 1")
    return p


def recoordinatize(p) -> tuple:
    """(p_0, ..., p_n) -> (log(p_1/p_0), ..., log(p_n/p_0))."""
    if isinstance(p, CategoricalDistribution):
        p = p.probs
    p = _check_interior(p)
    return tuple(float(v) for v in np.log(p[1:] / p[0]))


def inverse_recoordinatize(x) -> CategoricalDistribution:
    """softmax(0, x_1, ..., x_n), coordinates kept in the given order."""
    x = check_finite(x)
    logits = np.array([[0.0, *x]])
    return CategoricalDistribution(tuple(softmax_rows(logits)[0]))


def simplex_terms(p) -> tuple:
    """Per-index summands p_{i-1} / (total - p_i) and their lower bounds
    p_{i-1} / (p_0 + ... + p_{n-1}).

    The bound uses p_i > p_n, so it is strict for i < n and an equality for
    i = n; the bounds add up to exactly 1.
    """
    if isinstance(p, CategoricalDistribution):
        p = p.probs
    p = _check_interior(p)
    trailing = p[1:]
    if np.any(trailing[:-1] <= trailing[1:]):
        raise NotDescending(f"trailing coordinates {trailing.tolist()} are not strictly descending")
    n = len(p) - 1
    total = math.fsum(p)
    head = math.fsum(p[:n])
    summands = tuple(float(p[i - 1] / (total - p[i])) for i in range(1, n + 1))
    bounds = tuple(float(p[i - 1] / head) for i in range(1, n + 1))
    return summands, bounds


def inequality_lhs_simplex(p) -> float:
    summands, _ = simplex_terms(p)
    return math.fsum(summands)


def eq3_slice(inp, trailing: TrailingCode) -> tuple:
    """Both sides of the one-step recursion for a fixed trailing code.

    Left: sum over permutations whose code ends in ``trailing`` of the
    product of stage probabilities for stages 1..m-1.  Right: the same
    permutations grouped by d_m, each group's stage 1..m-2 subtotal times
    f_{m-1}(visible set)(d_m), where the visible set is shared by the group.
    Brute force over S_n, so only meant for small n.
    """
    inp = make_input(inp)
    n = inp.n
    if trailing.n != n:
        raise InvalidCode(f"trailing code is for n={trailing.n}, input has n={n}")
    m = trailing.m
    if m < 2:
        raise InvalidCode("m must be >= 2")
    x = inp.values
    lhs = 0.0
    groups: dict = {}
    for ranks in permutations(range(n)):
        code = [0] + [sum(1 for i in range(k) if ranks[i] < ranks[k]) for k in range(1, n)]
        if tuple(code[m:]) != trailing.entries:
            continue
        stage = [softmax_guess([x[r] for r in ranks[:k]]).probs[code[k]] for k in range(1, m)]
        lhs += math.prod(stage)
        d_m = code[m - 1]
        visible = frozenset(ranks[:m - 1])
        sub, seen = groups.get(d_m, (0.0, visible))
        if seen != visible:
            raise AssertionError(f"visible set for d_{m}={d_m} is not shared across the group")
        groups[d_m] = (sub + math.prod(stage[:-1]), visible)
    rhs = 0.0
    for d_m in sorted(groups):
        sub, visible = groups[d_m]
        rhs += sub * softmax_guess([x[r] for r in visible]).probs[d_m]
    return lhs, rhs


def all_trailing_codes(n: int, m: int):
    ranges = [range(k) for k in range(m + 1, n + 1)]
    for entries in product(*ranges):
        yield TrailingCode(m, entries)
