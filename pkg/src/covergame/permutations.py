"""Permutations of {1..n} and their Lehmer codes.

Conventions (all 1-indexed, as in the game):

* rank 1 is the largest of the adversary's numbers, rank n the smallest;
* ``sigma(r)`` is the time at which the rank-``r`` number is revealed, so the
  reveal sequence is ``x[sigma^-1(1)], ..., x[sigma^-1(n)]``;
* the code entry ``c[k+1]`` counts the numbers revealed before time ``k+1``
  that are larger than the one revealed at time ``k+1``.
"""
from dataclasses import dataclass
from itertools import permutations as _itertools_permutations
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidCode, InvalidPermutation
from .validation import MAX_ENUM_N, check_n


@dataclass(frozen=True)
class Permutation:
    """A permutation stored as ``reveal_of_rank[r-1] = sigma(r)``."""

    reveal_of_rank: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.reveal_of_rank)
        if len(vals) < 1 or sorted(vals) != list(range(1, len(vals) + 1)):
            raise InvalidPermutation(
                f"{list(self.reveal_of_rank)} is not a permutation of 1..{len(vals)}")
        object.__setattr__(self, "reveal_of_rank", vals)

    @property
    def n(self) -> int:
        return len(self.reveal_of_rank)

    def __call__(self, r: int) -> int:
        return self.reveal_of_rank[r - 1]

    def inverse(self) -> tuple:
        """Ranks in reveal order: ``(sigma^-1(1), ..., sigma^-1(n))``."""
        inv = [0] * self.n
        for r, t in enumerate(self.reveal_of_rank, start=1):
            inv[t - 1] = r
        return tuple(inv)

    @classmethod
    def from_reveal_order(cls, ranks: Sequence[int]) -> "Permutation":
        """Build sigma from the sequence of ranks as they are revealed."""
        ranks = [int(r) for r in ranks]
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise InvalidPermutation(f"{ranks} is not a permutation of 1..{len(ranks)}")
        sigma = [0] * len(ranks)
        for t, r in enumerate(ranks, start=1):
            sigma[r - 1] = t
        return cls(tuple(sigma))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def to_list(self) -> list:
        return list(self.reveal_of_rank)


@dataclass(frozen=True)
class LehmerCode:
    entries: tuple

    def __post_init__(self):
        entries = tuple(int(c) for c in self.entries)
        if not entries:
            raise InvalidCode("empty code")
        if entries[0] != 0:
            raise InvalidCode(f"c_1 must be 0, got {entries[0]}")
        for k, c in enumerate(entries, start=1):
            if not 0 <= c <= k - 1:
                raise InvalidCode(f"c_{k}={c} outside 0..{k - 1}")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> int:
        """1-indexed access, ``code[k] == c_k``."""
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return self.entries[k - 1]

    def to_list(self) -> list:
        return list(self.entries)


def lehmer_encode(sigma: Permutation) -> LehmerCode:
    """c_{k+1} = |{i <= k : sigma^-1(i) < sigma^-1(k+1)}|, with c_1 = 0."""
    ranks = sigma.inverse()
    code = [0]
    for k in range(1, sigma.n):
        code.append(sum(1 for i in range(k) if ranks[i] < ranks[k]))
    return LehmerCode(tuple(code))


def lehmer_decode(code) -> Permutation:
    """Invert :func:`lehmer_encode` by the shifting procedure.

    For i = 1..n the entries of P from position n-i+1 onward are shifted one
    slot left ``c_i`` times and i is written at position ``n - i + c_i + 1``;
    the result is ``sigma(i) = P[i]``.
    """
    if not isinstance(code, LehmerCode):
        code = LehmerCode(tuple(code))
    c = code.entries
    n = len(c)
    P = [0] * (n + 2)  # 1-indexed; P[n + 1] is never read for valid codes
    for i in range(1, n + 1):
        ci = c[i - 1]
        for j in range(1, ci + 1):
            P[n - i + j] = P[n - i + j + 1]
        P[n - i + ci + 1] = i
    return Permutation(tuple(P[1:n + 1]))


def enumerate_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n, lexicographic in the reveal-order rank sequence."""
    n = check_n(n, MAX_ENUM_N)
    for ranks in _itertools_permutations(range(1, n + 1)):
        yield Permutation.from_reveal_order(ranks)


def reveal_order_table(n: int) -> np.ndarray:
    """``(n!, n)`` array of 0-based reveal-order ranks, row i being the i-th
    permutation yielded by :func:`enumerate_permutations`."""
    n = check_n(n, MAX_ENUM_N, lower=1)
    table = np.zeros((1, 1), dtype=np.int8)
    for size in range(2, n + 1):
        # lexicographic: lead with i, then the smaller table relabelled to
        # skip i
        blocks = []
        for i in range(size):
            rest = table + (table >= i)
            lead = np.full((len(table), 1), i, dtype=np.int8)
            blocks.append(np.hstack([lead, rest]))
        table = np.vstack(blocks)
    return table


def sample_permutation(n: int, rng: np.random.Generator) -> Permutation:
    """Uniform sigma in S_n from ``rng`` (a numpy Generator shuffle)."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    ranks = rng.permutation(n) + 1
    return Permutation.from_reveal_order(ranks)
