"""Stage guess distributions for Player 2."""
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidDistribution, UnknownStrategy
from .validation import check_distinct, check_finite

SUM_TOL = 1e-12


@dataclass(frozen=True)
class CategoricalDistribution:
    """A point ``(p_0, ..., p_k)`` of the standard k-simplex."""

    probs: tuple

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if not probs:
            raise InvalidDistribution("empty distribution")
        if any(not p >= 0.0 for p in probs):
            raise InvalidDistribution(f"negative or NaN entry in {probs}")
        if abs(math.fsum(probs) - 1.0) > SUM_TOL:
            raise InvalidDistribution(f"entries sum to {math.fsum(probs)!r}, not 1")
        object.__setattr__(self, "probs", probs)

    @property
    def k(self) -> int:
        return len(self.probs) - 1

    def __getitem__(self, outcome: int) -> float:
        return self.probs[outcome]

    def __len__(self) -> int:
        return len(self.probs)

    def cdf(self) -> np.ndarray:
        return np.cumsum(self.probs)

    def sample(self, u: float) -> int:
        """Inverse-CDF draw: smallest outcome ``d`` with ``u < P(outcome <= d)``."""
        return inverse_cdf(np.asarray(self.probs), u)

    def to_list(self) -> list:
        return list(self.probs)


@dataclass(frozen=True)
class StageContext:
    """Visible values at stage ``k`` in reveal order."""

    visible: tuple

    def __post_init__(self):
        vals = check_finite(self.visible, "visible value")
        if not vals:
            raise ValueError("stage context needs at least one visible value")
        check_distinct(vals)
        object.__setattr__(self, "visible", vals)

    @property
    def k(self) -> int:
        return len(self.visible)


def inverse_cdf(probs: np.ndarray, u: float) -> int:
    cum = np.cumsum(probs)
    d = int(np.searchsorted(cum, u, side="right"))
    # rounding can leave cum[-1] a hair below 1
    return min(d, len(probs) - 1)


def softmax_rows(logits: np.ndarray) -> np.ndarray:
    """Row-wise max-shifted softmax of a 2-D array.

    Row sums are accumulated left to right so a single row gives the same
    bits whether it is evaluated alone or inside a batch.
    """
    logits = np.asarray(logits, dtype=np.float64)
    w = np.exp(logits - logits.max(axis=1, keepdims=True))
    total = w[:, 0].copy()
    for j in range(1, w.shape[1]):
        total += w[:, j]
    return w / total[:, None]


def softmax_guess(visible) -> CategoricalDistribution:
    """Sort the visible values descending, prepend 0 and take the softmax.

    Outcome 0 ("larger than everything visible") has weight 1; outcome j >= 1
    has weight ``exp`` of the j-th largest visible value.  The result does
    not depend on the order of ``visible``.
    """
    ctx = visible if isinstance(visible, StageContext) else StageContext(tuple(visible))
    logits = np.empty((1, ctx.k + 1))
    logits[0, 0] = 0.0
    logits[0, 1:] = sorted(ctx.visible, reverse=True)
    return CategoricalDistribution(tuple(softmax_rows(logits)[0]))


def logistic_strategy_n2(x: float) -> float:
    """Probability of stating "the other number is smaller", e^x / (1 + e^x)."""
    return softmax_guess((x,)).probs[1]


def _ramp(x: float, lo: float = -10.0, hi: float = 10.0, tail: float = 0.01) -> float:
    # CDF of a density that is flat on [lo, hi] with exponential tails, so it
    # is positive everywhere and the CDF is strictly increasing
    slope = (1.0 - 2.0 * tail) / (hi - lo)
    rate = slope / tail
    if x < lo:
        return tail * math.exp((x - lo) * rate)
    if x > hi:
        return 1.0 - tail * math.exp(-(x - hi) * rate)
    return tail + slope * (x - lo)


INCREASING_STRATEGIES: dict = {
    "logistic": logistic_strategy_n2,
    "ramp": _ramp,
}


def increasing_strategy_n2(f: str, x: float) -> float:
    """Evaluate a registered strictly increasing map R -> [0, 1] at ``x``."""
    try:
        func: Callable[[float], float] = INCREASING_STRATEGIES[f]
    except (KeyError, TypeError):
        raise UnknownStrategy(
            f"unknown strategy {f!r}; choose from {sorted(INCREASING_STRATEGIES)}") from None
    (x,) = check_finite((x,))
    return func(x)


def uniform_guess(k: int) -> CategoricalDistribution:
    if k < 1:
        raise ValueError(f"stage index must be >= 1, got {k}")
    return CategoricalDistribution((1.0 / (k + 1),) * (k + 1))


def uniform_strategy(visible: Sequence[float]) -> CategoricalDistribution:
    """Baseline guesser with the same call shape as :func:`softmax_guess`."""
    return uniform_guess(len(visible))
