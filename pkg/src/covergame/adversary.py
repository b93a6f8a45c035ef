"""Adversarial search for inputs that make the softmax strategy's edge small."""
import math
from dataclasses import dataclass, field
from math import factorial
from typing import Sequence

import numpy as np

from .errors import InfeasibleGap, InvalidConfig, InvalidParameter
from .evaluator import dp_win_prob
from .game import AdversaryInput, make_input
from .validation import check_n

MAX_SEARCH_N = 12
MIN_STEP = 1e-9
SOUNDNESS_SLACK = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    n: int
    restarts: int = 8
    max_iters: int = 500
    initial_step: float = 1.0
    step_shrink: float = 0.5
    min_gap: float = 1e-6
    seed: int = 0
    coordinate_range: tuple = (-5.0, 5.0)

    def __post_init__(self):
        check_n(self.n, MAX_SEARCH_N)
        if self.restarts < 1 or self.max_iters < 1:
            raise InvalidConfig("restarts and max_iters must be >= 1")
        if not (self.initial_step > 0 and math.isfinite(self.initial_step)):
            raise InvalidConfig(f"initial_step must be positive, got {self.initial_step}")
        if not 0 < self.step_shrink < 1:
            raise InvalidConfig(f"step_shrink must lie in (0, 1), got {self.step_shrink}")
        if not (self.min_gap > 0 and math.isfinite(self.min_gap)):
            raise InvalidConfig(f"min_gap must be positive, got {self.min_gap}")
        lo, hi = (float(v) for v in self.coordinate_range)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise InvalidConfig(f"bad coordinate_range {self.coordinate_range}")
        object.__setattr__(self, "coordinate_range", (lo, hi))


@dataclass(frozen=True)
class SearchResult:
    best_input: AdversaryInput
    best_value: float
    baseline: float
    edge: float
    evaluations: int
    trace: tuple                 # final best value of each restart
    histories: tuple = field(default=(), repr=False)  # best value after each sweep, per restart


class SoundnessError(AssertionError):
    """An evaluated win probability did not exceed 1/n!."""


def project(x: np.ndarray, min_gap: float, lo: float, hi: float) -> np.ndarray:
    """Clamp into [lo, hi], sort descending and separate neighbours by min_gap.

    Close pairs are fixed by pushing the lower value down; if that runs past
    ``lo`` the values are pushed back up from the bottom instead.
    """
    x = np.sort(np.clip(x, lo, hi))[::-1].copy()
    for i in range(1, len(x)):
        if x[i - 1] - x[i] < min_gap:
            x[i] = x[i - 1] - min_gap
    if x[-1] < lo:
        x[-1] = lo
        for i in range(len(x) - 2, -1, -1):
            x[i] = max(x[i], x[i + 1] + min_gap)
    return x


def _pattern_search(x, objective, cfg: SearchConfig):
    f = objective(x)
    step = cfg.initial_step
    history = [f]
    lo, hi = cfg.coordinate_range
    for _ in range(cfg.max_iters):
        improved = False
        for i in range(cfg.n):
            for sign in (1.0, -1.0):
                cand = x.copy()
                cand[i] += sign * step
                cand = project(cand, cfg.min_gap, lo, hi)
                if np.array_equal(cand, x):
                    continue
                v = objective(cand)
                if v < f:
                    x, f = cand, v
                    improved = True
                    break
        history.append(f)
        if not improved:
            step *= cfg.step_shrink
            if step < MIN_STEP:
                break
    return x, f, history


def minimize_edge(config: SearchConfig) -> SearchResult:
    """Multi-start coordinate pattern search on the exact win probability."""
    cfg = config
    lo, hi = cfg.coordinate_range
    if cfg.min_gap * (cfg.n - 1) > hi - lo:
        raise InfeasibleGap(
            f"{cfg.n} values spaced {cfg.min_gap} apart do not fit in [{lo}, {hi}]")
    baseline = 1.0 / factorial(cfg.n)
    evaluations = 0

    def objective(x):
        nonlocal evaluations
        evaluations += 1
        v = dp_win_prob(AdversaryInput(tuple(float(t) for t in x)))
        if not v - baseline > SOUNDNESS_SLACK:
            raise SoundnessError(f"win probability {v!r} at {x.tolist()} is not above 1/{cfg.n}!")
        return v

    best_x, best_f = None, math.inf
    trace, histories = [], []
    for child in np.random.SeedSequence(cfg.seed).spawn(cfg.restarts):
        rng = np.random.default_rng(child)
        start = project(rng.uniform(lo, hi, cfg.n), cfg.min_gap, lo, hi)
        x, f, history = _pattern_search(start, objective, cfg)
        trace.append(f)
        histories.append(tuple(history))
        if f < best_f:
            best_x, best_f = x, f
    best = AdversaryInput(tuple(float(t) for t in best_x))
    return SearchResult(best, best_f, baseline, best_f - baseline, evaluations,
                        tuple(trace), tuple(histories))


@dataclass(frozen=True)
class SweepRow:
    scale: float
    win_probability: float
    baseline: float
    edge: float


def edge_sweep(base_input, scales: Sequence[float]) -> list:
    """Exact win probability of ``t * x`` for each scale ``t``, in order."""
    base = make_input(base_input)
    baseline = 1.0 / factorial(base.n)
    rows = []
    for t in scales:
        t = float(t)
        if not (math.isfinite(t) and t > 0):
            raise InvalidParameter(f"scale {t!r} must be positive and finite")
        p = dp_win_prob(base.scaled(t))
        rows.append(SweepRow(t, p, baseline, p - baseline))
    return rows
