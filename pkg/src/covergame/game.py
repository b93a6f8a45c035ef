"""Playing the staged game, exact win probability by enumeration, and Monte Carlo."""
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, sqrt
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch
from .permutations import Permutation, lehmer_encode, reveal_order_table
from .strategy import CategoricalDistribution, inverse_cdf, softmax_guess, softmax_rows
from .validation import MAX_ENUM_N, check_n, check_points

GuessFn = Callable[[Sequence[float]], CategoricalDistribution]

# trials are grouped in fixed blocks of this size; block b draws from the
# stream SeedSequence(seed, spawn_key=(b,)), so trial t's draws depend only on
# (seed, t) and never on how a run is split up
MC_BLOCK = 4096
_ENUM_CHUNK = 1 << 16


@dataclass(frozen=True)
class AdversaryInput:
    """Player 1's numbers, kept strictly descending (``values[0]`` is rank 1)."""

    values: tuple
    original: tuple = field(default=(), compare=False)

    def __post_init__(self):
        vals = check_points(self.values)
        if any(a <= b for a, b in zip(vals, vals[1:])):
            raise ValueError("values must be strictly descending; use make_input()")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def value_of_rank(self, r: int) -> float:
        return self.values[r - 1]

    def scaled(self, t: float) -> "AdversaryInput":
        return make_input([t * v for v in self.values])


def make_input(raw) -> AdversaryInput:
    if isinstance(raw, AdversaryInput):
        return raw
    vals = check_points(raw)
    return AdversaryInput(tuple(sorted(vals, reverse=True)), original=vals)


@dataclass(frozen=True)
class StageRecord:
    k: int
    visible: tuple        # reveal order
    probs: tuple
    draw: float
    guess: int
    truth: int            # c_{k+1}
    correct: bool


@dataclass(frozen=True)
class GameTranscript:
    input: AdversaryInput
    sigma: Permutation
    stages: tuple

    @property
    def won(self) -> bool:
        return len(self.stages) == self.input.n - 1 and all(s.correct for s in self.stages)

    @property
    def loss_stage(self) -> Optional[int]:
        for s in self.stages:
            if not s.correct:
                return s.k
        return None

    @property
    def outcome(self) -> str:
        return "win" if self.won else f"loss-at-stage-{self.loss_stage}"

    @property
    def draws(self) -> tuple:
        return tuple(s.draw for s in self.stages)


def play_game(inp: AdversaryInput, sigma: Permutation, rng: Optional[np.random.Generator] = None,
              draws: Optional[Sequence[float]] = None, guess: GuessFn = softmax_guess) -> GameTranscript:
    """Play one game with the numbers revealed in sigma's order.

    Each stage takes one uniform in [0, 1), from ``draws`` if given (stage k
    uses ``draws[k-1]``) and from ``rng`` otherwise, and samples the guess by
    inverse CDF.  Play stops at the first wrong guess.
    """
    if sigma.n != inp.n:
        raise DimensionMismatch(f"permutation has n={sigma.n}, input has n={inp.n}")
    if draws is None and rng is None:
        raise ValueError("need either rng or draws")
    code = lehmer_encode(sigma)
    reveal = [inp.value_of_rank(r) for r in sigma.inverse()]
    stages = []
    for k in range(1, inp.n):
        dist = guess(reveal[:k])
        u = float(draws[k - 1]) if draws is not None else float(rng.random())
        d = inverse_cdf(np.asarray(dist.probs), u)
        truth = code[k + 1]
        stages.append(StageRecord(k, tuple(reveal[:k]), dist.probs, u, d, truth, d == truth))
        if d != truth:
            break
    return GameTranscript(inp, sigma, tuple(stages))


@lru_cache(maxsize=8)
def _cached_table(n: int) -> np.ndarray:
    table = reveal_order_table(n)
    table.flags.writeable = False
    return table


def _reveal_chunks(n: int):
    table = _cached_table(n) if n <= 8 else reveal_order_table(n)
    for start in range(0, len(table), _ENUM_CHUNK):
        yield table[start:start + _ENUM_CHUNK]


def stage_products(x: np.ndarray, reveal: np.ndarray) -> np.ndarray:
    """Softmax-strategy win probability of each row of ``reveal``.

    ``reveal`` holds 0-based ranks in reveal order; ``x`` the descending values.
    Returns the product over stages of the probability of the true code entry.
    """
    m, n = reveal.shape
    prods = np.ones(m)
    # log(1 + sum of exp(visible)), grown by one value per stage
    logz = np.logaddexp(0.0, x[reveal[:, 0]])
    for k in range(1, n):
        visible = reveal[:, :k]
        new = reveal[:, k:k + 1]
        # true outcome is 0 when the new number beats all visible ones, else
        # the weight of the smallest visible number above it
        above = np.where(visible < new, visible, -1).max(axis=1)
        log_num = np.where(above < 0, 0.0, x[np.maximum(above, 0)])
        prods *= np.exp(log_num - logz)
        logz = np.logaddexp(logz, x[new[:, 0]])
    return prods


def exact_win_prob_enum(inp, guess: Optional[GuessFn] = None) -> float:
    """Average over all n! reveal orders of the product of stage probabilities.

    Terms are accumulated one by one in enumeration order.  ``guess`` swaps
    in another strategy (slow path, evaluated permutation by permutation).
    """
    inp = make_input(inp)
    n = check_n(inp.n, MAX_ENUM_N)
    x = np.asarray(inp.values)
    total = 0.0
    for chunk in _reveal_chunks(n):
        if guess is None:
            prods = stage_products(x, chunk)
        else:
            prods = np.array([_product_with(guess, x, row) for row in chunk])
        total = float(np.cumsum(np.concatenate(([total], prods)))[-1])
    return total / factorial(n)


def _product_with(guess: GuessFn, x: np.ndarray, ranks) -> float:
    p = 1.0
    for k in range(1, len(ranks)):
        truth = sum(1 for r in ranks[:k] if r < ranks[k])
        p *= guess([x[r] for r in ranks[:k]]).probs[truth]
    return p


def _block_draws(seed: int, block: int, n: int) -> np.ndarray:
    ss = np.random.SeedSequence(seed, spawn_key=(block,))
    return np.random.Generator(np.random.PCG64(ss)).random((MC_BLOCK, 2 * n - 1))


def trial_draws(seed: int, t: int, n: int):
    """Draws used by Monte Carlo trial ``t``: (reveal-order ranks, stage uniforms).

    Ranks are 1-based; the reveal order is the argsort of ``n`` uniform keys.
    """
    row = _block_draws(seed, t // MC_BLOCK, n)[t % MC_BLOCK]
    ranks = np.argsort(row[:n], kind="stable") + 1
    return tuple(int(r) for r in ranks), tuple(float(u) for u in row[n:])


def _play_block(x: np.ndarray, draws: np.ndarray) -> np.ndarray:
    m = len(draws)
    n = len(x)
    reveal = np.argsort(draws[:, :n], axis=1, kind="stable")
    won = np.ones(m, dtype=bool)
    logits = np.zeros((m, n))
    for k in range(1, n):
        visible = reveal[:, :k]
        truth = (visible < reveal[:, k:k + 1]).sum(axis=1)
        logits[:, 1:k + 1] = x[np.sort(visible, axis=1)]
        cum = np.cumsum(softmax_rows(logits[:, :k + 1]), axis=1)
        guess = np.minimum((cum <= draws[:, n + k - 1, None]).sum(axis=1), k)
        won &= guess == truth
    return won


@dataclass(frozen=True)
class MCResult:
    estimate: float
    wins: int
    stderr: float
    trials: int
    seed: int

    def __iter__(self):
        return iter((self.estimate, self.wins, self.stderr))


def mc_wins(inp, seed: int, start: int, stop: int) -> int:
    """Number of wins among trials ``start <= t < stop``.

    Shards of a run can be counted separately and added up; the total equals
    the unsharded count.
    """
    inp = make_input(inp)
    x = np.asarray(inp.values)
    wins = 0
    t = start
    while t < stop:
        block, offset = divmod(t, MC_BLOCK)
        take = min(MC_BLOCK - offset, stop - t)
        draws = _block_draws(seed, block, inp.n)[offset:offset + take]
        wins += int(_play_block(x, draws).sum())
        t += take
    return wins


def mc_estimate(inp, trials: int, seed: int = 0) -> MCResult:
    """Monte Carlo estimate of the softmax strategy's win probability."""
    inp = make_input(inp)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    wins = mc_wins(inp, seed, 0, trials)
    est = wins / trials
    return MCResult(est, wins, sqrt(est * (1.0 - est) / trials), trials, seed)
