"""Input validation helpers shared by the functional API and the estimators."""
import math
from typing import Iterable, Sequence

import numpy as np
from sklearn.utils import check_array

from .errors import DuplicateValues, NonFiniteInput, NTooLarge, TooFewValues

MAX_ENUM_N = 10
MAX_DP_N = 20


def check_finite(values: Iterable[float], what: str = "value") -> tuple:
    out = []
    for v in values:
        v = float(v)
        if not math.isfinite(v):
            raise NonFiniteInput(f"{what} {v!r} is not finite")
        out.append(v)
    return tuple(out)


def check_distinct(values: Sequence[float]) -> None:
    seen = set()
    for v in values:
        if v in seen:
            raise DuplicateValues(f"value {v!r} appears more than once")
        seen.add(v)


def check_points(values: Iterable[float], min_len: int = 2) -> tuple:
    """Finite, pairwise distinct reals, at least ``min_len`` of them."""
    vals = check_finite(values)
    if len(vals) < min_len:
        raise TooFewValues(f"need at least {min_len} values, got {len(vals)}")
    check_distinct(vals)
    return vals


def check_n(n: int, upper: int, lower: int = 2, what: str = "n") -> int:
    if isinstance(n, bool) or int(n) != n:
        raise TypeError(f"{what} must be an integer, got {n!r}")
    n = int(n)
    if n < lower:
        raise TooFewValues(f"{what}={n} is below the minimum {lower}")
    if n > upper:
        raise NTooLarge(f"{what}={n} exceeds the cap {upper}")
    return n


def check_points_2d(X, min_cols: int = 1) -> np.ndarray:
    """2-D float array of rows of distinct finite values (estimator inputs)."""
    try:
        X = check_array(X, dtype=np.float64, ensure_all_finite=True,
                        ensure_min_features=min_cols)
    except ValueError as exc:
        if "NaN" in str(exc) or "infinity" in str(exc):
            raise NonFiniteInput(str(exc)) from exc
        raise
    for i, row in enumerate(X):
        if len(np.unique(row)) != len(row):
            raise DuplicateValues(f"row {i} has repeated values")
    return X
