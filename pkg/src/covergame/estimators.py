"""scikit-learn style wrappers so the game composes with pipelines and grid search.

Rows of ``X`` are adversary inputs (or visible sets); column order within a
row does not matter, as every quantity depends only on the sorted values.
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .adversary import SearchConfig, minimize_edge
from .errors import CoverGameError, MissingAssignment
from .evaluator import dp_win_prob, inequality_lhs
from .game import exact_win_prob_enum, make_input
from .rulesets import Ruleset, build_order_map, check_dominance, derive_relation
from .strategy import softmax_rows
from .validation import check_points_2d


class SoftmaxGuesser(BaseEstimator):
    """Stage guess distributions for batches of visible sets (one per row)."""

    def fit(self, X, y=None):
        X = check_points_2d(X)
        self.n_features_in_ = X.shape[1]
        return self

    def predict_proba(self, X):
        X = check_points_2d(X)
        logits = np.zeros((X.shape[0], X.shape[1] + 1))
        logits[:, 1:] = -np.sort(-X, axis=1)
        return softmax_rows(logits)

    def predict(self, X):
        """Most likely outcome per row."""
        return np.argmax(self.predict_proba(X), axis=1)

    def sample(self, X, random_state=None):
        rng = np.random.default_rng(random_state)
        cum = np.cumsum(self.predict_proba(X), axis=1)
        u = rng.random(len(cum))
        return np.minimum((cum <= u[:, None]).sum(axis=1), cum.shape[1] - 1)


class WinProbability(TransformerMixin, BaseEstimator):
    """Maps each row of numbers to the softmax strategy's exact win probability.

    Parameters
    ----------
    method : {"dp", "enum"}
        Subset recursion (n <= 20) or full enumeration (n <= 10).
    subtract_baseline : bool
        Return the edge over 1/n! instead of the probability.
    """

    def __init__(self, method="dp", subtract_baseline=False):
        self.method = method
        self.subtract_baseline = subtract_baseline

    def fit(self, X, y=None):
        if self.method not in ("dp", "enum"):
            raise ValueError(f"method must be 'dp' or 'enum', got {self.method!r}")
        X = check_points_2d(X, min_cols=2)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_points_2d(X, min_cols=2)
        evaluate = dp_win_prob if self.method == "dp" else exact_win_prob_enum
        out = np.array([evaluate(make_input(row)) for row in X])
        if self.subtract_baseline:
            out -= 1.0 / np.prod(np.arange(1, X.shape[1] + 1), dtype=float)
        return out[:, None]


class KeyInequality(TransformerMixin, BaseEstimator):
    """Left-hand side of the key inequality for each row."""

    def fit(self, X, y=None):
        X = check_points_2d(X, min_cols=2)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_points_2d(X, min_cols=2)
        return np.array([inequality_lhs(make_input(row)) for row in X])[:, None]


class AdversarySearch(BaseEstimator):
    """Pattern search for the adversary input with the smallest edge.

    ``fit`` ignores ``X``; results land in ``best_input_``, ``best_value_``,
    ``edge_`` and ``result_``.
    """

    def __init__(self, n=3, restarts=8, max_iters=500, initial_step=1.0, step_shrink=0.5,
                 min_gap=1e-6, coordinate_range=(-5.0, 5.0), random_state=0):
        self.n = n
        self.restarts = restarts
        self.max_iters = max_iters
        self.initial_step = initial_step
        self.step_shrink = step_shrink
        self.min_gap = min_gap
        self.coordinate_range = coordinate_range
        self.random_state = random_state

    def fit(self, X=None, y=None):
        cfg = SearchConfig(self.n, self.restarts, self.max_iters, self.initial_step,
                           self.step_shrink, self.min_gap, self.random_state,
                           tuple(self.coordinate_range))
        self.result_ = minimize_edge(cfg)
        self.best_input_ = np.array(self.result_.best_input.values)
        self.best_value_ = self.result_.best_value
        self.edge_ = self.result_.edge
        return self


class OrderPreservingStrategy(BaseEstimator):
    """Fits a dominant strategy to a finite ruleset when one exists.

    ``X`` is a :class:`Ruleset`, a sequence of ``(xa, xb)`` pairs, or an
    ``(m, 4)`` array of rows ``a1, a2, b1, b2``.  After fitting,
    ``solvable_`` tells whether a strategy exists; ``predict_proba`` returns
    the probability of answering "B" for given first coordinates.
    """

    def fit(self, X, y=None):
        rules = _as_ruleset(X)
        self.relation_ = derive_relation(rules)
        outcome = build_order_map(self.relation_)
        self.solvable_ = not hasattr(outcome, "witness")
        if self.solvable_:
            self.order_map_ = outcome
            self.witness_ = None
            self.dominance_ = check_dominance(outcome, rules)
        else:
            self.order_map_ = None
            self.witness_ = outcome.witness
            self.dominance_ = None
        return self

    def predict_proba(self, x):
        check_is_fitted(self, "relation_")
        if not self.solvable_:
            raise CoverGameError(f"ruleset has no dominant strategy (cycle {list(self.witness_)})")
        out = []
        for v in np.ravel(np.asarray(x, dtype=float)):
            try:
                out.append(self.order_map_.assignment[float(v)])
            except KeyError:
                raise MissingAssignment(f"{v!r} is not a first coordinate of the ruleset") from None
        return np.array(out)


def _as_ruleset(X) -> Ruleset:
    if isinstance(X, Ruleset):
        return X
    if isinstance(X, np.ndarray):
        if X.ndim != 2 or X.shape[1] != 4:
            raise ValueError("array rulesets need shape (m, 4): a1, a2, b1, b2")
        return Ruleset(tuple(((r[0], r[1]), (r[2], r[3])) for r in X))
    return Ruleset(tuple(X))
