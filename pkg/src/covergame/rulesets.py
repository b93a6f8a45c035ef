"""Finite rulesets for the two-point game and order-preserving strategies.

Player 1 picks a pair (xa, xb) with xa strictly above the diagonal and xb
strictly below; Player 2 sees the first coordinate of one of them and says
"B" with probability f(first coordinate).  A strategy wins with probability
above one half against every allowed pair exactly when f(pi1(xb)) >
f(pi1(xa)) for every pair, so a winning strategy is an order-preserving map
of the relation below into (0, 1).

Edges are stored as ``(source, target) = (pi1(xb), pi1(xa))`` and mean
"f(source) must exceed f(target)".
"""
import json
import math
from collections import deque
from dataclasses import dataclass
from graphlib import TopologicalSorter
from typing import Mapping, Optional, Sequence, Union

from .errors import InvalidParameter, MissingAssignment, RegionViolation
from .validation import check_finite


@dataclass(frozen=True)
class PlanePair:
    xa: tuple
    xb: tuple

    def __post_init__(self):
        xa = check_finite(self.xa, "coordinate")
        xb = check_finite(self.xb, "coordinate")
        if len(xa) != 2 or len(xb) != 2:
            raise RegionViolation("points must have two coordinates")
        if not xa[0] < xa[1]:
            raise RegionViolation(f"xa={xa} is not strictly above the diagonal")
        if not xb[0] > xb[1]:
            raise RegionViolation(f"xb={xb} is not strictly below the diagonal")
        object.__setattr__(self, "xa", xa)
        object.__setattr__(self, "xb", xb)


@dataclass(frozen=True)
class Ruleset:
    pairs: tuple

    def __post_init__(self):
        if not self.pairs:
            raise InvalidParameter("a ruleset needs at least one pair")
        pairs = []
        for i, p in enumerate(self.pairs):
            try:
                pairs.append(p if isinstance(p, PlanePair) else PlanePair(*p))
            except RegionViolation as exc:
                raise RegionViolation(f"pair {i}: {exc}") from None
        object.__setattr__(self, "pairs", tuple(pairs))

    def __len__(self):
        return len(self.pairs)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Ruleset":
        try:
            raw = data["pairs"]
            return cls(tuple((tuple(p["xa"]), tuple(p["xb"])) for p in raw))
        except (KeyError, TypeError) as exc:
            raise InvalidParameter(f"malformed ruleset document: {exc!r}") from None

    @classmethod
    def load(cls, path) -> "Ruleset":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidParameter(f"{path}: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {"pairs": [{"xa": list(p.xa), "xb": list(p.xb)} for p in self.pairs]}


@dataclass(frozen=True)
class RelationGraph:
    nodes: tuple   # sorted
    edges: tuple   # (source, target), first-appearance order, no duplicates

    def successors(self) -> dict:
        adj = {v: [] for v in self.nodes}
        for s, t in self.edges:
            adj[s].append(t)
        return adj


@dataclass(frozen=True)
class OrderMap:
    assignment: dict

    def __call__(self, x: float) -> float:
        return self.assignment[x]

    def rows(self) -> list:
        return sorted(self.assignment.items())


@dataclass(frozen=True)
class Unsolvable:
    witness: tuple


def derive_relation(r: Union[Ruleset, Sequence]) -> RelationGraph:
    if not isinstance(r, Ruleset):
        r = Ruleset(tuple(r))
    nodes = set()
    edges = {}
    for p in r.pairs:
        a, b = p.xa[0], p.xb[0]
        nodes.update((a, b))
        edges.setdefault((b, a), None)
    return RelationGraph(tuple(sorted(nodes)), tuple(edges))


def _shortest_cycle_through(adj: dict, start) -> Optional[list]:
    parent = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v == start:
                path = [u]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if v not in parent:
                parent[v] = u
                queue.append(v)
    return None


def is_acyclic(g: RelationGraph) -> tuple:
    """Return ``(acyclic, witness)``; the witness is a shortest cycle, listed
    from its smallest node, with self-loops reported as one-node cycles."""
    adj = g.successors()
    best = None
    for v in g.nodes:
        cycle = _shortest_cycle_through(adj, v)
        if cycle is not None and (best is None or len(cycle) < len(best)):
            best = cycle
            if len(best) == 1:
                break
    if best is None:
        return True, None
    return False, best


def build_order_map(g: RelationGraph) -> Union[OrderMap, Unsolvable]:
    """Layered order-preserving map into (0, 1), or the cycle that rules one out.

    A node's layer is the length of the longest chain of nodes that must sit
    below it; layer l is sent to (l + 1) / (L + 2) with L the top layer.
    """
    acyclic, witness = is_acyclic(g)
    if not acyclic:
        return Unsolvable(tuple(witness))
    adj = g.successors()
    # successors must be placed before the node itself
    order = TopologicalSorter({v: adj[v] for v in g.nodes}).static_order()
    layer = {}
    for v in order:
        layer[v] = 1 + max((layer[t] for t in adj[v]), default=-1)
    top = max(layer.values(), default=0)
    return OrderMap({v: (layer[v] + 1) / (top + 2) for v in g.nodes})


def pair_win_prob(f_b: float, f_a: float) -> float:
    """Win probability against one pair: 1/2 + (f(x_B) - f(x_A)) / 2."""
    return 0.5 + (f_b - f_a) / 2.0


def check_dominance(f: Union[OrderMap, Mapping], r: Ruleset) -> tuple:
    """Return ``(dominant, worst_pair_index, worst_win_prob)``."""
    assignment = f.assignment if isinstance(f, OrderMap) else f
    if not isinstance(r, Ruleset):
        r = Ruleset(tuple(r))
    worst_i, worst = None, math.inf
    for i, p in enumerate(r.pairs):
        vals = []
        for x in (p.xb[0], p.xa[0]):
            if x not in assignment:
                raise MissingAssignment(f"no value assigned to node {x!r}")
            v = float(assignment[x])
            if not 0.0 <= v <= 1.0:
                raise InvalidParameter(f"f({x!r}) = {v!r} is outside [0, 1]")
            vals.append(v)
        w = pair_win_prob(*vals)
        if w < worst:
            worst_i, worst = i, w
    return worst > 0.5, worst_i, worst


def builtin_ruleset(name: str, params: Sequence) -> Ruleset:
    """Finite samples of the two classical rulesets.

    ``mirror``: ``params`` is a list of ``(a, b)`` with ``a < b``, giving pairs
    ``((a, b), (b, a))``.  ``vertical``: a list of ``(x, eps_a, eps_b)`` with
    positive offsets, giving ``((x, x + eps_a), (x, x - eps_b))``.
    """
    pairs = []
    if name == "mirror":
        for item in params:
            a, b = check_finite(item, "parameter")
            if not a < b:
                raise InvalidParameter(f"mirror sample needs a < b, got ({a}, {b})")
            pairs.append(((a, b), (b, a)))
    elif name == "vertical":
        for item in params:
            x, ea, eb = check_finite(item, "parameter")
            if not (ea > 0 and eb > 0):
                raise InvalidParameter(f"vertical sample needs positive offsets, got ({ea}, {eb})")
            pairs.append(((x, x + ea), (x, x - eb)))
    else:
        raise InvalidParameter(f"unknown ruleset {name!r}; choose mirror or vertical")
    return Ruleset(tuple(pairs))
