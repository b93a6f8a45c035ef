"""Command-line interface.

Exit status: 0 on success, 1 on bad input (duplicates, non-finite values,
unsolvable parameters, unreadable files), 2 on usage errors.
"""
import argparse
import json
import math
import sys

import numpy as np

from .adversary import SearchConfig, edge_sweep, minimize_edge
from .errors import CoverGameError
from .evaluator import dp_win_prob, inequality_lhs
from .game import exact_win_prob_enum, make_input, mc_estimate, play_game
from .output import (emit_output, inequality_payload, ruleset_payload, search_payload,
                     sweep_table, win_payload)
from .permutations import sample_permutation
from .rulesets import Ruleset, build_order_map, builtin_ruleset, check_dominance, derive_relation

SEED_MAX = 2 ** 64 - 1


def real_list(text: str) -> tuple:
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    if not parts:
        raise argparse.ArgumentTypeError("expected comma-separated numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of decimals: {text!r}") from None


def seed_type(text: str) -> int:
    try:
        seed = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= seed <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return seed


def positive_int(text: str) -> int:
    try:
        v = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def positive_real(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def interval(text: str) -> tuple:
    vals = real_list(text)
    if len(vals) != 2 or not vals[0] < vals[1]:
        raise argparse.ArgumentTypeError(f"expected LO,HI with LO < HI, got {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covergame",
        description="Ordinal guessing game: Lehmer-code guessing with a softmax strategy.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact win probability of the softmax strategy")
    p.add_argument("--points", type=real_list, required=True)
    p.add_argument("--method", choices=("enum", "dp"), default="dp")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the win probability")
    p.add_argument("--points", type=real_list, required=True)
    p.add_argument("--trials", type=positive_int, default=100000)
    p.add_argument("--seed", type=seed_type, default=0)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("inequality", help="left-hand side of the key inequality")
    p.add_argument("--points", type=real_list, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("adversary", help="search for inputs minimizing the edge")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--restarts", type=positive_int, default=8)
    p.add_argument("--max-iters", type=positive_int, default=500)
    p.add_argument("--initial-step", type=positive_real, default=1.0)
    p.add_argument("--step-shrink", type=positive_real, default=0.5)
    p.add_argument("--min-gap", type=positive_real, default=1e-6)
    p.add_argument("--range", type=interval, default=(-5.0, 5.0), dest="coordinate_range")
    p.add_argument("--seed", type=seed_type, default=0)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("sweep", help="win probability of scaled copies of an input")
    p.add_argument("--points", type=real_list, required=True)
    p.add_argument("--scales", type=real_list, required=True)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")

    p = sub.add_parser("ruleset", help="two-point rulesets: solvability and strategies")
    rsub = p.add_subparsers(dest="action", required=True)
    c = rsub.add_parser("check", help="decide a ruleset file and build a strategy")
    c.add_argument("file")
    c.add_argument("--format", choices=("json", "text"), default="json")
    s = rsub.add_parser("sample", help="write a finite sample of a classical ruleset")
    s.add_argument("name", choices=("mirror", "vertical"))
    s.add_argument("--params", required=True,
                   help="JSON list: [[a, b], ...] for mirror, [[x, eps_a, eps_b], ...] for vertical")

    p = sub.add_parser("play", help="interactive game: you are Player 1")
    p.add_argument("--seed", type=seed_type, default=0)
    p.add_argument("--points", type=real_list, default=None,
                   help="skip the prompt and use these numbers")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    """Parse and validate; argparse exits with status 2 on usage errors."""
    return build_parser().parse_args(argv)


def _read_points(stdin, stderr) -> tuple:
    stderr.write("Enter at least two distinct numbers, separated by commas: ")
    stderr.flush()
    line = stdin.readline()
    try:
        return real_list(line.strip())
    except argparse.ArgumentTypeError as exc:
        raise CoverGameError(str(exc)) from None


def run_command(args: argparse.Namespace, stdin=None) -> tuple:
    """Dispatch a parsed command; returns ``(text, exit_status)``."""
    stdin = stdin or sys.stdin
    cmd = args.command
    if cmd == "exact":
        inp = make_input(args.points)
        value = dp_win_prob(inp) if args.method == "dp" else exact_win_prob_enum(inp)
        return emit_output(win_payload(inp, value, args.method), args.format), 0
    if cmd == "simulate":
        inp = make_input(args.points)
        mc = mc_estimate(inp, args.trials, args.seed)
        return emit_output(win_payload(inp, mc.estimate, "mc", mc), args.format), 0
    if cmd == "inequality":
        inp = make_input(args.points)
        return emit_output(inequality_payload(inp, inequality_lhs(inp)), args.format), 0
    if cmd == "adversary":
        cfg = SearchConfig(args.n, args.restarts, args.max_iters, args.initial_step,
                           args.step_shrink, args.min_gap, args.seed, args.coordinate_range)
        return emit_output(search_payload(minimize_edge(cfg), args.seed), args.format), 0
    if cmd == "sweep":
        rows = edge_sweep(make_input(args.points), args.scales)
        return emit_output(sweep_table(rows), args.format), 0
    if cmd == "ruleset":
        if args.action == "sample":
            try:
                params = json.loads(args.params)
            except json.JSONDecodeError as exc:
                raise CoverGameError(f"--params is not valid JSON: {exc}") from None
            return json.dumps(builtin_ruleset(args.name, params).to_dict()) + "\n", 0
        rules = Ruleset.load(args.file)
        graph = derive_relation(rules)
        outcome = build_order_map(graph)
        dominance = None if hasattr(outcome, "witness") else check_dominance(outcome, rules)
        return emit_output(ruleset_payload(graph, outcome, dominance), args.format), 0
    if cmd == "play":
        points = args.points if args.points is not None else _read_points(stdin, sys.stderr)
        inp = make_input(points)
        rng = np.random.default_rng(args.seed)
        sigma = sample_permutation(inp.n, rng)
        return emit_output(play_game(inp, sigma, rng), "text"), 0
    raise AssertionError(cmd)


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        text, status = run_command(args)
    except (CoverGameError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
