"""Rendering results as JSON, CSV or text with stable, byte-reproducible output."""
import csv
import io
import json
from dataclasses import asdict
from math import factorial

from .errors import UnsupportedFormat

SIG_DIGITS = 12
SWEEP_HEADER = ("scale", "win_probability", "baseline", "edge")


def fmt_real(v: float) -> float:
    """Round to 12 significant digits (JSON then prints the shortest repr)."""
    return float(f"{v:.{SIG_DIGITS}g}")


def _round(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return fmt_real(obj)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return fmt_real(float(obj))


def win_payload(inp, value: float, method: str, mc=None) -> dict:
    baseline = 1.0 / factorial(inp.n)
    out = {
        "n": inp.n,
        "points": list(inp.values),
        "win_probability": value,
        "baseline": baseline,
        "edge": value - baseline,
        "method": method,
    }
    if mc is not None:
        out.update(trials=mc.trials, stderr=mc.stderr, seed=mc.seed)
    return out


def inequality_payload(inp, lhs: float) -> dict:
    return {"n": inp.n, "points": list(inp.values), "lhs": lhs, "holds": lhs > 1.0}


def search_payload(result, seed: int) -> dict:
    return {
        "n": result.best_input.n,
        "seed": seed,
        "best_input": list(result.best_input.values),
        "best_value": result.best_value,
        "baseline": result.baseline,
        "edge": result.edge,
        "evaluations": result.evaluations,
        "trace": list(result.trace),
    }


def sweep_table(rows) -> list:
    return [asdict(r) for r in rows]


def ruleset_payload(graph, outcome, dominance=None) -> dict:
    out = {
        "verdict": "unsolvable" if dominance is None else "solvable",
        "nodes": list(graph.nodes),
        "edges": [list(e) for e in graph.edges],
    }
    if dominance is None:
        out["witness"] = list(outcome.witness)
    else:
        dominant, worst_pair, worst = dominance
        out["order_map"] = [list(row) for row in outcome.rows()]
        out["dominant"] = dominant
        out["worst_pair"] = worst_pair
        out["worst_win_probability"] = worst
    return out


def _g(v) -> str:
    return f"{v:.{SIG_DIGITS}g}" if isinstance(v, float) else str(v)


def transcript_lines(tr) -> list:
    lines = [f"reveal order (ranks): {list(tr.sigma.inverse())}"]
    for s in tr.stages:
        dist = ", ".join(f"{p:.6f}" for p in s.probs)
        lines.append(f"stage {s.k}: visible {_text_value(s.visible)}, distribution [{dist}]")
        verdict = "correct" if s.correct else "incorrect"
        lines.append(f"stage {s.k}: guess {s.guess} (p={s.probs[s.guess]:.6f}), "
                     f"truth {s.truth}, {verdict}")
    if tr.won:
        lines.append("outcome: win")
    else:
        lines.append(f"outcome: loss at stage {tr.loss_stage}")
    return lines


def emit_output(result, fmt: str = "json") -> str:
    """Render a payload dict, a table (list of row dicts) or a transcript."""
    from .game import GameTranscript

    if isinstance(result, GameTranscript):
        if fmt != "text":
            raise UnsupportedFormat(f"transcripts render as text only, not {fmt!r}")
        return "\n".join(transcript_lines(result)) + "\n"
    is_table = isinstance(result, list)
    if fmt == "json":
        return json.dumps(_round(result)) + "\n"
    if fmt == "csv":
        if not is_table:
            raise UnsupportedFormat("csv output is only available for tables")
        buf = io.StringIO()
        header = list(result[0]) if result else list(SWEEP_HEADER)
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in result:
            writer.writerow([_g(fmt_real(row[k]) if isinstance(row[k], float) else row[k])
                             for k in header])
        return buf.getvalue()
    if fmt == "text":
        rows = result if is_table else [result]
        return "".join(
            "\n".join(f"{k}: {_text_value(v)}" for k, v in row.items()) + "\n" for row in rows)
    raise UnsupportedFormat(f"unknown format {fmt!r}")


def _text_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text_value(t) for t in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return _g(v)
