"""Exact solvers for one-clock priced timed games.

Games and results are JSON documents; numbers are exact rationals written
as strings such as "3/2" or "inf".
"""

import json
from fractions import Fraction

from ._core import DocumentError, SolverError, format_version, run_cli
from . import _core

__all__ = [
    "DocumentError",
    "SolverError",
    "format_version",
    "parse_game",
    "solve",
    "plot",
    "value_at",
    "run_cli",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def parse_game(doc):
    """Validated game document in canonical form, as a dict."""
    return json.loads(_core.parse_game(_text(doc)))


def solve(doc, verify=False, instrumented=False):
    """Solve a game given as a dict or JSON text; returns the result dict."""
    return json.loads(_core.solve(_text(doc), verify, instrumented))


def plot(result, decimal=False):
    """CSV segment table for a result dict or JSON text."""
    return _core.plot(_text(result), decimal)


def _number(s):
    return float("inf") if s == "inf" else Fraction(s)


def value_at(result, state, x):
    """Value of `state` at time x (point value, jumps respected)."""
    x = Fraction(x)
    for st in result["states"]:
        if st["id"] != state:
            continue
        if result["kind"] == "priced":
            return _number(st["value"])
        segs = st["value"]
        for i, seg in enumerate(segs):
            left, right = Fraction(seg["left"]), Fraction(seg["right"])
            if x == left:
                return _number(seg["left_point"] if seg.get("left_jump")
                               else seg["value_at_left"])
            if left < x < right:
                start = _number(seg["value_at_left"])
                if start == float("inf"):
                    return start
                return start + Fraction(seg["slope"]) * (x - left)
            if x == right and i + 1 == len(segs):
                return _number(seg["right_point"] if seg.get("right_jump")
                               else seg["value_at_right"])
        raise ValueError(f"time {x} is outside the domain")
    raise KeyError(state)
