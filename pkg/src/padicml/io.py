"""JSON and JSON-lines serialization for models, datasets, balls and vectors.

Rationals are always written as exact "num/den" strings.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .balls import Ball
from .classify.linear import NEGATIVE, POSITIVE, LinearClassifier
from .classify.network import TwoLayerNetwork
from .classify.poly import PolyClassifier
from .padic import format_rational, parse_rational


class FormatError(ValueError):
    pass


def rational_out(x) -> str:
    return format_rational(Fraction(x))


def rational_in(obj) -> Fraction:
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    if not isinstance(obj, str):
        raise FormatError(f"expected a rational string, got {obj!r}")
    return parse_rational(obj)


def vector_to_json(v: Sequence) -> list[str]:
    return [rational_out(e) for e in v]


def vector_from_json(arr) -> tuple[Fraction, ...]:
    if not isinstance(arr, list):
        raise FormatError("expected an array of rational strings")
    return tuple(rational_in(e) for e in arr)


def matrix_to_json(A: Sequence[Sequence]) -> list[list[str]]:
    return [vector_to_json(r) for r in A]


def matrix_from_json(arr) -> tuple[tuple[Fraction, ...], ...]:
    if not isinstance(arr, list):
        raise FormatError("expected an array of rows")
    return tuple(vector_from_json(r) for r in arr)


# -- models ---------------------------------------------------------------

def _linear_to_json(clf: LinearClassifier) -> dict:
    return {
        "kind": "linear",
        "p": clf.p,
        "w": vector_to_json(clf.w),
        "b": rational_out(clf.b),
        "negated": clf.negated,
    }


def model_to_json(model) -> dict:
    if isinstance(model, LinearClassifier):
        return _linear_to_json(model)
    if isinstance(model, PolyClassifier):
        # roots go in "w" and the leading coefficient in "b"
        return {
            "kind": "poly",
            "p": model.p,
            "w": vector_to_json(model.roots),
            "b": rational_out(model.c),
        }
    if isinstance(model, TwoLayerNetwork):
        out = _linear_to_json(model.top)
        out["kind"] = "two_layer"
        out["hidden"] = [_linear_to_json(h) for h in model.hidden]
        out["hidden_encoding"] = model.hidden_encoding
        return out
    raise TypeError(f"cannot serialize {type(model).__name__}")


def model_from_json(obj: dict):
    try:
        kind = obj.get("kind", "linear")
        p = int(obj["p"])
        w = vector_from_json(obj["w"])
        b = rational_in(obj["b"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed model: {exc}") from None
    if kind == "linear":
        return LinearClassifier(w, b, p, bool(obj.get("negated", False)))
    if kind == "poly":
        return PolyClassifier(b, w, p)
    if kind == "two_layer":
        hidden = tuple(model_from_json(dict(h, kind="linear")) for h in obj.get("hidden", []))
        top = LinearClassifier(w, b, p, bool(obj.get("negated", False)))
        return TwoLayerNetwork(hidden, top, obj.get("hidden_encoding", "pm1"))
    raise FormatError(f"unknown model kind {kind!r}")


def save_model(model, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(model_to_json(model), fh, indent=2)
        fh.write("\n")


def load_model(path: str):
    with open(path) as fh:
        return model_from_json(json.load(fh))


# -- datasets -------------------------------------------------------------

def write_dataset(fh: IO[str], xs: Iterable[Sequence], ys: Iterable, regression: bool = False) -> None:
    for x, y in zip(xs, ys):
        label = rational_out(y) if regression else int(y)
        fh.write(json.dumps({"x": vector_to_json(x), "y": label}) + "\n")


def read_dataset(fh: IO[str], regression: bool = False) -> tuple[list[tuple], list]:
    xs, ys = [], []
    for lineno, line in enumerate(fh, 1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
            x = vector_from_json(row["x"])
            y = row["y"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if regression:
            y = rational_in(y)
        elif y not in (POSITIVE, NEGATIVE) or isinstance(y, bool):
            raise FormatError(f"line {lineno}: label must be 1 or -1, got {y!r}")
        xs.append(x)
        ys.append(y)
    return xs, ys


def ball_to_json(b: Ball) -> dict:
    return b.to_json()


def ball_from_json(obj: dict) -> Ball:
    return Ball.from_json(obj)
