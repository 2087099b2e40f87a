"""JSON instance files.

Numbers may be JSON integers, decimals, or ``"num/den"`` strings; all of them
are read exactly.  Decimals are parsed from their text, so ``0.1`` is 1/10.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .charnes_cooper import FractionalObjective, FractionalProgram
from .errors import FlpError, ParseError
from .exchange_economy import ExchangeEconomy
from .molp import MultiProductionGame
from .production_game import ProductionGame

KINDS = ("flp", "production_game", "multi_production_game", "exchange_economy")


def _num(value, where, to_float):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    try:
        x = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: cannot read {value!r} as a number") from None
    return float(x) if to_float else x


def _vec(value, where, to_float):
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected an array")
    return [_num(v, f"{where}[{k}]", to_float) for k, v in enumerate(value)]


def _mat(value, where, to_float):
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: expected a nonempty array of arrays")
    return [_vec(r, f"{where}[{k}]", to_float) for k, r in enumerate(value)]


def _objective(value, where, to_float):
    if not isinstance(value, dict):
        raise ParseError(f"{where}: expected an object with c, c0, d, d0")
    try:
        return FractionalObjective(
            _vec(value["c"], f"{where}.c", to_float),
            _num(value.get("c0", 0), f"{where}.c0", to_float),
            _vec(value["d"], f"{where}.d", to_float),
            _num(value.get("d0", 1), f"{where}.d0", to_float))
    except KeyError as exc:
        raise ParseError(f"{where}: missing field {exc}") from None


def _require(doc, key):
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def _check_dim(doc, key, actual):
    if key in doc and doc[key] != actual:
        raise ParseError(f"field {key!r} says {doc[key]} but the data implies {actual}")


def load_document(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("instance must be a JSON object")
    if doc.get("kind") not in KINDS:
        raise ParseError(f"kind must be one of {', '.join(KINDS)}")
    return doc


def parse_instance(doc: dict, *, to_float: bool = False, gamma=None):
    """Build the library object described by ``doc``.

    ``gamma`` overrides the file's value.  Returns ``(kind, obj, weights)``.
    """
    kind = doc["kind"]
    weights = doc.get("weights")
    if weights is not None:
        weights = _vec(weights, "weights", to_float)
    if gamma is None and doc.get("gamma") is not None:
        gamma = _num(doc["gamma"], "gamma", to_float)
    elif gamma is not None and to_float:
        gamma = float(gamma)
    try:
        if kind == "flp":
            obj = _objective(_require(doc, "objective"), "objective", to_float)
            A = _mat(_require(doc, "A"), "A", to_float)
            b = _vec(_require(doc, "b"), "b", to_float)
            _check_dim(doc, "m", len(A))
            _check_dim(doc, "p", obj.p)
            return kind, FractionalProgram(obj, A, b), weights

        ends = _mat(_require(doc, "endowments"), "endowments", to_float)
        _check_dim(doc, "n", len(ends))
        if kind == "production_game":
            obj = _objective(_require(doc, "objective"), "objective", to_float)
            A = _mat(_require(doc, "A"), "A", to_float)
            _check_dim(doc, "m", len(A))
            _check_dim(doc, "p", obj.p)
            return kind, ProductionGame(A, ends, obj, gamma), weights

        raw = doc.get("objectives", doc.get("utilities"))
        if not isinstance(raw, list) or not raw:
            raise ParseError("missing field 'objectives'")
        objs = [_objective(o, f"objectives[{k}]", to_float) for k, o in enumerate(raw)]
        if kind == "multi_production_game":
            A = _mat(_require(doc, "A"), "A", to_float)
            _check_dim(doc, "m", len(A))
            _check_dim(doc, "p", objs[0].p)
            return kind, MultiProductionGame(A, ends, objs, gamma), weights

        _check_dim(doc, "m", len(ends[0]))
        return kind, ExchangeEconomy(ends, objs, gamma), weights
    except ParseError:
        raise
    except FlpError as exc:
        raise ParseError(str(exc)) from exc
