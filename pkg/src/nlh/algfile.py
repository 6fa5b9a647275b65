"""Loading and validating the JSON algebra description format.

The document carries the ordered generator list, bracket constants keyed
by comma-separated letter pairs, the operator and derivation columns, the
subalgebra basis, and optional run options.  Coefficients are rational
strings so the file format stays exact.  Missing bracket entries mean
zero; unknown keys are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import AlgebraFileError
from .hnn import AlgebraSpec, T_SYMBOL

TOP_KEYS = {"generators", "bracket", "nijenhuis", "subalgebra", "derivation", "options"}
OPTION_KEYS = {"include_nt", "max_deg"}


@dataclass
class RunOptions:
    include_nt: bool = True
    max_deg: int = 6


def parse_rational(text, where: str) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise AlgebraFileError(
            f"{where}: coefficients must be rational strings, got {text!r}")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraFileError(f"{where}: invalid rational {text!r} ({exc})") from None
    return value


def _coord(obj, generators, where: str) -> dict:
    if not isinstance(obj, dict):
        raise AlgebraFileError(f"{where}: expected an object of coefficients")
    out = {}
    for sym, raw in obj.items():
        if sym not in generators:
            raise AlgebraFileError(f"{where}: unknown generator {sym!r}")
        value = parse_rational(raw, f"{where}[{sym}]")
        if value:
            out[sym] = value
    return out


def load_algebra(path) -> tuple[AlgebraSpec, RunOptions]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise AlgebraFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"{path}: malformed JSON at line {exc.lineno}: {exc.msg}") from None
    return parse_algebra_doc(doc, str(path))


def parse_algebra_doc(doc, where: str = "algebra") -> tuple[AlgebraSpec, RunOptions]:
    if not isinstance(doc, dict):
        raise AlgebraFileError(f"{where}: top level must be an object")
    unknown = set(doc) - TOP_KEYS
    if unknown:
        raise AlgebraFileError(f"{where}: unknown keys {sorted(unknown)}")
    if "generators" not in doc:
        raise AlgebraFileError(f"{where}: missing 'generators'")

    generators = doc["generators"]
    if (not isinstance(generators, list) or not generators
            or not all(isinstance(g, str) for g in generators)):
        raise AlgebraFileError(f"{where}: 'generators' must be a nonempty list of names")
    if len(set(generators)) != len(generators):
        raise AlgebraFileError(f"{where}: duplicate generators in {generators}")
    for g in generators:
        if g == T_SYMBOL:
            raise AlgebraFileError(
                f"{where}: generator {T_SYMBOL!r} is reserved for the extension letter")
        if g in ("N", "*") or not g.isidentifier():
            raise AlgebraFileError(f"{where}: invalid generator name {g!r}")
    generators = tuple(generators)
    order = {g: i for i, g in enumerate(generators)}

    alpha = {}
    for key, raw in (doc.get("bracket") or {}).items():
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 2:
            raise AlgebraFileError(f"{where}: bracket key {key!r} must be 'x,y'")
        x, y = parts
        for sym in (x, y):
            if sym not in order:
                raise AlgebraFileError(f"{where}: bracket key {key!r} uses unknown generator {sym!r}")
        if x == y:
            raise AlgebraFileError(f"{where}: bracket key {key!r} repeats a generator; [v,v] is zero")
        coord = _coord(raw, order, f"{where}.bracket[{key}]")
        if order[x] > order[y]:
            # ascending pair: store the descending mirror with flipped signs
            x, y = y, x
            coord = {k: -v for k, v in coord.items()}
        prev = alpha.get((x, y))
        if prev is not None and prev != coord:
            raise AlgebraFileError(
                f"{where}: bracket given for both orders of ({x},{y}) and the "
                f"values are not antisymmetric")
        alpha[(x, y)] = coord

    nij = {}
    for sym, raw in (doc.get("nijenhuis") or {}).items():
        if sym not in order:
            raise AlgebraFileError(f"{where}: nijenhuis key {sym!r} is not a generator")
        coord = _coord(raw, order, f"{where}.nijenhuis[{sym}]")
        if coord:
            nij[sym] = coord

    sub_raw = doc.get("subalgebra", [])
    if not isinstance(sub_raw, list) or not all(isinstance(s, str) for s in sub_raw):
        raise AlgebraFileError(f"{where}: 'subalgebra' must be a list of generators")
    for sym in sub_raw:
        if sym not in order:
            raise AlgebraFileError(f"{where}: subalgebra member {sym!r} is not a generator")
    if len(set(sub_raw)) != len(sub_raw):
        raise AlgebraFileError(f"{where}: duplicate subalgebra members")
    sub = tuple(s for s in generators if s in set(sub_raw))

    der = {}
    for sym, raw in (doc.get("derivation") or {}).items():
        if sym not in order:
            raise AlgebraFileError(f"{where}: derivation key {sym!r} is not a generator")
        if sym not in sub:
            raise AlgebraFileError(
                f"{where}: derivation given at {sym!r} outside the subalgebra")
        coord = _coord(raw, order, f"{where}.derivation[{sym}]")
        if coord:
            der[sym] = coord

    options = RunOptions()
    raw_opts = doc.get("options") or {}
    if not isinstance(raw_opts, dict):
        raise AlgebraFileError(f"{where}: 'options' must be an object")
    unknown = set(raw_opts) - OPTION_KEYS
    if unknown:
        raise AlgebraFileError(f"{where}: unknown options {sorted(unknown)}")
    if "include_nt" in raw_opts:
        if not isinstance(raw_opts["include_nt"], bool):
            raise AlgebraFileError(f"{where}: options.include_nt must be a boolean")
        options.include_nt = raw_opts["include_nt"]
    if "max_deg" in raw_opts:
        if not isinstance(raw_opts["max_deg"], int) or raw_opts["max_deg"] < 1:
            raise AlgebraFileError(f"{where}: options.max_deg must be a positive integer")
        options.max_deg = raw_opts["max_deg"]

    spec = AlgebraSpec(letters=generators, alpha=alpha, nij=nij, sub=sub, der=der)
    return spec, options


def parse_algebra(path) -> AlgebraSpec:
    """Load a file and return just the algebra description."""
    return load_algebra(path)[0]
