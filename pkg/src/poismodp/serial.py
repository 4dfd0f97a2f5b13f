"""JSON (de)serialization of algebra descriptions and derivations.

The on-disk schema is versioned: files may carry "schema": 1 and any
unknown field is rejected so that fixtures double as regression
artifacts.
"""

from __future__ import annotations

import json
from typing import Optional

from .deriv import Derivation
from .errors import ParseError, require_prime
from .fieldpoly import default_var_names, format_poly, parse_poly
from .structure import (
    PoissonStructure,
    SkewMatrix,
    from_potential,
    from_skew_matrix,
    from_ore,
)

SCHEMA_VERSION = 1

_ALGEBRA_KEYS = {"schema", "p", "vars", "bracket"}
_BRACKET_KEYS = {
    "skew": {"kind", "matrix"},
    "potential": {"kind", "omega"},
    "explicit": {"kind", "pairs", "unchecked"},
    "ore": {"kind", "base", "alpha", "beta"},
}


def _check_keys(obj: dict, allowed: set, what: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"unknown fields in {what}: {sorted(unknown)}")


def _check_schema(obj: dict) -> None:
    if "schema" in obj and obj["schema"] != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema version {obj['schema']!r}")


def load_algebra(obj: dict) -> tuple[PoissonStructure, list[str]]:
    """Build a structure from a parsed JSON object; returns the
    structure and its variable names."""
    if not isinstance(obj, dict):
        raise ParseError("algebra description must be a JSON object")
    _check_keys(obj, _ALGEBRA_KEYS, "algebra")
    _check_schema(obj)
    if "p" not in obj or "bracket" not in obj:
        raise ParseError("algebra description needs 'p' and 'bracket'")
    p = obj["p"]
    try:
        require_prime(p)
    except Exception as exc:
        raise ParseError(str(exc)) from exc
    bracket = obj["bracket"]
    if not isinstance(bracket, dict) or "kind" not in bracket:
        raise ParseError("'bracket' must be an object with a 'kind'")
    kind = bracket["kind"]
    if kind not in _BRACKET_KEYS:
        raise ParseError(f"unknown bracket kind {kind!r}")
    _check_keys(bracket, _BRACKET_KEYS[kind], f"bracket kind {kind!r}")

    if kind == "skew":
        matrix = bracket["matrix"]
        n = len(matrix)
        names = _names(obj, n)
        struct = from_skew_matrix(SkewMatrix.from_rows(p, matrix))
        return struct, names
    if kind == "potential":
        names = _names(obj, 3)
        omega = parse_poly(bracket["omega"], p, 3, names)
        return from_potential(omega), names
    if kind == "explicit":
        if "vars" not in obj:
            raise ParseError("explicit brackets need a 'vars' list")
        names = list(obj["vars"])
        n = len(names)
        table = {}
        for pair in bracket["pairs"]:
            _check_keys(pair, {"i", "j", "value"}, "explicit pair")
            i, j = pair["i"] - 1, pair["j"] - 1
            if not 0 <= i < j < n:
                raise ParseError(f"pair indices {pair['i']},{pair['j']} out of range")
            table[(i, j)] = parse_poly(pair["value"], p, n, names)
        # "unchecked" defers the Jacobi check; negative-test fixtures only
        check = not bracket.get("unchecked", False)
        return PoissonStructure(p, n, table, check=check), names
    # ore
    base, base_names = load_algebra(bracket["base"])
    if base.p != p:
        raise ParseError("ore base has a different modulus")
    alpha = _load_images(bracket["alpha"], base, base_names, "alpha")
    beta = _load_images(bracket["beta"], base, base_names, "beta")
    names = _names(obj, base.n + 1, default=base_names + [f"x{base.n + 1}"])
    return from_ore(base, alpha, beta), names


def _names(obj: dict, n: int, default: Optional[list[str]] = None) -> list[str]:
    if "vars" in obj:
        names = list(obj["vars"])
        if len(names) != n:
            raise ParseError(f"expected {n} variable names, got {len(names)}")
        return names
    return default if default is not None else default_var_names(n)


def _load_images(strings, base: PoissonStructure, names, what: str) -> Derivation:
    if len(strings) != base.n:
        raise ParseError(f"'{what}' needs {base.n} generator images")
    images = [parse_poly(s, base.p, base.n, names) for s in strings]
    return Derivation(base.p, base.n, images)


def dump_algebra(struct: PoissonStructure, var_names=None) -> dict:
    """JSON object for a structure; skew and potential provenance keep
    their compact forms, everything else becomes an explicit table."""
    names = list(var_names) if var_names else default_var_names(struct.n)
    obj = {"schema": SCHEMA_VERSION, "p": struct.p, "vars": names}
    prov = struct.provenance
    if prov.kind == "skew" and prov.matrix is not None:
        obj["bracket"] = {
            "kind": "skew",
            "matrix": [list(row) for row in prov.matrix.entries],
        }
    elif prov.kind == "potential" and prov.omega is not None:
        obj["bracket"] = {
            "kind": "potential",
            "omega": format_poly(prov.omega, names),
        }
    else:
        pairs = [
            {"i": i + 1, "j": j + 1, "value": format_poly(h, names)}
            for (i, j), h in sorted(struct.table.items())
        ]
        obj["bracket"] = {"kind": "explicit", "pairs": pairs}
    return obj


def load_derivation(obj: dict, struct: PoissonStructure, names=None) -> Derivation:
    if not isinstance(obj, dict):
        raise ParseError("derivation description must be a JSON object")
    _check_keys(obj, {"schema", "images"}, "derivation")
    _check_schema(obj)
    if "images" not in obj:
        raise ParseError("derivation description needs 'images'")
    return _load_images(obj["images"], struct, names, "images")


def dump_derivation(d: Derivation, names=None) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "images": [format_poly(g, names) for g in d.images],
    }


def load_algebra_file(path: str) -> tuple[PoissonStructure, list[str]]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return load_algebra(obj)
