"""Seed files and deterministic JSON output.

A seed file is a JSON object with keys m, n, B, Lambda and optionally W
and Omega (a matrix of Laurent encodings [[exp, coeff], ...]).
"""

from __future__ import annotations

import json
from typing import Optional

from . import intmat
from .errors import DimensionMismatch, MalformedInput
from .laurent import LaurentV
from .seed import CompatibleTriple, ExtendedExchangeMatrix, PoissonMatrix, QuantumSeed

SEED_KEYS = ("m", "n", "B", "Lambda", "W", "Omega")
_REQUIRED = ("m", "n", "B", "Lambda")


def _int(x, name):
    if not isinstance(x, int) or isinstance(x, bool):
        raise MalformedInput(f"{name} must be an integer, got {x!r}")
    return x


def _matrix(data, rows: int, cols: int, name: str):
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise MalformedInput(f"{name} must be a list of rows")
    M = intmat.as_matrix(data)
    if intmat.shape(M) != (rows, cols) and not (rows == 0 and not M):
        raise DimensionMismatch(f"{name} must be {rows}x{cols}, got {len(data)} rows")
    return M


def seed_from_dict(data) -> tuple:
    """Return (QuantumSeed, W or None, PoissonMatrix or None)."""
    if not isinstance(data, dict):
        raise MalformedInput("seed must be a JSON object")
    unknown = sorted(set(data) - set(SEED_KEYS))
    if unknown:
        raise MalformedInput(f"unknown seed keys: {', '.join(unknown)}")
    missing = [k for k in _REQUIRED if k not in data]
    if missing:
        raise MalformedInput(f"missing seed keys: {', '.join(missing)}")
    m, n = _int(data["m"], "m"), _int(data["n"], "n")
    if not 0 < n <= m:
        raise MalformedInput(f"need 0 < n <= m, got m={m}, n={n}")
    B = _matrix(data["B"], m, n, "B")
    L = _matrix(data["Lambda"], m, m, "Lambda")
    seed = QuantumSeed(ExtendedExchangeMatrix(B), L)
    W = _matrix(data["W"], m, m, "W") if data.get("W") is not None else None
    Omega = None
    if data.get("Omega") is not None:
        raw = data["Omega"]
        if not isinstance(raw, list) or len(raw) != m or any(
                not isinstance(r, list) or len(r) != m for r in raw):
            raise DimensionMismatch(f"Omega must be {m}x{m}")
        Omega = PoissonMatrix(tuple(tuple(LaurentV.from_json(x) for x in r) for r in raw))
    return seed, W, Omega


def load_seed_text(text: str) -> tuple:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}") from None
    return seed_from_dict(data)


def omega_to_json(Omega: PoissonMatrix) -> list:
    return [[x.to_json() for x in row] for row in Omega.Omega]


def seed_to_dict(obj, W=None, Omega: Optional[PoissonMatrix] = None) -> dict:
    if isinstance(obj, CompatibleTriple):
        seed, W = obj.seed, obj.W if W is None else W
    else:
        seed = obj
    out = {
        "m": seed.m,
        "n": seed.n,
        "B": [list(r) for r in seed.B],
        "Lambda": [list(r) for r in seed.Lambda],
    }
    if W is not None:
        out["W"] = [list(r) for r in W]
    if Omega is not None:
        out["Omega"] = omega_to_json(Omega)
    return out


def _is_flat(x) -> bool:
    return not any(isinstance(y, (list, dict)) for y in x)


def _fmt(x, indent: int) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_fmt(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(x, list):
        if _is_flat(x):
            return json.dumps(x)
        # short rows of small lists stay inline, e.g. matrix rows or Laurent terms
        if all(isinstance(y, list) and _is_flat(y) for y in x) or all(
                isinstance(y, list) and all(isinstance(z, list) and _is_flat(z) for z in y) for y in x):
            return "[\n" + ",\n".join(pad + json.dumps(y, separators=(", ", ": ")) for y in x) + "\n" + end + "]"
        return "[\n" + ",\n".join(pad + _fmt(y, indent + 1) for y in x) + "\n" + end + "]"
    return json.dumps(x)


def dumps(obj) -> str:
    """Deterministic, diff-friendly JSON: one matrix row per line."""
    return _fmt(obj, 0) + "\n"
