"""JSON interchange: StateFile, StarFile, DensityFile and mixed-model documents.

Complex numbers are ``[re, im]`` pairs.  Floats go through :mod:`json`, which
writes the shortest decimal string that round-trips, so output bytes are
stable for a given input.
"""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path

import numpy as np

from .core import MajoranaError, Star, StarSet, StateVector, ValidationError
from .representation import star_to_bloch


class ParseError(MajoranaError, ValueError):
    """Malformed document: bad JSON, missing keys, wrong types."""


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def decode_complex(value, where: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise ParseError(f"{where}: expected [re, im], got {value!r}")
    return complex(float(value[0]), float(value[1]))


def _require(doc, key: str, kind, where: str):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    value = doc[key]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise ParseError(f"{where}: field {key!r} must be an integer")
    if kind is list and not isinstance(value, list):
        raise ParseError(f"{where}: field {key!r} must be a list")
    return value


def state_to_doc(s: StateVector) -> dict:
    return {"dim": s.dim, "amplitudes": [encode_complex(a) for a in s.amplitudes]}


def state_from_doc(doc) -> StateVector:
    dim = _require(doc, "dim", int, "state")
    raw = _require(doc, "amplitudes", list, "state")
    amps = [decode_complex(v, f"state.amplitudes[{i}]") for i, v in enumerate(raw)]
    if len(amps) != dim:
        raise ValidationError(f"state: {len(amps)} amplitudes for dim {dim}")
    return StateVector(np.array(amps, dtype=complex))


def star_set_to_doc(A: StarSet) -> dict:
    return {
        "dim": A.dim,
        "prefactor": encode_complex(A.prefactor),
        "stars": [
            {
                "alpha": encode_complex(s.alpha),
                "beta": encode_complex(s.beta),
                "bloch": [float(x) for x in star_to_bloch(s).as_array()],
            }
            for s in A.stars
        ],
    }


def star_set_from_doc(doc) -> StarSet:
    dim = _require(doc, "dim", int, "stars")
    prefactor = decode_complex(_require(doc, "prefactor", list, "stars"), "stars.prefactor")
    raw = _require(doc, "stars", list, "stars")
    if len(raw) != dim - 1:
        raise ValidationError(f"stars: {len(raw)} stars for dim {dim}, expected {dim - 1}")
    stars = []
    for i, item in enumerate(raw):
        where = f"stars[{i}]"
        alpha = decode_complex(_require(item, "alpha", list, where), where + ".alpha")
        beta = decode_complex(_require(item, "beta", list, where), where + ".beta")
        bloch = _require(item, "bloch", list, where)
        if len(bloch) != 3 or not all(isinstance(x, (int, float)) for x in bloch):
            raise ParseError(f"{where}.bloch: expected three numbers")
        norm = float(np.linalg.norm(bloch))
        if abs(norm - 1.0) > 1e-9:
            raise ValidationError(f"{where}.bloch has norm {norm!r}, expected 1")
        stars.append(Star(alpha, beta))
    return StarSet(tuple(stars), prefactor)


def density_to_doc(entries) -> dict:
    m = np.asarray(entries, dtype=complex)
    return {"dim": m.shape[0], "entries": [[encode_complex(x) for x in row] for row in m]}


def density_from_doc(doc):
    from .mixed import DensityMatrix

    dim = _require(doc, "dim", int, "density")
    rows = _require(doc, "entries", list, "density")
    if len(rows) != dim or not all(isinstance(r, list) and len(r) == dim for r in rows):
        raise ValidationError(f"density: entries must be a {dim} x {dim} array")
    m = np.array(
        [[decode_complex(x, f"density.entries[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    )
    return DensityMatrix(m)


def mixed_model_to_doc(model) -> dict:
    return {
        "weights": [float(w) for w in model.weights],
        "components": [star_set_to_doc(c) for c in model.components],
    }


def mixed_model_from_doc(doc):
    from .mixed import MixedStarModel

    weights = _require(doc, "weights", list, "mixed")
    comps = _require(doc, "components", list, "mixed")
    return MixedStarModel(np.array(weights, dtype=float), tuple(star_set_from_doc(c) for c in comps))


def is_star_doc(doc) -> bool:
    return isinstance(doc, dict) and "stars" in doc


_NUMBER_LIST = re.compile(r"\[\s*(-?[\d.eE+-]+(?:,\s*-?[\d.eE+-]+)*)\s*\]")


def dumps(doc) -> str:
    """Indented JSON with flat numeric lists ([re, im], Bloch triples) kept on one line."""
    text = json.dumps(doc, indent=2)
    text = _NUMBER_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
    return text + "\n"


def read_json(path: str):
    """Load JSON from ``path`` ("-" reads stdin)."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def write_text(path: str | None, text: str) -> None:
    """Write to ``path``; None or "-" writes stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise ParseError(f"cannot write {path}: {exc.strerror or exc}") from exc


def bloch_csv(A: StarSet) -> str:
    lines = ["cx,cy,cz"]
    for s in A.stars:
        b = star_to_bloch(s)
        lines.append(f"{b.cx!r},{b.cy!r},{b.cz!r}")
    return "\n".join(lines) + "\n"
