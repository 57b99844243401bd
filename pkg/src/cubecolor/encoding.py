"""JSON encodings of cells, cochains, colorings, certificates and reports.

Axis indices are 1-based in files and 0-based in memory.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from . import __version__
from .algebra import Chain, Cochain
from .certificate import Certificate
from .coloring import Coloring
from .cubical import Box, CubeFace, GridSpec, Simplex
from .filling import FillResult


class ParseError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write(path: Optional[str], obj) -> str:
    text = dumps(obj)
    if path and path != "-":
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    return text


def read(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from e


def face_to_json(f: CubeFace) -> dict:
    return {"anchor": list(f.anchor), "free": [a + 1 for a in f.free]}


def face_from_json(obj: dict) -> CubeFace:
    try:
        anchor = tuple(int(x) for x in obj["anchor"])
        free = tuple(sorted(int(a) - 1 for a in obj["free"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad face {obj!r}") from e
    if any(not 0 <= a < len(anchor) for a in free) or len(set(free)) != len(free):
        raise ParseError(f"free axes out of range in {obj!r}")
    return CubeFace(anchor, free)


def simplex_to_json(s: Simplex) -> dict:
    return {"vertices": [list(v) for v in s.vertices]}


def simplex_from_json(obj: dict) -> Simplex:
    try:
        return Simplex(tuple(tuple(int(x) for x in v) for v in obj["vertices"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad simplex {obj!r}") from e


def cell_to_json(cell) -> dict:
    return face_to_json(cell) if isinstance(cell, CubeFace) else simplex_to_json(cell)


def cell_from_json(obj: dict):
    return simplex_from_json(obj) if "vertices" in obj else face_from_json(obj)


def cochain_to_json(c: Chain) -> list:
    return [{"cell": cell_to_json(cell), "coeff": v} for cell, v in c.items()]


def cochain_from_json(items: list) -> Cochain:
    try:
        return Cochain([(cell_from_json(it["cell"]), int(it["coeff"])) for it in items])
    except (KeyError, TypeError) as e:
        raise ParseError(f"bad cochain entry: {e}") from e


def coloring_to_json(spec: GridSpec, coloring: Coloring) -> dict:
    return {"d": spec.d, "n": spec.n, "m": spec.m, "colors": list(coloring.values)}


def coloring_from_json(obj: dict) -> tuple[GridSpec, Coloring]:
    try:
        spec = GridSpec(int(obj["d"]), int(obj["n"]), int(obj["m"]))
        return spec, Coloring(spec.d, spec.n, obj["colors"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad coloring file: {e}") from e


def fill_input_from_json(obj: dict) -> tuple[Cochain, Box]:
    """Cochain file: {"d", "n", "cochain": [...]} or with an explicit "box"."""
    try:
        if "box" in obj:
            box = Box(tuple((int(lo), int(hi)) for lo, hi in obj["box"]))
        else:
            box = Box.cube(int(obj["d"]), int(obj["n"]))
        alpha = cochain_from_json(obj["cochain"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad cochain file: {e}") from e
    for cell in alpha:
        if not isinstance(cell, CubeFace) or len(cell.anchor) != box.d or not box.contains_face(cell):
            raise ParseError(f"cell {cell_to_json(cell)} does not lie in the box")
    return alpha, box


def fill_result_to_json(result: FillResult, box: Box) -> dict:
    return {"box": [list(b) for b in box.bounds], "alpha_norm": result.alpha_norm,
            "beta": cochain_to_json(result.beta), "beta_norm": sum(abs(v) for v in result.beta.values()),
            "bound": result.bound, "sweeps": [s.to_dict() for s in result.sweeps]}


def certificate_to_json(cert: Certificate) -> dict:
    out = {"color": cert.color, "x": {str(c): v for c, v in cert.x.items()},
           "witness_count": cert.witness_count, "witnesses": [list(w) for w in cert.witnesses],
           "incidence_bound": cert.incidence_bound}
    if cert.per_vertex_support is not None:
        out["per_vertex_support"] = [
            {"vertex": list(v), "support": [{"vertex": list(w), "coeff": c} for w, c in sup]}
            for v, sup in cert.per_vertex_support.items()]
    return out


def certificate_from_json(obj: dict) -> Certificate:
    try:
        supports = None
        if "per_vertex_support" in obj:
            supports = {tuple(e["vertex"]): [(tuple(s["vertex"]), int(s["coeff"])) for s in e["support"]]
                        for e in obj["per_vertex_support"]}
        return Certificate(int(obj["color"]), {int(c): int(v) for c, v in obj["x"].items()},
                           [tuple(w) for w in obj["witnesses"]], int(obj["incidence_bound"]), supports)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad certificate: {e}") from e


def envelope(spec: Optional[GridSpec], flags: dict, body: dict) -> dict:
    """Embed spec, tool version and mode flags in a report."""
    out = dict(body)
    out["spec"] = spec.to_dict() if spec else None
    out["version"] = __version__
    out["flags"] = flags
    return out
