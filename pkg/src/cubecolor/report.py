"""Trace summaries and the scaling table."""
from __future__ import annotations

import csv
import io
import math
import statistics
from typing import Iterable

from .certificate import PipelineResult, certify
from .coloring import Coloring, SIMPLICIAL, checkerboard, striped
from .cubical import GridSpec, max_coface_count
from .oracle import random_valid

SCALING_FIELDS = ["d", "n", "m", "coloring", "witness_count", "incidence_bound",
                  "max_multiplicity", "target", "verified"]


def trace_report(result: PipelineResult, cofaces: bool = True) -> dict:
    """Descent trace plus the measured constants the argument leaves implicit."""
    spec = result.spec
    levels = result.trace
    ratios = [e["eta_norm"] / e["M"] for lvl in levels for e in lvl["entries"] if e["M"]]
    constants = {
        "max_multiplicity_by_level": {str(lvl["level"]): lvl["max_multiplicity"] for lvl in levels},
        "max_eta_ratio": max(ratios, default=0.0),
    }
    if cofaces:
        constants["max_cofaces_by_dim"] = {str(k): max_coface_count(spec.triangulation, k)
                                           for k in range(spec.m + 1)}
    return {"levels": levels, "constants": constants}


def scaling_colorings(spec: GridSpec, seed: int = 0) -> list[tuple[str, Coloring]]:
    return [("striped", striped(spec.d, spec.n)),
            ("checkerboard", checkerboard(spec.d, spec.n)),
            (f"random{seed}", random_valid(spec, seed))]


def scaling_rows(specs: Iterable[GridSpec], seed: int = 0, mode: str = SIMPLICIAL) -> list[dict]:
    rows = []
    for spec in specs:
        for name, col in scaling_colorings(spec, seed):
            result = certify(spec, col, mode)
            cert = result.certificate
            rows.append({
                "d": spec.d, "n": spec.n, "m": spec.m, "coloring": name,
                "witness_count": cert.witness_count,
                "incidence_bound": cert.incidence_bound,
                "max_multiplicity": max(result.final.usage.values(), default=0),
                "target": (spec.n + 1) ** (spec.d - spec.m),
                "verified": result.verified,
            })
    return rows


def growth_exponent(ns: list[int], values: list[int]) -> float:
    """Least-squares slope of log(value) against log(n)."""
    if len(set(ns)) < 2:
        return 0.0
    slope, _ = statistics.linear_regression([math.log(n) for n in ns], [math.log(max(v, 1)) for v in values])
    return slope


def superlinear_flags(rows: list[dict], threshold: float = 1.25) -> list[dict]:
    """Series (d, m, coloring) whose incidence bound grows faster than about n^1."""
    series: dict = {}
    for r in rows:
        series.setdefault((r["d"], r["m"], r["coloring"]), []).append((r["n"], r["incidence_bound"]))
    flags = []
    for (d, m, name), pts in sorted(series.items()):
        pts.sort()
        slope = growth_exponent([p[0] for p in pts], [p[1] for p in pts])
        if slope > threshold:
            flags.append({"d": d, "m": m, "coloring": name, "exponent": slope})
    return flags


def rows_to_csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
