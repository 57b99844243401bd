"""Brute-force ground truth on small grids.

Exhaustive mode walks restricted-growth color strings in file vertex order
(canonical up to relabeling) and prunes as soon as a constrained cell is
complete and over-colored.
"""
from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .coloring import (
    SIMPLICIAL,
    Coloring,
    component_labels,
    constrained_faces,
    neighbors,
    require_valid,
)
from .cubical import GridSpec, vertex_index, vertex_order
from .errors import SizeGuardError

EXHAUSTIVE_LIMIT = 12


def _cells_by_last_vertex(spec: GridSpec, mode: str) -> list[list[tuple[int, ...]]]:
    """For each vertex index, the constrained cells (as index tuples) it completes."""
    out: list[list] = [[] for _ in range((spec.n + 1) ** spec.d)]
    for _, verts in constrained_faces(spec, mode):
        idx = tuple(vertex_index(v, spec.n) for v in verts)
        out[max(idx)].append(idx)
    return out


def _guard(spec: GridSpec):
    count = (spec.n + 1) ** spec.d
    if count > EXHAUSTIVE_LIMIT:
        raise SizeGuardError(f"{count} vertices exceed the exhaustive limit of {EXHAUSTIVE_LIMIT}")


def enumerate_valid(spec: GridSpec, max_palette: Optional[int] = None,
                    mode: str = SIMPLICIAL) -> Iterator[Coloring]:
    """Every valid coloring exactly once up to relabeling, in lexicographic order."""
    _guard(spec)
    size = (spec.n + 1) ** spec.d
    palette = size if max_palette is None else min(max_palette, size)
    closing = _cells_by_last_vertex(spec, mode)
    limit = spec.m + 1
    values = [0] * size

    def rec(i: int, used: int):
        if i == size:
            yield Coloring(spec.d, spec.n, values)
            return
        for c in range(min(used + 1, palette)):
            values[i] = c
            if all(len({values[j] for j in cell}) <= limit for cell in closing[i]):
                yield from rec(i + 1, max(used, c + 1))

    yield from rec(0, 0)


@dataclass
class OracleReport:
    spec: GridSpec
    mode: str
    value: int
    extremal: Coloring
    samples: int
    component_stats: Counter = field(default_factory=Counter)

    def to_dict(self) -> dict:
        return {"spec": self.spec.to_dict(), "mode": self.mode, "value": self.value,
                "extremal": list(self.extremal.values), "samples": self.samples,
                "component_stats": {str(k): v for k, v in sorted(self.component_stats.items())}}


def min_max_usage(spec: GridSpec, mode: str = SIMPLICIAL) -> tuple[int, Coloring]:
    best = None
    for col in enumerate_valid(spec, mode=mode):
        u = col.max_usage()
        if best is None or u < best[0]:
            best = (u, col)
    return best


def random_valid(spec: GridSpec, seed: int, mode: str = SIMPLICIAL, new_color_prob: float = 0.35) -> Coloring:
    """Seeded randomized depth-first coloring in file vertex order.

    Each vertex draws among the legal options (a fresh color with probability
    ``new_color_prob`` when legal, otherwise an existing one); dead ends
    backtrack. The constant coloring is always reachable, so this terminates.
    """
    rng = random.Random(seed)
    size = (spec.n + 1) ** spec.d
    closing = _cells_by_last_vertex(spec, mode)
    limit = spec.m + 1
    values = [0] * size

    def legal(i: int) -> bool:
        return all(len({values[j] for j in cell}) <= limit for cell in closing[i])

    def options(i: int, used: int) -> list[int]:
        existing = list(range(used))
        rng.shuffle(existing)
        fresh = [used]
        return fresh + existing if rng.random() < new_color_prob else existing + fresh

    stack = [(0, 0, options(0, 0))]
    while stack:
        i, used, opts = stack[-1]
        if i == size:
            return Coloring(spec.d, spec.n, values)
        while opts:
            values[i] = opts.pop(0)
            if legal(i):
                nxt = max(used, values[i] + 1)
                stack.append((i + 1, nxt, options(i + 1, nxt) if i + 1 < size else []))
                break
        else:
            stack.pop()
    raise AssertionError("unreachable: the constant coloring is always legal")


def component_stats(spec: GridSpec, coloring: Coloring, adjacency: str = SIMPLICIAL,
                    mode: Optional[str] = None) -> int:
    """Largest monochromatic component size via union-find."""
    require_valid(spec, coloring, mode or adjacency)
    return max(Counter(component_labels(spec, coloring, adjacency)).values())


def largest_component_bfs(spec: GridSpec, coloring: Coloring, adjacency: str = SIMPLICIAL) -> int:
    """Independent breadth-first count of the same quantity."""
    seen = set()
    best = 0
    for v in vertex_order(spec.d, spec.n):
        if v in seen:
            continue
        seen.add(v)
        size = 0
        queue = deque([v])
        while queue:
            u = queue.popleft()
            size += 1
            for w in neighbors(spec, u, adjacency):
                if w not in seen and coloring[w] == coloring[v]:
                    seen.add(w)
                    queue.append(w)
        best = max(best, size)
    return best


def exhaustive_report(spec: GridSpec, mode: str = SIMPLICIAL) -> OracleReport:
    best = None
    stats: Counter = Counter()
    count = 0
    for col in enumerate_valid(spec, mode=mode):
        count += 1
        stats[max(Counter(component_labels(spec, col, mode)).values())] += 1
        u = col.max_usage()
        if best is None or u < best[0]:
            best = (u, col)
    return OracleReport(spec, "exhaustive", best[0], best[1], count, stats)


def random_report(spec: GridSpec, seed: int, samples: int = 100, mode: str = SIMPLICIAL) -> OracleReport:
    """Upper estimate of the min-max usage from seeded random valid colorings."""
    best = None
    stats: Counter = Counter()
    for i in range(samples):
        col = random_valid(spec, seed + i, mode)
        stats[max(Counter(component_labels(spec, col, mode)).values())] += 1
        u = col.max_usage()
        if best is None or u < best[0]:
            best = (u, col)
    return OracleReport(spec, "random", best[0], best[1], samples, stats)
