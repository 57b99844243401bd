"""Vertex colorings, the face constraint, color cochains and component recoloring."""
from __future__ import annotations

from collections import Counter, defaultdict
from itertools import product
from typing import Iterator, Optional, Sequence, Union

from .algebra import Cochain
from .cubical import (
    CubeFace,
    GridSpec,
    Simplex,
    Skeleton,
    Vertex,
    faces_of,
    perm_sign,
    simplices_of,
    triangulate,
    vertex_index,
    vertex_order,
)
from .errors import DimensionError, ValidationError

SIMPLICIAL = "simplicial"
CUBICAL = "cubical"
MODES = (SIMPLICIAL, CUBICAL)


class Coloring:
    """Color ids on the vertices of [0, n]^d, stored in file order (axis 0 fastest)."""

    __slots__ = ("d", "n", "values", "_chi_cache")

    def __init__(self, d: int, n: int, values: Sequence[int]):
        values = tuple(int(c) for c in values)
        if len(values) != (n + 1) ** d:
            raise ValueError(f"expected {(n + 1) ** d} colors, got {len(values)}")
        if any(c < 0 for c in values):
            raise ValueError("color ids must be nonnegative")
        self.d, self.n, self.values = d, n, values
        self._chi_cache: dict = {}

    @classmethod
    def from_function(cls, d: int, n: int, fn) -> "Coloring":
        return cls(d, n, [fn(v) for v in vertex_order(d, n)])

    @classmethod
    def constant(cls, d: int, n: int, color: int = 0) -> "Coloring":
        return cls(d, n, [color] * (n + 1) ** d)

    def __getitem__(self, v: Sequence[int]) -> int:
        return self.values[vertex_index(v, self.n)]

    def __eq__(self, other) -> bool:
        return isinstance(other, Coloring) and (self.d, self.n, self.values) == (other.d, other.n, other.values)

    def __hash__(self):
        return hash((self.d, self.n, self.values))

    def __repr__(self) -> str:
        return f"Coloring(d={self.d}, n={self.n}, values={self.values})"

    @property
    def palette(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))

    def usage(self) -> Counter:
        return Counter(self.values)

    def max_usage(self) -> int:
        return max(self.usage().values())

    def colors_of(self, s: Simplex) -> tuple[int, ...]:
        return tuple(self[v] for v in s.vertices)

    def canonical(self) -> "Coloring":
        return Coloring(self.d, self.n, canonical_labels(self.values))


def canonical_labels(values: Sequence[int]) -> tuple[int, ...]:
    """Relabel colors by order of first appearance."""
    relabel: dict = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in values)


def striped(d: int, n: int, period: int = 2, axis: int = 0) -> Coloring:
    return Coloring.from_function(d, n, lambda v: v[axis] % period)


def checkerboard(d: int, n: int) -> Coloring:
    return Coloring.from_function(d, n, lambda v: sum(v) % 2)


def constrained_faces(spec: GridSpec, mode: str) -> Iterator[tuple[Union[CubeFace, Simplex], tuple[Vertex, ...]]]:
    """Cells whose vertex colors are constrained, with their vertex lists, in scan order."""
    for face in faces_of(spec.cube, spec.m + 1):
        if mode == CUBICAL:
            yield face, tuple(face.vertices())
        elif mode == SIMPLICIAL:
            for s, _ in triangulate(face):
                yield s, s.vertices
        else:
            raise ValueError(f"unknown mode {mode!r}")


def validate(spec: GridSpec, coloring: Coloring, mode: str = SIMPLICIAL):
    """Return None if no constrained cell carries m+2 colors, else the first such cell."""
    limit = spec.m + 1
    for cell, verts in constrained_faces(spec, mode):
        if len({coloring[v] for v in verts}) > limit:
            return cell
    return None


def require_valid(spec: GridSpec, coloring: Coloring, mode: str = SIMPLICIAL):
    bad = validate(spec, coloring, mode)
    if bad is not None:
        raise ValidationError(f"{mode} constraint violated on {bad}", face=bad)


def chi_value(C: Sequence[int], s: Simplex, coloring: Coloring) -> int:
    if len(C) != s.dim + 1:
        raise DimensionError(f"|C|={len(C)} does not match simplex dimension {s.dim}")
    cols = coloring.colors_of(s)
    if len(set(C)) != len(C) or set(cols) != set(C) or len(set(cols)) != len(cols):
        return 0
    pos = {c: i for i, c in enumerate(C)}
    return perm_sign([pos[c] for c in cols])


def color_set_sign(cols: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sorted color set of a bijectively colored simplex and chi of the sorted tuple on it."""
    key = tuple(sorted(cols))
    pos = {c: i for i, c in enumerate(key)}
    return key, perm_sign([pos[c] for c in cols])


def chi_cochain(C: Sequence[int], region: Skeleton, coloring: Coloring) -> Cochain:
    """chi(C) on the k-simplices of ``region``; cached per sorted color set."""
    C = tuple(C)
    key = tuple(sorted(C))
    if len(set(C)) != len(C):
        return Cochain()
    cache_key = (key, region)
    base = coloring._chi_cache.get(cache_key)
    if base is None:
        k = len(C) - 1
        vals = {}
        for s in simplices_of(region, k):
            cols = coloring.colors_of(s)
            if len(set(cols)) == len(cols) and tuple(sorted(cols)) == key:
                vals[s] = color_set_sign(cols)[1]
        base = Cochain(vals)
        coloring._chi_cache[cache_key] = base
    pos = {c: i for i, c in enumerate(key)}
    return perm_sign([pos[c] for c in C]) * base


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def neighbors(spec: GridSpec, v: Vertex, adjacency: str = SIMPLICIAL) -> Iterator[Vertex]:
    """Vertices sharing an (m+1)-simplex of T (or an (m+1)-cubical face) with ``v``."""
    steps = (-1, 0, 1)
    for off in product(steps, repeat=spec.d):
        moved = sum(1 for x in off if x)
        if not 1 <= moved <= spec.m + 1:
            continue
        if adjacency == SIMPLICIAL and len({x for x in off if x}) > 1:
            continue
        w = tuple(a + b for a, b in zip(v, off))
        if all(0 <= x <= spec.n for x in w):
            yield w


def component_labels(spec: GridSpec, coloring: Coloring, adjacency: str = SIMPLICIAL) -> list[int]:
    """Union-find root of each vertex (file order) over monochromatic adjacency."""
    verts = vertex_order(spec.d, spec.n)
    uf = UnionFind(len(verts))
    for i, v in enumerate(verts):
        for w in neighbors(spec, v, adjacency):
            if coloring[w] == coloring[v]:
                uf.union(i, vertex_index(w, spec.n))
    return [uf.find(i) for i in range(len(verts))]


def split_components(spec: GridSpec, coloring: Coloring, adjacency: str = SIMPLICIAL,
                     mode: Optional[str] = None) -> Coloring:
    """Give every monochromatic connected component its own color."""
    require_valid(spec, coloring, mode or adjacency)
    return Coloring(spec.d, spec.n, canonical_labels(component_labels(spec, coloring, adjacency)))


def largest_component(spec: GridSpec, coloring: Coloring, adjacency: str = SIMPLICIAL) -> int:
    return max(Counter(component_labels(spec, coloring, adjacency)).values())


def used_color_sets(spec: GridSpec, coloring: Coloring, k: int, region: Optional[Skeleton] = None) -> list:
    """Sorted (k+1)-color sets realized bijectively on some k-simplex of ``region``."""
    region = region or spec.triangulation
    found = set()
    for s in simplices_of(region, k):
        cols = coloring.colors_of(s)
        if len(set(cols)) == len(cols):
            found.add(tuple(sorted(cols)))
    return sorted(found)


def group_by_color_set(chain, coloring: Coloring) -> dict:
    """Sum of chi_D over a simplicial chain, for each sorted color set D it meets."""
    out: dict = defaultdict(int)
    for s, v in chain.items():
        cols = coloring.colors_of(s)
        if len(set(cols)) == len(cols):
            key, sign = color_set_sign(cols)
            out[key] += sign * v
    return out
