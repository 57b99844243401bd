"""Lattice cube, its cubical faces, big-face flags and the Kuhn triangulation.

Axes are 0-based in the Python API. A cubical face is an ``anchor`` vertex
plus the sorted tuple of ``free`` axes along which it extends by one unit.
A simplex of the Kuhn triangulation is stored as its vertex chain in
increasing product order; orientation is carried by chain coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb
from typing import Iterator, NamedTuple, Sequence

from .errors import DimensionError, MembershipError

Vertex = tuple[int, ...]


class CubeFace(NamedTuple):
    anchor: Vertex
    free: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.free)

    def vertices(self) -> list[Vertex]:
        out = []
        for bits in product((0, 1), repeat=len(self.free)):
            v = list(self.anchor)
            for axis, b in zip(self.free, bits):
                v[axis] += b
            out.append(tuple(v))
        return sorted(out)


class Simplex(NamedTuple):
    vertices: tuple[Vertex, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class Box(NamedTuple):
    """Axis-aligned region ``prod [lo_i, hi_i]``; an axis with lo == hi is pinned."""

    bounds: tuple[tuple[int, int], ...]

    @classmethod
    def cube(cls, d: int, n: int) -> "Box":
        return cls(tuple((0, n) for _ in range(d)))

    @property
    def d(self) -> int:
        return len(self.bounds)

    @property
    def free_axes(self) -> tuple[int, ...]:
        return tuple(i for i, (lo, hi) in enumerate(self.bounds) if lo < hi)

    @property
    def dim(self) -> int:
        return len(self.free_axes)

    @property
    def side(self) -> int:
        return max((hi - lo for lo, hi in self.bounds), default=0)

    def pin(self, axis: int, level: int) -> "Box":
        b = list(self.bounds)
        b[axis] = (level, level)
        return Box(tuple(b))

    def contains_vertex(self, v: Sequence[int]) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(v, self.bounds))

    def contains_face(self, f: CubeFace) -> bool:
        free = set(f.free)
        for i, (lo, hi) in enumerate(self.bounds):
            a = f.anchor[i]
            if i in free:
                if not lo <= a <= hi - 1:
                    return False
            elif not lo <= a <= hi:
                return False
        return True

    def vertices(self) -> Iterator[Vertex]:
        return product(*(range(lo, hi + 1) for lo, hi in self.bounds))


class Skeleton(NamedTuple):
    """Kuhn-triangulated ``top``-skeleton of the cubical partition of ``box``."""

    box: Box
    top: int

    def contains(self, s: Simplex) -> bool:
        if not all(self.box.contains_vertex(v) for v in s.vertices):
            return False
        return len(carrier(s).free) <= self.top


@dataclass(frozen=True)
class GridSpec:
    d: int
    n: int
    m: int

    def __post_init__(self):
        if self.d < 1 or self.n < 1 or not 0 <= self.m <= self.d - 1:
            raise ValueError(f"need d >= 1, n >= 1, 0 <= m <= d-1; got {self}")

    @property
    def cube(self) -> Box:
        return Box.cube(self.d, self.n)

    @property
    def triangulation(self) -> Skeleton:
        return Skeleton(self.cube, self.m + 1)

    def big_face(self, k: int) -> Box:
        """The big face F_k of dimension d - m + k from the canonical flag."""
        if not 0 <= k <= self.m:
            raise DimensionError(f"level {k} outside 0..{self.m}")
        box = self.cube
        for axis in range(self.d - self.m + k, self.d):
            box = box.pin(axis, 0)
        return box

    def flag(self) -> "BigFaceFlag":
        return BigFaceFlag({k: self.big_face(k) for k in range(self.m, -1, -1)})

    def flag_axis(self, k: int) -> int:
        """Axis pinned to 0 when passing from F_k to F_{k-1}."""
        return self.d - self.m + k - 1

    def to_dict(self) -> dict:
        return {"d": self.d, "n": self.n, "m": self.m}


@dataclass(frozen=True)
class BigFaceFlag:
    levels: dict

    def __getitem__(self, k: int) -> Box:
        return self.levels[k]


def face_count(d: int, n: int, k: int) -> int:
    return comb(d, k) * n**k * (n + 1) ** (d - k)


def faces_of(region: Box, k: int) -> list[CubeFace]:
    """All k-faces of the unit partition of ``region``, ordered by (free, anchor)."""
    if not 0 <= k <= region.dim:
        raise DimensionError(f"k={k} outside 0..{region.dim}")
    return list(_faces_of(region, k))


@lru_cache(maxsize=512)
def _faces_of(region: Box, k: int) -> tuple[CubeFace, ...]:
    out = []
    for free in combinations(region.free_axes, k):
        ranges = []
        for i, (lo, hi) in enumerate(region.bounds):
            ranges.append(range(lo, hi) if i in free else range(lo, hi + 1))
        out.extend(CubeFace(a, free) for a in product(*ranges))
    return tuple(out)


def _shift(v: Vertex, axis: int, delta: int) -> Vertex:
    w = list(v)
    w[axis] += delta
    return tuple(w)


def boundary_cube(face: CubeFace) -> dict[CubeFace, int]:
    """Signed facets: sum over free axes at position i of (-1)^i (top - bottom)."""
    if face.dim == 0:
        raise DimensionError("a vertex has no boundary")
    out: dict[CubeFace, int] = {}
    for i, axis in enumerate(face.free):
        rest = face.free[:i] + face.free[i + 1:]
        sign = -1 if i % 2 else 1
        out[CubeFace(_shift(face.anchor, axis, 1), rest)] = sign
        out[CubeFace(face.anchor, rest)] = -sign
    return out


def cube_cofaces(face: CubeFace, region: Box) -> Iterator[tuple[CubeFace, int]]:
    """(k+1)-faces of ``region`` having ``face`` in their boundary, with incidence."""
    for axis in region.free_axes:
        if axis in face.free:
            continue
        lo, hi = region.bounds[axis]
        free = tuple(sorted(face.free + (axis,)))
        sign = -1 if free.index(axis) % 2 else 1
        a = face.anchor[axis]
        if a < hi:
            yield CubeFace(face.anchor, free), -sign
        if a - 1 >= lo:
            yield CubeFace(_shift(face.anchor, axis, -1), free), sign


def perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def triangulate(face: CubeFace) -> list[tuple[Simplex, int]]:
    """The dim! Kuhn simplices of ``face`` with their orientation signs."""
    out = []
    for perm in permutations(face.free):
        path = [face.anchor]
        for axis in perm:
            path.append(_shift(path[-1], axis, 1))
        out.append((Simplex(tuple(path)), perm_sign(perm)))
    return out


def carrier(s: Simplex) -> CubeFace:
    """Smallest cubical face containing ``s``."""
    lo, hi = s.vertices[0], s.vertices[-1]
    return CubeFace(lo, tuple(i for i in range(len(lo)) if hi[i] != lo[i]))


def is_kuhn_simplex(s: Simplex) -> bool:
    """Vertices form a strictly increasing chain inside one unit cube."""
    vs = s.vertices
    if not vs:
        return False
    for a, b in zip(vs, vs[1:]):
        diff = [y - x for x, y in zip(a, b)]
        if any(x not in (0, 1) for x in diff) or not any(diff):
            return False
    return all(y - x in (0, 1) for x, y in zip(vs[0], vs[-1]))


def _ordered_partitions(axes: tuple[int, ...], k: int) -> Iterator[list[tuple[int, ...]]]:
    for labels in product(range(k), repeat=len(axes)):
        if len(set(labels)) != k:
            continue
        yield [tuple(a for a, lab in zip(axes, labels) if lab == b) for b in range(k)]


def simplices_with_carrier(face: CubeFace, k: int) -> list[Simplex]:
    """k-simplices of the Kuhn triangulation whose carrier is exactly ``face``."""
    if k == 0:
        return [Simplex((face.anchor,))] if face.dim == 0 else []
    out = []
    for blocks in _ordered_partitions(face.free, k):
        path = [face.anchor]
        for block in blocks:
            v = list(path[-1])
            for axis in block:
                v[axis] += 1
            path.append(tuple(v))
        out.append(Simplex(tuple(path)))
    return sorted(out)


def simplices_of(skeleton: Skeleton, k: int) -> list[Simplex]:
    """Every k-simplex of the triangulated skeleton, sorted."""
    return list(_simplices_of(skeleton, k))


@lru_cache(maxsize=512)
def _simplices_of(skeleton: Skeleton, k: int) -> tuple[Simplex, ...]:
    top = min(skeleton.top, skeleton.box.dim)
    if not 0 <= k <= top:
        return ()
    out = []
    for j in range(k, top + 1):
        for f in faces_of(skeleton.box, j):
            out.extend(simplices_with_carrier(f, k))
    return tuple(sorted(out))


def boundary_simplex(s: Simplex) -> dict[Simplex, int]:
    if s.dim == 0:
        raise DimensionError("a vertex has no boundary")
    vs = s.vertices
    return {Simplex(vs[:i] + vs[i + 1:]): (-1 if i % 2 else 1) for i in range(len(vs))}


def _subsets(axes: Sequence[int], max_size: int) -> Iterator[tuple[int, ...]]:
    for r in range(1, max_size + 1):
        yield from combinations(axes, r)


def simplex_cofaces(s: Simplex, skeleton: Skeleton) -> Iterator[tuple[Simplex, int]]:
    """(k+1)-simplices of ``skeleton`` containing ``s``, with boundary incidence."""
    vs = s.vertices
    d = len(vs[0])
    support = carrier(s).free
    room = skeleton.top - len(support)
    outside = [i for i in range(d) if i not in support]
    box = skeleton.box
    k = s.dim
    for sub in _subsets(outside, room):
        below = list(vs[0])
        above = list(vs[-1])
        for i in sub:
            below[i] -= 1
            above[i] += 1
        below, above = tuple(below), tuple(above)
        if box.contains_vertex(below):
            yield Simplex((below,) + vs), 1
        if box.contains_vertex(above):
            yield Simplex(vs + (above,)), (-1 if (k + 1) % 2 else 1)
    for i in range(k):
        step = [a for a in range(d) if vs[i + 1][a] != vs[i][a]]
        for r in range(1, len(step)):
            for part in combinations(step, r):
                mid = list(vs[i])
                for a in part:
                    mid[a] += 1
                yield Simplex(vs[: i + 1] + (tuple(mid),) + vs[i + 1:]), (-1 if (i + 1) % 2 else 1)


def cofaces(s: Simplex, ambient: Skeleton) -> list[Simplex]:
    if not ambient.contains(s):
        raise MembershipError(f"{s} is not in the ambient skeleton")
    return sorted(c for c, _ in simplex_cofaces(s, ambient))


def max_coface_count(skeleton: Skeleton, k: int) -> int:
    """Largest number of (k+1)-simplices sharing one k-simplex."""
    return max((len(cofaces(s, skeleton)) for s in simplices_of(skeleton, k)), default=0)


def vertex_order(d: int, n: int) -> list[Vertex]:
    """Vertices of [0, n]^d in file order: axis 0 varies fastest."""
    return [tuple(reversed(v)) for v in product(range(n + 1), repeat=d)]


def vertex_index(v: Sequence[int], n: int) -> int:
    return sum(x * (n + 1) ** i for i, x in enumerate(v))
