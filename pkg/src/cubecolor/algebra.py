"""Sparse exact-integer chains and cochains on cubical and simplicial cells.

Chains and cochains share one representation: a mapping from cell to a
nonzero ``int``. Python integers are unbounded, so no coefficient can
overflow.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Mapping, Union

from .cubical import (
    Box,
    CubeFace,
    Simplex,
    Skeleton,
    boundary_cube,
    boundary_simplex,
    cube_cofaces,
    simplex_cofaces,
    triangulate,
)
from .errors import DimensionError, MembershipError

Cell = Union[CubeFace, Simplex]
Region = Union[Box, Skeleton]


class Chain(Mapping):
    """Finitely supported integer combination of cells of one dimension."""

    __slots__ = ("_c",)

    def __init__(self, items: Union[Mapping, Iterable, None] = None):
        acc: dict = defaultdict(int)
        if items is not None:
            pairs = items.items() if hasattr(items, "items") else items
            for cell, coeff in pairs:
                acc[cell] += coeff
        nonzero = {cell: c for cell, c in acc.items() if c}
        if len(nonzero) > 1 and len({(type(cell), cell.dim) for cell in nonzero}) > 1:
            raise DimensionError("cells of a chain must share dimension and kind")
        self._c = dict(sorted(nonzero.items()))

    def __getitem__(self, cell):
        return self._c.get(cell, 0)

    def __iter__(self) -> Iterator:
        return iter(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __contains__(self, cell) -> bool:
        return cell in self._c

    def __eq__(self, other) -> bool:
        if isinstance(other, Chain):
            return self._c == other._c
        if other == 0:
            return not self._c
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._c!r})"

    def __add__(self, other: "Chain") -> "Chain":
        return type(self)(list(self._c.items()) + list(other.items()))

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __neg__(self) -> "Chain":
        return type(self)({c: -v for c, v in self._c.items()})

    def __mul__(self, k: int) -> "Chain":
        return type(self)({c: k * v for c, v in self._c.items()})

    __rmul__ = __mul__

    @property
    def dim(self):
        for cell in self._c:
            return cell.dim
        return None

    @property
    def kind(self):
        for cell in self._c:
            return type(cell)
        return None

    def items(self):
        return self._c.items()

    def support(self) -> list:
        return list(self._c)

    def coefficient_sum(self) -> int:
        return sum(self._c.values())


class Cochain(Chain):
    """Integer functional on cells, evaluated against chains by ``pair``."""

    __slots__ = ()


def norm(f: Chain) -> int:
    return sum(abs(v) for v in f.values())


def _check_compatible(a: Chain, b: Chain):
    if a.dim is not None and b.dim is not None:
        if a.dim != b.dim or a.kind is not b.kind:
            raise DimensionError(f"cannot pair dim {a.dim} {a.kind} with dim {b.dim} {b.kind}")


def pair(f: Chain, c: Chain) -> int:
    _check_compatible(f, c)
    if len(f) > len(c):
        f, c = c, f
    return sum(v * c[cell] for cell, v in f.items())


def cell_boundary(cell: Cell) -> dict:
    if isinstance(cell, CubeFace):
        return boundary_cube(cell)
    return boundary_simplex(cell)


def boundary(c: Chain) -> Chain:
    out: dict = defaultdict(int)
    for cell, v in c.items():
        for face, s in cell_boundary(cell).items():
            out[face] += s * v
    return type(c)(out)


def _cell_cofaces(cell: Cell, region: Region):
    if isinstance(cell, CubeFace):
        if not isinstance(region, Box) or not region.contains_face(cell):
            raise MembershipError(f"{cell} lies outside {region}")
        return cube_cofaces(cell, region)
    if not isinstance(region, Skeleton) or not region.contains(cell):
        raise MembershipError(f"{cell} lies outside {region}")
    return simplex_cofaces(cell, region)


def coboundary(f: Chain, region: Region) -> Cochain:
    """(delta f)(tau) = f(boundary tau) for every (k+1)-cell tau of ``region``."""
    out: dict = defaultdict(int)
    for cell, v in f.items():
        for co, s in _cell_cofaces(cell, region):
            out[co] += s * v
    return Cochain(out)


def restrict(f: Chain, sub: Region) -> Chain:
    if isinstance(sub, Box):
        keep = sub.contains_face
    else:
        keep = sub.contains
    return type(f)({c: v for c, v in f.items() if keep(c)})


def on_hyperplane(f: Chain, axis: int, level: int) -> Chain:
    """Cells of ``f`` lying in x_axis = level (axis not free)."""
    return type(f)({c: v for c, v in f.items() if axis not in c.free and c.anchor[axis] == level})


def axis_sign(free: tuple[int, ...], axis: int) -> int:
    """(-1)^(position of ``axis`` in the sorted free list obtained by inserting it)."""
    pos = sum(1 for a in free if a < axis)
    return -1 if pos % 2 else 1


def _with_level(v: tuple[int, ...], axis: int, level: int) -> tuple[int, ...]:
    w = list(v)
    w[axis] = level
    return tuple(w)


def direct_image(f: Chain, axis: int, level: int) -> Cochain:
    """Push ``f`` forward along ``axis`` onto the hyperplane x_axis = level.

    Each preimage k-face contributes its value times (-1)^p, p being the
    position of ``axis`` in its free list.
    """
    out: dict = defaultdict(int)
    for g, v in f.items():
        if axis not in g.free:
            raise DimensionError(f"axis {axis} is not free in {g}")
        rest = tuple(a for a in g.free if a != axis)
        sigma = CubeFace(_with_level(g.anchor, axis, level), rest)
        out[sigma] += axis_sign(rest, axis) * v
    return Cochain(out)


def prism_chain(tau: CubeFace, axis: int, start: int, stop: int) -> Chain:
    """Signed prism swept by ``tau`` (moved to level ``start``) up to level ``stop``.

    Satisfies boundary(P tau) + P(boundary tau) = tau@stop - tau@start.
    """
    if axis in tau.free:
        raise DimensionError(f"axis {axis} is free in {tau}")
    free = tuple(sorted(tau.free + (axis,)))
    sign = axis_sign(tau.free, axis)
    lo, hi = min(start, stop), max(start, stop)
    if stop < start:
        sign = -sign
    return Chain({CubeFace(_with_level(tau.anchor, axis, s), free): sign for s in range(lo, hi)})


def prism_eval(alpha: Chain, tau: CubeFace, axis: int, level: int) -> int:
    """alpha on the prism between ``level`` and ``tau``, oriented towards ``tau``."""
    if axis in tau.free:
        raise DimensionError(f"axis {axis} is free in {tau}")
    a = tau.anchor[axis]
    if a == level:
        return 0
    free = tuple(sorted(tau.free + (axis,)))
    sign = axis_sign(tau.free, axis)
    if a < level:
        sign = -sign
    total = 0
    for s in range(min(a, level), max(a, level)):
        total += alpha[CubeFace(_with_level(tau.anchor, axis, s), free)]
    return sign * total


def translate(f: Chain, axis: int, level: int) -> Chain:
    """Move every cell of ``f`` to x_axis = level (cells must not have ``axis`` free)."""
    out: dict = defaultdict(int)
    for c, v in f.items():
        if axis in c.free:
            raise DimensionError(f"axis {axis} is free in {c}")
        out[CubeFace(_with_level(c.anchor, axis, level), c.free)] += v
    return type(f)(out)


def subdivide_L(c: Chain) -> Chain:
    """Replace each cubical face by the signed sum of its Kuhn simplices."""
    out: dict = defaultdict(int)
    for face, v in c.items():
        for s, sign in triangulate(face):
            out[s] += sign * v
    return Chain(out)


def indicator(cell: Cell, coeff: int = 1, cls=Cochain) -> Chain:
    return cls({cell: coeff})
