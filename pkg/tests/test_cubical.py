from itertools import product
from math import factorial

import pytest

from cubecolor.algebra import Chain, boundary, subdivide_L
from cubecolor.cubical import (
    Box,
    CubeFace,
    GridSpec,
    Simplex,
    Skeleton,
    boundary_cube,
    cofaces,
    face_count,
    faces_of,
    is_kuhn_simplex,
    simplices_of,
    triangulate,
    vertex_order,
)
from cubecolor.errors import DimensionError, MembershipError


def brute_faces(d, n, k):
    """Every (anchor, free) pair that fits in [0, n]^d, found without faces_of."""
    out = set()
    for anchor in product(range(n + 1), repeat=d):
        for mask in product((0, 1), repeat=d):
            free = tuple(i for i in range(d) if mask[i])
            if len(free) == k and all(anchor[i] <= n - 1 for i in free):
                out.add(CubeFace(anchor, free))
    return out


def test_unit_square_counts(square):
    assert len(faces_of(square, 0)) == 4
    assert len(faces_of(square, 1)) == 4
    assert len(faces_of(square, 2)) == 1


def test_cube_2_faces_count_matches_enumeration():
    faces = faces_of(Box.cube(3, 2), 2)
    assert len(faces) == 36 == face_count(3, 2, 2)
    assert set(faces) == brute_faces(3, 2, 2)


@pytest.mark.parametrize("d,n", [(1, 3), (2, 2), (3, 2), (4, 1)])
def test_face_count_formula(d, n):
    for k in range(d + 1):
        assert len(faces_of(Box.cube(d, n), k)) == face_count(d, n, k) == len(brute_faces(d, n, k))


def test_faces_of_order_is_free_then_anchor():
    faces = faces_of(Box.cube(2, 2), 1)
    assert faces == sorted(faces, key=lambda f: (f.free, f.anchor))


def test_faces_of_rejects_bad_dimension(square):
    with pytest.raises(DimensionError):
        faces_of(square, 3)


def test_edge_boundary():
    assert boundary_cube(CubeFace((0, 0), (0,))) == {CubeFace((1, 0), ()): 1, CubeFace((0, 0), ()): -1}


def test_square_boundary_sign_rule():
    got = boundary_cube(CubeFace((0, 0), (0, 1)))
    # position 0 (axis 0): +(x0=1) - (x0=0); position 1 (axis 1): -(x1=1) + (x1=0)
    assert got == {
        CubeFace((1, 0), (1,)): 1,
        CubeFace((0, 0), (1,)): -1,
        CubeFace((0, 1), (0,)): -1,
        CubeFace((0, 0), (0,)): 1,
    }


def test_vertex_has_no_boundary():
    with pytest.raises(DimensionError):
        boundary_cube(CubeFace((0, 0), ()))


def test_boundary_squared_vanishes_on_square():
    assert boundary(boundary(Chain({CubeFace((0, 0), (0, 1)): 1}))) == 0


def test_triangulation_sizes():
    tri = triangulate(CubeFace((0, 0), (0, 1)))
    assert len(tri) == 2 and sorted(sign for _, sign in tri) == [-1, 1]
    assert len(triangulate(CubeFace((0, 0, 0), (0, 1, 2)))) == 6


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_kuhn_simplices_tile_face(k):
    face = CubeFace((0,) * k, tuple(range(k)))
    tri = triangulate(face)
    assert len(tri) == factorial(k)
    assert len({s for s, _ in tri}) == factorial(k)
    for s, _ in tri:
        assert is_kuhn_simplex(s) and s.vertices[0] == face.anchor and s.vertices[-1] == (1,) * k
        steps = [tuple(b - a for a, b in zip(u, w)) for u, w in zip(s.vertices, s.vertices[1:])]
        assert all(sum(st) == 1 for st in steps)


def test_shared_edge_gets_same_simplex_from_both_squares():
    left = CubeFace((0, 0), (0, 1))
    right = CubeFace((1, 0), (0, 1))
    shared = {Simplex(((1, 0), (1, 1)))}

    def boundary_edges(face):
        out = set()
        for s, _ in triangulate(face):
            for i in range(3):
                e = Simplex(s.vertices[:i] + s.vertices[i + 1:])
                if all(v[0] == 1 for v in e.vertices):
                    out.add(e)
        return out

    assert boundary_edges(left) == boundary_edges(right) == shared


@pytest.mark.parametrize("k", [2, 3, 4])
def test_face_consistency(k):
    """Boundary simplices of triangulate(f) lying in a facet g are exactly triangulate(g)."""
    f = CubeFace((0,) * k, tuple(range(k)))
    bnd = boundary(subdivide_L(Chain({f: 1})))
    for g, sign in boundary_cube(f).items():
        pinned = [i for i in range(k) if i not in g.free]
        in_g = {s for s in bnd if all(v[i] == g.anchor[i] for v in s.vertices for i in pinned)}
        assert in_g == {s for s, _ in triangulate(g)}
        for s, o in triangulate(g):
            assert bnd[s] == sign * o


def test_L_on_vertex_and_edge():
    v = CubeFace((1, 0), ())
    assert subdivide_L(Chain({v: 1})) == Chain({Simplex(((1, 0),)): 1})
    e = CubeFace((0, 1), (0,))
    assert subdivide_L(Chain({e: 1})) == Chain({Simplex(((0, 1), (1, 1))): 1})


def test_L_commutes_with_boundary_on_square():
    sq = Chain({CubeFace((0, 0), (0, 1)): 1})
    assert boundary(subdivide_L(sq)) == subdivide_L(boundary(sq))
    assert len(subdivide_L(boundary(sq))) == 4


def test_cofaces_of_diagonal():
    sk = Skeleton(Box.cube(2, 1), 2)
    diag = Simplex(((0, 0), (1, 1)))
    assert cofaces(diag, sk) == sorted(s for s, _ in triangulate(CubeFace((0, 0), (0, 1))))


def test_cofaces_of_corners():
    sk = GridSpec(2, 1, 1).triangulation
    counts = {v: len(cofaces(Simplex((v,)), sk)) for v in Box.cube(2, 1).vertices()}
    # Kuhn diagonal joins (0,0) and (1,1) only
    assert counts == {(0, 0): 3, (1, 1): 3, (1, 0): 2, (0, 1): 2}


def test_cofaces_empty_and_membership():
    sk = Skeleton(Box.cube(2, 1), 1)
    assert cofaces(Simplex(((0, 0), (1, 0))), sk) == []
    with pytest.raises(MembershipError):
        cofaces(Simplex(((0, 0), (1, 1))), sk)


@pytest.mark.parametrize("d,n,top", [(2, 2, 2), (3, 1, 2), (3, 2, 3)])
def test_cofaces_agree_with_enumeration(d, n, top):
    sk = Skeleton(Box.cube(d, n), top)
    for k in range(top):
        upper = simplices_of(sk, k + 1)
        for s in simplices_of(sk, k):
            expected = sorted(t for t in upper if set(s.vertices) <= set(t.vertices))
            assert cofaces(s, sk) == expected


def test_big_face_flag():
    spec = GridSpec(4, 3, 2)
    flag = spec.flag()
    assert flag[2] == spec.cube
    for k in (2, 1):
        parent, child = flag[k], flag[k - 1]
        axis = spec.flag_axis(k)
        assert child == parent.pin(axis, 0)
        assert child.dim == parent.dim - 1 == spec.d - spec.m + k - 1
        assert axis == max(parent.free_axes)


def test_vertex_order_axis0_fastest():
    assert vertex_order(2, 1) == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_gridspec_rejects_bad_parameters():
    with pytest.raises(ValueError):
        GridSpec(2, 2, 2)
    with pytest.raises(ValueError):
        GridSpec(2, 0, 1)
