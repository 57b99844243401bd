from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from cubecolor.algebra import Cochain, coboundary
from cubecolor.coloring import (
    CUBICAL,
    SIMPLICIAL,
    Coloring,
    canonical_labels,
    checkerboard,
    chi_cochain,
    chi_value,
    largest_component,
    split_components,
    validate,
)
from cubecolor.cubical import Box, CubeFace, GridSpec, Simplex, Skeleton, simplices_of
from cubecolor.errors import DimensionError, ValidationError
from cubecolor.oracle import largest_component_bfs, random_valid

A, B = 0, 1


def edge_colored(a, b):
    return Coloring(1, 1, [a, b]), Simplex(((0,), (1,)))


def test_chi_value_orientation():
    col, e = edge_colored(A, B)
    assert chi_value((A, B), e, col) == 1
    col, e = edge_colored(B, A)
    assert chi_value((A, B), e, col) == -1
    col, e = edge_colored(A, A)
    assert chi_value((A, B), e, col) == 0


def test_chi_value_size_mismatch():
    col, e = edge_colored(A, B)
    with pytest.raises(DimensionError):
        chi_value((A,), e, col)


@given(st.lists(st.integers(0, 3), min_size=3, max_size=3), st.permutations([0, 1, 2]))
def test_chi_value_alternating(cols, order):
    col = Coloring(2, 1, [cols[0], cols[1], 7, cols[2]])
    tri = Simplex(((0, 0), (1, 0), (1, 1)))
    C = tuple(order)
    swapped = (C[1], C[0], C[2])
    assert chi_value(swapped, tri, col) == -chi_value(C, tri, col)


def test_validate_constant_ok():
    spec = GridSpec(2, 2, 1)
    col = Coloring.constant(2, 2)
    assert validate(spec, col, SIMPLICIAL) is None
    assert validate(spec, col, CUBICAL) is None


def test_rainbow_square_violates_cubical():
    spec = GridSpec(2, 1, 1)
    col = Coloring(2, 1, [0, 1, 2, 3])
    assert validate(spec, col, CUBICAL) == CubeFace((0, 0), (0, 1))
    assert validate(spec, col, SIMPLICIAL) is not None


def test_diagonal_two_coloring_ok():
    spec = GridSpec(2, 1, 1)
    col = Coloring(2, 1, [A, B, B, A])
    # both Kuhn triangles contain the diagonal (0,0)-(1,1), colored a-a
    assert validate(spec, col, SIMPLICIAL) is None
    assert validate(spec, col, CUBICAL) is None


def test_simplicial_allows_what_cubical_forbids():
    # anti-diagonal corners differ: each Kuhn triangle sees 2 colors, the square sees 3
    spec = GridSpec(2, 1, 1)
    col = Coloring(2, 1, [0, 1, 2, 0])
    assert validate(spec, col, SIMPLICIAL) is None
    assert validate(spec, col, CUBICAL) is not None


@pytest.mark.parametrize("seed", range(30))
def test_cubical_valid_implies_simplicial_valid(seed):
    spec = GridSpec(3, 2, 1)
    col = random_valid(spec, seed, CUBICAL)
    assert validate(spec, col, CUBICAL) is None
    assert validate(spec, col, SIMPLICIAL) is None


def test_chi_cochain_constant_is_zero():
    spec = GridSpec(2, 2, 1)
    assert chi_cochain((0, 1), spec.triangulation, Coloring.constant(2, 2)) == 0


def test_chi_cochain_single_bichromatic_edge():
    col = Coloring(1, 2, [0, 0, 1])
    chi = chi_cochain((0, 1), Skeleton(Box.cube(1, 2), 1), col)
    assert chi == Cochain({Simplex(((1,), (2,))): 1})
    assert chi_cochain((1, 0), Skeleton(Box.cube(1, 2), 1), col) == -chi


def eq1_sides(spec, col, C):
    """delta chi(C) and the sum of chi over C extended by one color.

    With boundary sum_i (-1)^i d_i the new color goes in front: appending it
    instead costs the global sign (-1)^(k+1).
    """
    region = spec.triangulation
    lhs = coboundary(chi_cochain(C, region, col), region)
    rhs = Cochain()
    for c in col.palette:
        if c not in C:
            rhs = rhs + chi_cochain((c,) + C, region, col)
    return lhs, rhs


def test_appended_color_differs_by_global_sign():
    col = Coloring(1, 1, [A, B])
    region = Skeleton(Box.cube(1, 1), 1)
    lhs = coboundary(chi_cochain((A,), region, col), region)
    assert lhs == -chi_cochain((A, B), region, col) == chi_cochain((B, A), region, col)


@pytest.mark.parametrize("seed", range(10))
def test_coboundary_formula_on_edges(seed):
    spec = GridSpec(2, 2, 1)
    col = random_valid(spec, seed)
    for c in col.palette:
        lhs, rhs = eq1_sides(spec, col, (c,))
        assert lhs == rhs
        # oracle: chi_(c)(boundary t) against sum of chi_(c, c') (t), one triangle at a time
        for t in simplices_of(spec.triangulation, 1):
            v0, v1 = t.vertices
            assert lhs.get(t, 0) == chi_value((c,), Simplex((v1,)), col) - chi_value((c,), Simplex((v0,)), col)


def test_top_color_tuples_are_cocycles():
    spec = GridSpec(2, 3, 1)
    for seed in range(10):
        col = random_valid(spec, seed)
        for C in permutations(col.palette, 2):
            assert coboundary(chi_cochain(C, spec.triangulation, col), spec.triangulation) == 0


def test_split_components_constant():
    spec = GridSpec(2, 2, 1)
    out = split_components(spec, Coloring.constant(2, 2, 5))
    assert out == Coloring.constant(2, 2, 0)


def test_split_components_separates_corners():
    spec = GridSpec(2, 4, 1)
    col = Coloring.from_function(2, 4, lambda v: 1 if v in ((0, 0), (4, 4)) else 0)
    assert validate(spec, col) is None
    out = split_components(spec, col)
    assert out[(0, 0)] != out[(4, 4)]
    assert out[(0, 0)] != out[(2, 2)] and out[(4, 4)] != out[(2, 2)]


def test_split_components_rejects_invalid():
    with pytest.raises(ValidationError):
        split_components(GridSpec(2, 1, 1), Coloring(2, 1, [0, 1, 2, 3]), CUBICAL)


@pytest.mark.parametrize("adjacency", [SIMPLICIAL, CUBICAL])
@pytest.mark.parametrize("seed", range(15))
def test_split_components_max_usage_is_largest_component(seed, adjacency):
    spec = GridSpec(2, 3, 1)
    col = random_valid(spec, seed, CUBICAL)
    out = split_components(spec, col, adjacency, mode=CUBICAL)
    assert validate(spec, out, adjacency) is None
    assert out.max_usage() == largest_component(spec, col, adjacency) == largest_component_bfs(spec, col, adjacency)


def test_checkerboard_components_differ_by_adjacency():
    spec = GridSpec(2, 2, 1)
    col = checkerboard(2, 2)
    # Kuhn diagonals only run along (1,1): even cells link up along it, odd ones do not
    assert largest_component(spec, col, SIMPLICIAL) == largest_component_bfs(spec, col, SIMPLICIAL) == 3
    assert largest_component(spec, col, CUBICAL) == largest_component_bfs(spec, col, CUBICAL) == 5


@given(st.lists(st.integers(0, 9), min_size=1, max_size=12))
def test_canonical_labels_idempotent(values):
    once = canonical_labels(values)
    assert canonical_labels(once) == once
    assert len(set(once)) == len(set(values))
