import itertools
import random

import pytest

from lgb.lattice import (
    Cone,
    ConicDecomposition,
    LatticeError,
    UnsupportedConeError,
    box_points,
    build_decomposition,
    cone_contains,
    cone_factorize,
    cone_from_halfspaces,
    fm_feasible,
    hilbert_basis,
    in_integer_span,
    integer_span_basis,
    is_standard_decomposition,
    rays_from_halfspaces,
    shifted_cone_intersection,
    smith_normal_form,
    validate_decomposition,
    vadd,
    vsub,
)


def test_standard_cone_counts():
    assert len(build_decomposition("standard", 2)) == 3
    assert len(build_decomposition("standard", 3)) == 4
    assert len(build_decomposition("orthant", 2)) == 4
    assert len(build_decomposition("orthant", 3)) == 8
    with pytest.raises(LatticeError):
        build_decomposition("standard", 0)


def test_standard_halfspaces_n2():
    d = build_decomposition("standard", 2)
    # x1 <= 0 and x1 <= x2
    assert set(d[1].halfspaces) == {(-1, 0), (-1, 1)}
    assert set(d[2].halfspaces) == {(0, -1), (1, -1)}


def test_standard_n1_degeneration():
    d = build_decomposition("standard", 1)
    assert len(d) == 2
    assert d[0].contains((3,)) and not d[0].contains((-1,))
    assert d[1].contains((-3,)) and not d[1].contains((1,))


def test_cone_contains_examples():
    d = build_decomposition("standard", 2)
    assert cone_contains(d[0], (1, 2))
    assert cone_contains(d[1], (-3, 1))
    assert not cone_contains(d[2], (0, 1))


def test_cone_factorize_examples():
    d = build_decomposition("standard", 2)
    assert cone_factorize(d[0], (2, -1)) == ((2, 0), (0, 1))
    assert cone_factorize(d[2], (0, 1)) == ((0, 0), (0, -1))
    assert cone_factorize(d[1], (0, 0)) == ((0, 0), (0, 0))


def test_cone_factorize_exhaustive_small():
    for n in (1, 2, 3):
        d = build_decomposition("standard", n)
        for cone in d:
            for s in box_points(n, 10 if n < 3 else 4):
                u, v = cone.factorize(s)
                assert cone.contains(u) and cone.contains(v)
                assert vsub(u, v) == s


def test_shifted_intersection_examples():
    d = build_decomposition("standard", 2)
    assert shifted_cone_intersection(d[0], (0, 2), (1, 0)) == (1, 2)
    assert shifted_cone_intersection(d[0], (1, 1), (1, 1)) == (1, 1)
    # derived by the module invariant below, not by the quoted figure
    assert shifted_cone_intersection(d[2], (1, 2), (-4, -3)) == (-4, -3)


def test_shifted_intersection_invariant():
    rng = random.Random(5)
    for n in (2, 3):
        d = build_decomposition("standard", n)
        for _ in range(40):
            cone = d.cones[rng.randrange(len(d.cones))]
            a = tuple(rng.randint(-4, 4) for _ in range(n))
            b = tuple(rng.randint(-4, 4) for _ in range(n))
            g = cone.shifted_intersection(a, b)
            assert cone.contains(vsub(g, a)) and cone.contains(vsub(g, b))
            for _ in range(200):
                x = tuple(rng.randint(-8, 8) for _ in range(n))
                lhs = cone.contains(vsub(x, a)) and cone.contains(vsub(x, b))
                assert lhs == cone.contains(vsub(x, g))


def test_factorize_requires_unimodular():
    # Hilbert basis of the cone spanned by (1,0) and (1,2): three generators
    cone = Cone(0, ((1, 0), (1, 1), (1, 2)), ((0, 1), (2, -1)))
    with pytest.raises(UnsupportedConeError):
        cone.factorize((1, 1))
    # inconsistent descriptions are rejected at construction
    with pytest.raises(LatticeError):
        Cone(0, ((2, 0), (0, 1)), ((1, 0), (0, 1)))


def test_smith_normal_form():
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    assert smith_normal_form([[2, 0], [0, 2]]) == [2, 2]
    assert smith_normal_form([[-1, -1], [0, 1]]) == [1, 1]
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_integer_span():
    basis = integer_span_basis([(2, 0), (0, 2), (1, 1)], 2)
    assert in_integer_span(basis, (1, 1))
    assert in_integer_span(basis, (3, 1))
    assert not in_integer_span(basis, (1, 0))


def test_fm_feasible():
    # x >= 1 and x <= 0 is infeasible
    assert not fm_feasible([((1,), -1, False), ((-1,), 0, False)], 1)
    assert fm_feasible([((1, 0), 0, True), ((0, 1), 0, True)], 2)
    # strict x > 0 with x < 1 feasible over Q
    assert fm_feasible([((1,), 0, True), ((-1,), 1, True)], 1)


def test_rays_and_hilbert_basis_2d():
    hs = ((-3, -2), (-1, 0), (-1, 1))
    rays = rays_from_halfspaces(hs, 2)
    assert set(rays) == {(-2, 3), (-1, -1)}
    hb = hilbert_basis(hs, 2)
    assert set(hb) == {(-1, -1), (-1, 0), (-1, 1), (-2, 3)}
    # every box point of the cone is a nonneg integer combination
    cone = cone_from_halfspaces(0, hs, 2)
    for p in box_points(2, 5):
        assert cone.contains(p) == cone.monoid_generates(p)


def test_hilbert_basis_3d_simplicial():
    hs = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert set(hilbert_basis(hs, 3)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_validate_standard_and_orthant():
    assert validate_decomposition(build_decomposition("standard", 2), 5).ok
    assert validate_decomposition(build_decomposition("orthant", 3), 4).ok


def test_validate_detects_missing_coverage():
    d2 = build_decomposition("orthant", 2)
    broken = ConicDecomposition(d2.cones[:3], "custom")
    report = validate_decomposition(broken, 3)
    assert not report.ok
    names = [c.name for c in report.failures()]
    assert "coverage" in names


def test_is_standard_decomposition():
    std = build_decomposition("standard", 2)
    assert is_standard_decomposition(std)
    clone = ConicDecomposition(std.cones, "custom")
    assert is_standard_decomposition(clone)
    assert not is_standard_decomposition(build_decomposition("orthant", 2))


def test_orthant_gray_code_order_n2():
    d = build_decomposition("orthant", 2)
    signs = [tuple(g[i][i] for i in range(2)) for g in (c.generators for c in d.cones)]
    assert signs == [(1, 1), (-1, 1), (-1, -1), (1, -1)]
