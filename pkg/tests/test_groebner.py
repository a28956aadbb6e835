import random

import pytest

from conftest import random_poly, ring_for
from lgb.cli import parse_poly
from lgb.coeffs import FieldSpec
from lgb.groebner import (
    GBConfig,
    ResourceLimitError,
    buchberger,
    ideal_membership,
    is_groebner,
    spair,
)
from lgb.laurent import RingError, u_intersection
from lgb.oracle import laurent_membership_oracle
from lgb.reduction import reduce


def test_spair_examples(q_ring2):
    f = parse_poly(q_ring2, "x + y")
    g = parse_poly(q_ring2, "x^2 + y")
    s = spair(0, f, g, (2, 0))
    assert s == parse_poly(q_ring2, "x*y - y")
    assert spair(0, f, f, (1, 0)).is_zero()
    assert spair(0, f, g, (2, 0)) == -spair(0, g, f, (2, 0))
    with pytest.raises(RingError):
        spair(0, f, g, (-5, 0))


def test_buchberger_singleton(q_ring2):
    f = parse_poly(q_ring2, "x^2*y^-1 + 3")
    res = buchberger([f])
    assert res.basis == [f]
    assert res.stats.pairs_processed == 0


def test_is_groebner_on_singleton_and_inputs(q_ring3):
    f = parse_poly(q_ring3, "x^-3*y^-4 + x*y*z")
    assert is_groebner([f])[0]
    g = parse_poly(q_ring3, "x^3*y^-2 + y^-1*z")
    flag, cert = is_groebner([f, g])
    assert not flag and cert is not None


def test_buchberger_first_quoted_ideal(q_ring3):
    gens = [
        parse_poly(q_ring3, "x^-3*y^-4 + x*y*z"),
        parse_poly(q_ring3, "x^3*y^-2 + y^-1*z"),
    ]
    res = buchberger(gens)
    assert len(res.basis) == 3
    new = res.basis[2]
    assert set(new.support()) == {(0, 4, 1), (-1, -2, -1)}
    assert is_groebner(res.basis)[0]
    for g in gens:
        assert reduce(g, res.basis).remainder.is_zero()


def test_provenance_recorded(q_ring2):
    gens = [parse_poly(q_ring2, "x + y"), parse_poly(q_ring2, "x^-1*y + y^-1")]
    res = buchberger(gens)
    assert res.combinations is not None
    for h, combo in zip(res.basis, res.combinations):
        acc = q_ring2.zero()
        for c, g in zip(combo, gens):
            acc = acc + c * g
        assert acc == h


def test_membership_examples(q_ring2):
    gens = [parse_poly(q_ring2, "x + y"), parse_poly(q_ring2, "x^-1*y + y^-1")]
    basis = buchberger(gens).basis
    assert ideal_membership(parse_poly(q_ring2, "y - x^2*y^-2"), basis)
    for g in gens:
        assert ideal_membership(g, basis, trusted=True)
    ring1 = ring_for(FieldSpec.rational(), 1, "degmin")
    xm1 = parse_poly(ring1, "x - 1")
    basis1 = buchberger([xm1]).basis
    assert not ideal_membership(ring1.one(), basis1)
    basis_x = buchberger([parse_poly(ring1, "x")]).basis
    assert ideal_membership(ring1.one(), basis_x)


def test_membership_requires_groebner(q_ring3):
    gens = [
        parse_poly(q_ring3, "x^-3*y^-4 + x*y*z"),
        parse_poly(q_ring3, "x^3*y^-2 + y^-1*z"),
    ]
    with pytest.raises(RingError):
        ideal_membership(q_ring3.one(), gens)


def test_criterion_closure_random():
    rng = random.Random(8080)
    rings = [
        ring_for(FieldSpec.rational(), 2, "degmin"),
        ring_for(FieldSpec.rational(), 2, "min"),
        ring_for(FieldSpec.finite(7), 2, "degmin"),
        ring_for(FieldSpec.finite(7), 2, "min"),
    ]
    count = 0
    for ring in rings:
        for _ in range(25):
            gens = [random_poly(ring, rng, terms=2, radius=2, bound=4) for _ in range(2)]
            res = buchberger(gens)
            assert is_groebner(res.basis)[0]
            for g in gens:
                assert reduce(g, res.basis).remainder.is_zero()
            count += 1
    assert count == 100


def test_oracle_agreement_random(q_ring2):
    rng = random.Random(6060)
    for _ in range(10):
        gens = [random_poly(q_ring2, rng, terms=2, radius=2, bound=4) for _ in range(2)]
        basis = buchberger(gens).basis
        for _ in range(2):
            probe = random_poly(q_ring2, rng, terms=2, radius=2, bound=4)
            mine = ideal_membership(probe, basis, trusted=True)
            assert mine == laurent_membership_oracle(probe, gens)


def test_basis_guard(q_ring2):
    gens = [parse_poly(q_ring2, "x^2*y + y^-1"), parse_poly(q_ring2, "x^-1*y + x")]
    with pytest.raises(ResourceLimitError):
        buchberger(gens, GBConfig(max_basis=1))


def test_normalize_flag(q_ring2):
    gens = [parse_poly(q_ring2, "2*x + 2*y"), parse_poly(q_ring2, "3*x^-1*y + 3*y^-1")]
    res = buchberger(gens, GBConfig(normalize=True))
    for h in res.basis:
        assert h.leading_data()[1] == q_ring2.field.one()


def test_gf9_stack_against_oracle():
    ring9 = ring_for(FieldSpec.finite(3, 2), 2, "degmin")
    rng = random.Random(909)
    for _ in range(4):
        gens = [random_poly(ring9, rng, terms=2, radius=2) for _ in range(2)]
        res = buchberger(gens)
        assert is_groebner(res.basis)[0]
        probe = random_poly(ring9, rng, terms=2, radius=2)
        assert ideal_membership(probe, res.basis, trusted=True) == laurent_membership_oracle(
            probe, gens, max_basis=400
        )


def test_orthant_decomposition_buchberger():
    # exercises the general collision-module path (no single generator)
    from lgb.gmo import GeneralizedOrder, ScoreFunction
    from lgb.lattice import build_decomposition
    from lgb.laurent import LaurentRing

    d = build_decomposition("orthant", 2)
    rows = {i: tuple(c.generators[k][k] for k in range(2)) for i, c in enumerate(d.cones)}
    order = GeneralizedOrder(d, ScoreFunction("custom", 2, rows=rows))
    ring = LaurentRing(FieldSpec.rational(), 2, order)
    rng = random.Random(77)
    for _ in range(4):
        gens = [random_poly(ring, rng, terms=2, radius=1, bound=3) for _ in range(2)]
        res = buchberger(gens)
        assert is_groebner(res.basis)[0]
        probe = random_poly(ring, rng, terms=2, radius=1, bound=3)
        assert ideal_membership(probe, res.basis, trusted=True) == laurent_membership_oracle(
            probe, gens
        )


def test_spair_bound_on_formed_pairs(q_ring2):
    rng = random.Random(99)
    order = q_ring2.order
    for _ in range(25):
        f = random_poly(q_ring2, rng, terms=2, radius=2)
        g = random_poly(q_ring2, rng, terms=2, radius=2)
        for i in range(3):
            for v in u_intersection(f, g, i):
                s = spair(i, f, g, v)
                if not s.is_zero():
                    assert order.compare(s.leading_data()[0], v) < 0
