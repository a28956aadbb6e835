"""Cone-aware multivariate division.

One loop serves both the Laurent polynomial ring (well-ordered term
comparison, exact termination) and the capped-series layer (valuation
first comparison, loop exits at the precision cap).  Reducer selection is
deterministic: scan cone labels in order, then the divisor list in order,
and take the first pair whose cone leading monomial cancels the current
leading term without introducing a larger one.
"""

from __future__ import annotations

from dataclasses import dataclass

from lgb.laurent import LaurentPoly, LaurentRing, Term
from lgb.lattice import vsub


class PolynomialMode:
    """Division strategy for plain Laurent polynomials under the ring order."""

    __slots__ = ("ring", "labels")

    def __init__(self, ring: LaurentRing):
        self.ring = ring
        self.labels = tuple(range(len(ring.order.decomposition.cones)))

    def leading(self, f: LaurentPoly) -> Term:
        _, _, lt = f.leading_data()
        return lt

    def cone_leading(self, g: LaurentPoly, label):
        lm, lc, _ = g.cone_leading_data(label)
        return lm, lc

    def shifted_lm(self, g: LaurentPoly, shift):
        return g.shifted_leading_monomial(shift)

    def past_cap(self, term: Term) -> bool:
        return False

    def on_fire(self, work, label, g, shift) -> None:
        pass


def division_loop(f: LaurentPoly, gens, mode):
    """Run the division; returns (quotient term dicts, remainder dict, tail).

    ``tail`` collects the part of the work polynomial discarded at the
    precision cap; it is always zero in polynomial mode.
    """
    ring = f.ring
    zero = ring.field.zero()
    quotients = [dict() for _ in gens]
    remainder = {}
    work = f
    tail = ring.zero()
    while not work.is_zero():
        lt = mode.leading(work)
        if mode.past_cap(lt):
            tail = work
            break
        fired = False
        for label in mode.labels:
            for k, g in enumerate(gens):
                lm_g, lc_g = mode.cone_leading(g, label)
                shift = vsub(lt.exp, lm_g)
                if mode.shifted_lm(g, shift) == lt.exp:
                    mode.on_fire(work, label, g, shift)
                    coef = lt.coef / lc_g
                    acc = quotients[k]
                    acc[shift] = acc.get(shift, zero) + coef
                    work = work - g.term_mul(shift, coef)
                    fired = True
                    break
            if fired:
                break
        if not fired:
            remainder[lt.exp] = remainder.get(lt.exp, zero) + lt.coef
            work = work - ring.monomial(lt.exp, lt.coef)
    return quotients, remainder, tail


@dataclass
class ReductionResult:
    quotients: list
    remainder: LaurentPoly

    def __iter__(self):
        return iter((self.quotients, self.remainder))


def reduce(f: LaurentPoly, gens) -> ReductionResult:
    """Divide f by an ordered list of nonzero Laurent polynomials.

    Returns quotients and a remainder with ``f = sum(q*g) + r`` (re-verified
    exactly) and no remainder term divisible inside any cone module of the
    divisors.
    """
    ring = f.ring
    for g in gens:
        f._check(g)
        if g.is_zero():
            raise ValueError("divisors must be nonzero")
    mode = PolynomialMode(ring)
    qdicts, rdict, tail = division_loop(f, gens, mode)
    assert tail.is_zero()
    quotients = [LaurentPoly(ring, q) for q in qdicts]
    remainder = LaurentPoly(ring, rdict)
    check = remainder
    for q, g in zip(quotients, gens):
        check = check + q * g
    if check != f:
        raise ArithmeticError("division identity failed to re-verify")
    return ReductionResult(quotients, remainder)
