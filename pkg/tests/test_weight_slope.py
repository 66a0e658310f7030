from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_asai.asai_transfer import TransferSign, transfer_eigenpacket
from padic_asai.errors import InvalidWeight, UndeclaredValuation
from padic_asai.exact_algebra import PolyRing
from padic_asai.fileformat import parse_packet
from padic_asai.hilbert_eigensystem import HilbertEigenPacket, HilbertWeight, RefinementData, Regime
from padic_asai.quadratic_field import QuadField
from padic_asai.weight_slope import (
    GL4Weight,
    SlopeContext,
    classical_weight_membership,
    classical_weights,
    classicality_check,
    classicality_threshold,
    mu_for_pair,
    purity_dominance_check,
    slope_bound,
    small_slope_closed_form,
    star_defect_exponent,
    star_eigenvalue,
    star_exponent,
    transposition_cost,
    unit_condition,
    weight_map_j,
    weyl_slope_bound_bruteforce,
)

FIXTURES = Path(__file__).parent / "fixtures"
SPLIT, INERT = Regime.SPLIT, Regime.INERT


def valid_weights(max_n=12, vs=range(-3, 4)):
    for n1 in range(max_n + 1):
        for n2 in range(n1 + 1):
            if (n1 - n2) % 2:
                continue
            for v1 in vs:
                yield HilbertWeight(n1, n2, v1, v1 + (n1 - n2) // 2)


def test_weight_map_examples():
    assert weight_map_j(HilbertWeight(3, 1, 0, 1)) == GL4Weight(4, 3, 2, 1, w=5)
    assert weight_map_j(HilbertWeight(2, 0, 0, 1)).mu == (2, 2, 1, 1)
    with pytest.raises(InvalidWeight):
        weight_map_j(HilbertWeight(3, 2, 0, 0))


def test_purity_examples():
    assert purity_dominance_check(GL4Weight(4, 3, 2, 1))
    impure = purity_dominance_check(GL4Weight(4, 2, 2, 1, w=5))
    assert not impure.pure and impure.dominant
    reversed_ = purity_dominance_check(GL4Weight(1, 2, 3, 4))
    assert reversed_.pure and not reversed_.dominant


def test_image_weights_are_pure_and_dominant_for_n1_above_n2():
    for kappa in valid_weights():
        mu = weight_map_j(kappa)
        report = purity_dominance_check(mu)
        assert report.pure
        assert mu.w == 2 * kappa.m - 1
        # equal n leaves mu2 - mu3 = -1, so dominance needs n1 > n2
        assert report.dominant == (kappa.n1 > kappa.n2)


@pytest.mark.parametrize(
    "pair, regime, h",
    [((3, 1), SPLIT, 2), ((5, 2), INERT, 3), ((5, 2), SPLIT, 3), ((2, 0), INERT, 1)],
)
def test_slope_examples(pair, regime, h):
    assert weyl_slope_bound_bruteforce(mu_for_pair(*pair), SlopeContext(regime)) == h
    assert small_slope_closed_form(pair, regime) == h


def test_slope_bound_accepts_hilbert_weights():
    assert slope_bound(HilbertWeight(3, 1, 0, 1), SPLIT) == 2
    with pytest.raises(InvalidWeight):
        weyl_slope_bound_bruteforce((1, 2, 3, 4), SlopeContext(SPLIT))
    with pytest.raises(InvalidWeight):
        small_slope_closed_form((2, 2), SPLIT)


def test_minimum_is_attained_at_a_simple_reflection():
    for n1 in range(1, 15):
        for n2 in range(n1):
            mu = mu_for_pair(n1, n2)
            for regime in Regime:
                ctx = SlopeContext(regime)
                simple = min(transposition_cost(mu, ctx, i, i + 1) for i in (1, 2, 3))
                assert weyl_slope_bound_bruteforce(mu, ctx) == simple


@given(st.integers(0, 30), st.integers(0, 30), st.integers(-10, 10))
def test_bound_independent_of_central_shift(n2, gap, v):
    n1 = n2 + gap + 1
    base = mu_for_pair(n1, n2).mu
    shifted = tuple(x + v for x in base)
    for regime in Regime:
        ctx = SlopeContext(regime)
        assert weyl_slope_bound_bruteforce(shifted, ctx) == weyl_slope_bound_bruteforce(base, ctx)


def test_bruteforce_is_exhaustive():
    # 23 nontrivial permutations, each with a finite cost
    ctx = SlopeContext(INERT)
    mu = mu_for_pair(7, 3).mu
    lam = [x + r for x, r in zip(mu, ctx.rho)]
    costs = [
        sum(c * lam[p[i]] for i, c in enumerate(ctx.c)) - sum(c * x for c, x in zip(ctx.c, lam))
        for p in permutations(range(4))
        if p != (0, 1, 2, 3)
    ]
    assert len(costs) == 23
    assert min(costs) == weyl_slope_bound_bruteforce(mu, ctx)


def packet(regime, weight, alpha, alpha_c=None, valuations=None, ring=None):
    field = QuadField(5)
    p = 11 if regime is SPLIT else 7
    ref = RefinementData(regime, alpha, alpha_c, valuations or {})
    return HilbertEigenPacket(field, weight, p, {}, ref, ring)


def test_classicality_examples():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    split = classicality_check(packet(SPLIT, HilbertWeight(3, 1, 0, 1), x, y, {"x": Fraction(1, 4), "y": 0}, R))
    assert split.valuation == 1 and split.threshold == 2 and split.classical
    inert = classicality_check(packet(INERT, HilbertWeight(5, 1, -1, 1), 7))
    assert inert.threshold == Fraction(1, 2) and not inert
    assert classicality_threshold((5, 2), INERT) == Fraction(3, 4)
    assert not classicality_check(packet(INERT, HilbertWeight(4, 2, 0, 1), x, valuations={"x": Fraction(3, 4)}, ring=R))
    at_boundary = classicality_check(packet(SPLIT, HilbertWeight(3, 1, 0, 1), x, y, {"x": Fraction(1, 2), "y": 0}, R))
    assert at_boundary.valuation == at_boundary.threshold and not at_boundary.classical


def test_classicality_needs_declared_valuations():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    with pytest.raises(UndeclaredValuation):
        classicality_check(packet(SPLIT, HilbertWeight(3, 1, 0, 1), x, y, {"x": 0}, R))


def test_classical_weight_examples():
    assert not classical_weight_membership(HilbertWeight(3, 1, 0, 1), SPLIT)
    assert not classical_weight_membership(HilbertWeight(3, 1, -1, 2), SPLIT)
    assert not classical_weight_membership(HilbertWeight(5, 1, -1, 1), INERT)
    assert not classical_weight_membership(HilbertWeight(5, 1, 0, 2), INERT)
    assert classical_weight_membership(HilbertWeight(6, 0, -1, 2), SPLIT)
    assert classical_weight_membership(HilbertWeight(8, 0, -1, 3), INERT)


def test_classical_weights_enumeration_agrees_with_membership():
    for regime in Regime:
        for n1 in range(0, 25):
            for n2 in range(0, n1):
                found = classical_weights(n1, n2, regime)
                brute = [
                    HilbertWeight(n1, n2, v1, v2)
                    for v1 in range(-10, 11)
                    for v2 in range(-30, 31)
                    if classical_weight_membership(HilbertWeight(n1, n2, v1, v2), regime)
                ]
                assert found == brute


def test_star_exponent_formula():
    for kappa in valid_weights():
        if kappa.n1 == kappa.n2:
            continue
        mu = weight_map_j(kappa)
        m, v1, v2 = kappa.m, kappa.v1, kappa.v2
        assert star_exponent(mu, SPLIT) == 3 * m - 1 + 4 * v1 + 2 * v2
        assert star_exponent(mu, INERT) == 4 * m - 1 + 6 * v1 + 2 * v2


def test_star_on_fixtures():
    split = parse_packet(FIXTURES / "d5_split.pkt")
    assert star_eigenvalue(split, TransferSign.PLUS) == 11**4 * 121**2 * Fraction(11) ** star_defect_exponent(split.weight, SPLIT)
    inert = parse_packet(FIXTURES / "d5_inert.pkt")
    for sign in TransferSign:
        image = transfer_eigenpacket(inert, sign)
        star = star_eigenvalue(inert, sign)
        assert star * Fraction(7) ** star_exponent(image.weight, INERT) == image.ppart.controlling
        assert star == -(7**4) * Fraction(7) ** star_defect_exponent(inert.weight, INERT)


def test_unit_condition():
    assert unit_condition(HilbertWeight(3, 1, 0, 1), 1)
    assert not unit_condition(HilbertWeight(3, 1, 0, 1), -1)
    assert unit_condition(HilbertWeight(4, 2, 0, 1), -1)
    with pytest.raises(ValueError):
        unit_condition(HilbertWeight(4, 2, 0, 1), 2)
