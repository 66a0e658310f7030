"""Seeded property suite behind ``padic-asai verify``.

Every check draws from its own ``random.Random`` seeded from the suite seed
and the check name, so results do not depend on the order in which checks run.
"""

from __future__ import annotations

import random
import zlib
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .archimedean import hodge_types_asai, hodge_types_tensor, mu_from_infinity, same_multiset
from .asai_lfunction import local_identity_check
from .asai_transfer import (
    GL4EigenPacket,
    GL4PPart,
    TransferSign,
    asai_charpoly_local,
    ppart_from_character,
    refinement_inert,
    refinement_split,
    sigma_p_inert,
    sigma_p_split,
    sigma_unramified_inert,
    sigma_unramified_split,
    q_equivalent,
    transfer_eigenpacket,
)
from .exact_algebra import PolyRing, primes_up_to
from .fileformat import parse_packet_text, render_packet
from .hilbert_eigensystem import (
    HilbertEigenPacket,
    HilbertWeight,
    RefinementData,
    Regime,
    SatakeLocal,
    eigenvalue_at_mOK,
    eigenvalue_at_prime_power,
    swap_orientation,
)
from .quadratic_field import PrimeIdealLabel, QuadField, Slot, SplittingType, splitting_type
from .splitting import inert_full_character, inert_tensor_charpoly, power_sum_h, split_tensor_charpoly
from .weight_slope import (
    SlopeContext,
    mu_for_pair,
    small_slope_closed_form,
    star_defect_exponent,
    star_eigenvalue,
    star_exponent,
    weight_map_j,
    weyl_slope_bound_bruteforce,
)

FIELDS = (2, 3, 5, 6, 7, 13, 17, 21)


def random_rational(rng: random.Random, bound: int = 40, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, 9))
        if q or not nonzero:
            return q


def random_weight(rng: random.Random, max_n: int = 8) -> HilbertWeight:
    n2 = rng.randint(0, max_n)
    n1 = n2 + 2 * rng.randint(1, 4)
    v1 = rng.randint(-3, 3)
    v2 = v1 + (n1 - n2) // 2
    return HilbertWeight(n1, n2, v1, v2)


def random_packet(rng: random.Random, d: int | None = None, symbolic: bool = False, nprimes: int = 3) -> HilbertEigenPacket:
    field = QuadField(d if d is not None else rng.choice(FIELDS))
    odd = [q for q in primes_up_to(60) if q > 2 and field.is_unramified(q)]
    p = rng.choice(odd)
    regime = Regime(splitting_type(field, p).value)
    candidates = [q for q in primes_up_to(40) if field.is_unramified(q) and q != p]
    primes = sorted(rng.sample(candidates, min(nprimes, len(candidates))))
    labels = [label for q in primes for label in field.labels_over(q)]
    ring = None
    if symbolic:
        names = [f"{c}{lab.prime}{lab.slot.value[0]}" for lab in labels for c in "as"] + ["x", "y"]
        ring = PolyRing(names)
    locals_ = {}
    for label in labels:
        if ring is None:
            a, s = random_rational(rng), random_rational(rng, nonzero=True)
        else:
            tag = f"{label.prime}{label.slot.value[0]}"
            a, s = ring.gen("a" + tag), ring.gen("s" + tag)
        locals_[label] = SatakeLocal(label, a, s)
    if ring is None:
        alpha = random_rational(rng, nonzero=True)
        alpha_c = random_rational(rng, nonzero=True) if regime is Regime.SPLIT else None
        valuations = {}
    else:
        alpha = ring.gen("x") * rng.choice([1, p, Fraction(1, p)])
        alpha_c = ring.gen("y") if regime is Regime.SPLIT else None
        valuations = {"x": Fraction(rng.randint(0, 6), rng.choice([1, 2])), "y": Fraction(rng.randint(0, 4))}
    ref = RefinementData(regime, alpha, alpha_c, valuations)
    k = rng.choice([None, rng.randint(2, 6)])
    return HilbertEigenPacket(field, random_weight(rng), p, locals_, ref, ring, k)


def profile_packet(rng: random.Random, d: int, primes, k: int, ring: PolyRing | None = None) -> HilbertEigenPacket:
    """Packet with e_l = N(l)^(k-1) at every prime above ``primes``."""
    field = QuadField(d)
    locals_ = {}
    for q in primes:
        for label in field.labels_over(q):
            s = Fraction(label.norm) ** (k - 2)
            if ring is not None:
                a = ring.gen(f"a{label.prime}{label.slot.value[0]}")
            else:
                a = Fraction(rng.randint(-60, 60))
            locals_[label] = SatakeLocal(label, a, s)
    odd = [q for q in primes_up_to(60) if q > 2 and field.is_unramified(q)]
    p = odd[0]
    regime = Regime(splitting_type(field, p).value)
    ref = RefinementData(regime, p, p if regime is Regime.SPLIT else None)
    return HilbertEigenPacket(field, HilbertWeight(k - 2, k - 2, 0, 0), p, locals_, ref, ring, k)


# -- checks -------------------------------------------------------------------


def check_split_charpoly(rng, trials):
    for _ in range(trials):
        ell = rng.choice([2, 3, 5, 7, 11])
        a, s, a2, s2 = (random_rational(rng) for _ in range(4))
        got = asai_charpoly_local(
            sigma_unramified_split(
                SatakeLocal(PrimeIdealLabel(ell, Slot.FIRST), a, s),
                SatakeLocal(PrimeIdealLabel(ell, Slot.SECOND), a2, s2),
                ell,
            )
        )
        assert got == split_tensor_charpoly(a, s, a2, s2, ell), (ell, a, s, a2, s2)


def check_inert_charpoly(rng, trials):
    for _ in range(trials):
        ell = rng.choice([2, 3, 5, 7, 11])
        a, s = random_rational(rng), random_rational(rng)
        sign = rng.choice(list(TransferSign))
        loc = sigma_unramified_inert(SatakeLocal(PrimeIdealLabel(ell, Slot.WHOLE), a, s), ell, sign)
        assert loc.T[1] == 0
        assert asai_charpoly_local(loc) == inert_tensor_charpoly(a, s, ell, sign.eps), (ell, a, s, sign)


def check_hecke_recursion(rng, trials):
    for _ in range(trials):
        label = PrimeIdealLabel(rng.choice([2, 3, 5, 7]), rng.choice([Slot.FIRST, Slot.WHOLE]))
        loc = SatakeLocal(label, random_rational(rng), random_rational(rng))
        r = rng.randint(0, 12)
        assert eigenvalue_at_prime_power(loc, r) == power_sum_h(loc.t, loc.e, r)


def check_multiplicativity(rng, trials):
    for _ in range(max(1, trials // 10)):
        pkt = random_packet(rng, nprimes=4)
        primes = pkt.supported_primes()
        for _ in range(10):
            m1 = _random_supported(rng, primes)
            m2 = _random_supported(rng, primes)
            if gcd(m1, m2) != 1:
                continue
            assert eigenvalue_at_mOK(pkt, m1 * m2) == eigenvalue_at_mOK(pkt, m1) * eigenvalue_at_mOK(pkt, m2)


def _random_supported(rng, primes) -> int:
    m = 1
    for q in primes:
        if rng.random() < 0.5:
            m *= q ** rng.randint(1, 3)
    return m


def check_orientation_swap(rng, trials):
    for _ in range(max(1, trials // 10)):
        pkt = random_packet(rng)
        swapped = swap_orientation(pkt)
        for _ in range(5):
            m = _random_supported(rng, pkt.supported_primes())
            assert eigenvalue_at_mOK(pkt, m) == eigenvalue_at_mOK(swapped, m)
        plus, plus_sw = transfer_eigenpacket(pkt, TransferSign.PLUS), transfer_eigenpacket(swapped, TransferSign.PLUS)
        assert plus.locals == plus_sw.locals
        if pkt.regime is Regime.SPLIT:
            ref = pkt.refinement
            be, be_c = ref.betas(pkt.p, pkt.weight.m)
            U, V = plus.ppart.U, plus_sw.ppart.U
            assert (V[0], V[2], V[3]) == (U[0], U[2], U[3])
            assert V[1] == U[1] * (ref.alpha_c * be) / (ref.alpha * be_c)
        else:
            assert plus.ppart == plus_sw.ppart


def check_controlling_identities(rng, trials):
    x, y = PolyRing(["x", "y"]).gens()
    for m in range(-2, 6):
        for p in (3, 5, 7):
            ref = RefinementData(Regime.SPLIT, x, y)
            assert sigma_p_split(ref, p, m).controlling == Fraction(p) ** (3 * m - 1) * x**4 * y**2
            ref = RefinementData(Regime.INERT, x)
            for sign in TransferSign:
                assert sigma_p_inert(ref, p, m, sign).controlling == -Fraction(p) ** (4 * m - 1) * x**4


def check_refinement_telescoping(rng, trials):
    for _ in range(trials):
        p = rng.choice([3, 5, 7])
        m = rng.randint(-2, 6)
        sign = rng.choice(list(TransferSign))
        if rng.random() < 0.5:
            ref = RefinementData(Regime.SPLIT, random_rational(rng, nonzero=True), random_rational(rng, nonzero=True))
            assert ppart_from_character(refinement_split(ref, p, m)) == sigma_p_split(ref, p, m).U
        else:
            ref = RefinementData(Regime.INERT, random_rational(rng, nonzero=True))
            char = refinement_inert(ref, p, m, sign)
            assert ppart_from_character(char) == sigma_p_inert(ref, p, m, sign).U
            _, chi = inert_full_character(ref.alpha, p, m, sign.eps)
            for root_sign in (1, -1):
                c1, c2, c3, c4 = chi[0], chi[1] * root_sign, chi[2] * root_sign, chi[3]
                restricted = (c1.base_value(), (c2 * c2).base_value(), _root_ratio(c3, c2), c4.base_value())
                assert restricted == char.values


def _root_ratio(num, den):
    """num / den for two rational multiples of the adjoined root."""
    return num.terms[(1,)] / den.terms[(1,)]


def check_slopes(rng, trials):
    for n1 in range(1, 41):
        for n2 in range(1, n1):
            mu = mu_for_pair(n1, n2)
            for regime in Regime:
                assert weyl_slope_bound_bruteforce(mu, SlopeContext(regime)) == small_slope_closed_form((n1, n2), regime)


def check_star(rng, trials):
    for _ in range(max(1, trials // 10)):
        pkt = random_packet(rng, symbolic=True, nprimes=1)
        sign = rng.choice(list(TransferSign))
        image = transfer_eigenpacket(pkt, sign)
        star = star_eigenvalue(pkt, sign)
        p = Fraction(pkt.p)
        assert star * p ** star_exponent(image.weight, pkt.regime) == image.ppart.controlling
        ref = pkt.refinement
        defect = p ** star_defect_exponent(pkt.weight, pkt.regime)
        if pkt.regime is Regime.SPLIT:
            assert star == ref.alpha**4 * ref.alpha_c**2 * defect
        else:
            assert star == -(ref.alpha**4) * defect


def check_lfunction(rng, trials):
    for _ in range(max(1, trials // 25)):
        d = rng.choice(FIELDS)
        field = QuadField(d)
        ell = rng.choice([q for q in primes_up_to(13) if field.is_unramified(q)])
        k = rng.randint(2, 5)
        pkt = profile_packet(rng, d, [ell], k)
        assert local_identity_check(pkt, ell, k, 10)


def check_qfiber(rng, trials):
    for _ in range(max(1, trials // 10)):
        pkt = random_packet(rng)
        x = transfer_eigenpacket(pkt, TransferSign.PLUS)
        assert q_equivalent(x, x)
        if x.regime is Regime.SPLIT:
            U = x.ppart.U
            flipped = _with_U(x, (U[0], -U[1], U[2], U[3]))
            assert q_equivalent(x, flipped)
            for i in (0, 2, 3):
                bumped = list(U)
                bumped[i] = bumped[i] + 1
                assert not q_equivalent(x, _with_U(x, tuple(bumped)))
        if x.locals:
            ell = rng.choice(sorted(x.locals))
            i = rng.randrange(4)
            T = list(x.locals[ell].T)
            T[i] = T[i] + 1
            locs = dict(x.locals)
            locs[ell] = type(x.locals[ell])(ell, tuple(T))
            y = GL4EigenPacket(x.sign, x.p, locs, x.ppart, x.weight, x.refinement)
            assert not q_equivalent(x, y)


def _with_U(x: GL4EigenPacket, U) -> GL4EigenPacket:
    return GL4EigenPacket(x.sign, x.p, x.locals, GL4PPart(x.regime, U), x.weight, x.refinement)


def check_archimedean(rng, trials):
    for n1 in range(0, 21):
        for n2 in range(0, n1 + 1):
            if (n1 - n2) % 2:
                continue
            v1 = rng.randint(-3, 3)
            kappa = HilbertWeight(n1, n2, v1, v1 + (n1 - n2) // 2)
            types = hodge_types_asai(kappa)
            assert same_multiset(types, hodge_types_tensor(kappa))
            assert any(h.p == h.q for h in types) == (n1 == n2)
            if n1 > n2:
                assert mu_from_infinity(kappa) == weight_map_j(kappa)


def check_round_trip(rng, trials):
    for _ in range(trials):
        pkt = random_packet(rng, symbolic=rng.random() < 0.3)
        assert parse_packet_text(render_packet(pkt)) == pkt


def check_sign_flip(rng, trials):
    for _ in range(max(1, trials // 10)):
        pkt = random_packet(rng)
        plus = transfer_eigenpacket(pkt, TransferSign.PLUS)
        minus = transfer_eigenpacket(pkt, TransferSign.MINUS)
        for ell, loc in plus.locals.items():
            other = minus.locals[ell].T
            if splitting_type(pkt.field, ell) is SplittingType.INERT:
                assert other == (-loc.T[0], loc.T[1], -loc.T[2], loc.T[3])
            else:
                assert other == loc.T


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable


CHECKS = (
    Check("split-charpoly", check_split_charpoly),
    Check("inert-charpoly", check_inert_charpoly),
    Check("hecke-recursion", check_hecke_recursion),
    Check("multiplicativity", check_multiplicativity),
    Check("orientation-swap", check_orientation_swap),
    Check("controlling-identities", check_controlling_identities),
    Check("refinement-telescoping", check_refinement_telescoping),
    Check("slope-bounds", check_slopes),
    Check("star-normalization", check_star),
    Check("asai-l-identity", check_lfunction),
    Check("q-fiber", check_qfiber),
    Check("archimedean", check_archimedean),
    Check("packet-round-trip", check_round_trip),
    Check("sign-flip", check_sign_flip),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def run_check(check: Check, seed: int, trials: int) -> CheckResult:
    rng = random.Random(seed * 1_000_003 + zlib.crc32(check.name.encode()))
    try:
        check.run(rng, trials)
    except AssertionError as exc:
        return CheckResult(check.name, False, f"counterexample {exc}" if str(exc) else "assertion failed")
    return CheckResult(check.name, True)


def run_suite(seed: int, trials: int, only=None) -> list[CheckResult]:
    checks = [c for c in CHECKS if only is None or c.name in only]
    return [run_check(c, seed, trials) for c in checks]
