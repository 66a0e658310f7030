"""Transfer of a Hilbert eigenpacket to a GL(4) eigenpacket.

Away from p the GL(4) Hecke operators T_{l,1..4} are evaluated on the
Hilbert data through the Asai tensor construction.  The GL(4) Frobenius
characteristic polynomial at l is

    X^4 - T1 X^3 + l T2 X^2 - l^3 T3 X + l^6 T4.

At p the images of U_{p,1..4} (p split in K) or of the operators
U~_{p,1..4} of the auxiliary Hecke algebra (p inert) are evaluated on the
chosen refinement.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import (
    IncomparablePackets,
    InvalidWeight,
    NonCohomologicalWeight,
    RamifiedPrimeError,
    RegimeMismatch,
)
from .exact_algebra import Scalar, UniPoly
from .hilbert_eigensystem import (
    HilbertEigenPacket,
    RefinementData,
    Regime,
    SatakeLocal,
    require_valid,
)
from .quadratic_field import PrimeIdealLabel, Slot, SplittingType, splitting_type
from .weight_slope import GL4Weight, weight_map_j


class TransferSign(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def eps(self) -> int:
        return 1 if self is TransferSign.PLUS else -1

    def flipped(self) -> TransferSign:
        return TransferSign.MINUS if self is TransferSign.PLUS else TransferSign.PLUS


@dataclass(frozen=True)
class GL4Local:
    ell: int
    T: tuple

    def charpoly(self) -> UniPoly:
        return asai_charpoly_local(self)


@dataclass(frozen=True)
class GL4PPart:
    """Images of U_{p,1..4} (split) or U~_{p,1..4} (inert)."""

    regime: Regime
    U: tuple

    @property
    def controlling(self) -> Scalar:
        return self.U[0] * self.U[1] * self.U[2]


@dataclass(frozen=True)
class RefinementCharacter:
    """chi(u_{p,1..4}) when p splits; chi~(u~_{p,1..4}) when p is inert."""

    regime: Regime
    values: tuple


@dataclass(frozen=True)
class GL4EigenPacket:
    sign: TransferSign
    p: int
    locals: Mapping[int, GL4Local]
    ppart: GL4PPart
    weight: GL4Weight
    refinement: RefinementCharacter | None = None

    @property
    def regime(self) -> Regime:
        return self.ppart.regime


def _check_ell(loc: SatakeLocal, ell: int, p: int | None):
    if loc.label.prime != ell:
        raise ValueError(f"data at {loc.label} does not lie over {ell}")
    if p is not None and ell == p:
        raise RegimeMismatch(f"l = p = {p} is handled by the p-part, not the unramified transfer")
    if loc.label.slot is Slot.RAMIFIED:
        raise RamifiedPrimeError(f"{ell} is ramified")


def sigma_unramified_split(loc: SatakeLocal, loc_c: SatakeLocal, ell: int, p: int | None = None) -> GL4Local:
    """T_{l,i} at a prime l = L L^c split in K."""
    for x in (loc, loc_c):
        _check_ell(x, ell, p)
        if x.label.slot is Slot.WHOLE:
            raise RegimeMismatch(f"{ell} is inert; use the inert transfer")
    if {loc.label.slot, loc_c.label.slot} != {Slot.FIRST, Slot.SECOND}:
        raise ValueError("split transfer needs the data at both primes above l")
    a, s, a2, s2 = loc.a, loc.s, loc_c.a, loc_c.s
    T1 = a * a2
    T2 = a * a * s2 + s * a2 * a2 - 2 * ell * s * s2
    T3 = a * s * a2 * s2 / ell
    T4 = s * s * s2 * s2 / ell**2
    return GL4Local(ell, (T1, T2, T3, T4))


def sigma_unramified_inert(loc: SatakeLocal, ell: int, sign: TransferSign, p: int | None = None) -> GL4Local:
    """T_{l,i} at a prime l inert in K; the sign acts on T1 and T3."""
    _check_ell(loc, ell, p)
    if loc.label.slot is not Slot.WHOLE:
        raise RegimeMismatch(f"{ell} is split; use the split transfer")
    eps = sign.eps
    a, s = loc.a, loc.s
    zero = a * 0
    return GL4Local(ell, (eps * a, zero, -eps * a * s / ell, -s * s / ell**2))


def asai_charpoly_local(loc: GL4Local) -> UniPoly:
    ell = loc.ell
    T1, T2, T3, T4 = loc.T
    return UniPoly([ell**6 * T4, -(ell**3) * T3, ell * T2, -T1, 1])


def _require_regime(ref: RefinementData, regime: Regime):
    if ref.regime is not regime:
        raise RegimeMismatch(f"refinement is {ref.regime.value}, operation needs {regime.value}")


def refinement_split(ref: RefinementData, p: int, m: int) -> RefinementCharacter:
    """(u1, u2, u3, u4) = (a a', p^-1 a b', p^-2 b a', p^-3 b b')."""
    _require_regime(ref, Regime.SPLIT)
    al, al_c = ref.alpha, ref.alpha_c
    be, be_c = ref.betas(p, m)
    pf = Fraction(p)
    values = (al * al_c, al * be_c / pf, be * al_c / pf**2, be * be_c / pf**3)
    return RefinementCharacter(Regime.SPLIT, values)


def sigma_p_split(ref: RefinementData, p: int, m: int) -> GL4PPart:
    """Images of U_{p,1..4}; controlling U_p = p^(3m-1) alpha^4 alpha_c^2."""
    _require_regime(ref, Regime.SPLIT)
    al, al_c = ref.alpha, ref.alpha_c
    be, be_c = ref.betas(p, m)
    pf = Fraction(p)
    U = (
        al * al_c,
        al**2 * al_c * be_c / pf,
        al**2 * al_c**2 * be * be_c / pf**3,
        al**2 * al_c**2 * be**2 * be_c**2 / pf**6,
    )
    return GL4PPart(Regime.SPLIT, U)


def sigma_p_inert(ref: RefinementData, p: int, m: int, sign: TransferSign) -> GL4PPart:
    """Images of U~_{p,1..4}; controlling U~_p = -p^(4m-1) alpha^4 for either sign."""
    _require_regime(ref, Regime.INERT)
    eps = sign.eps
    al = ref.alpha
    (be,) = ref.betas(p, m)
    pf = Fraction(p)
    U = (
        eps * al,
        al**3 * be / pf**2,
        -eps * al**2 * be / pf**3,
        -(al**2) * be**2 / pf**6,
    )
    return GL4PPart(Regime.INERT, U)


def refinement_inert(ref: RefinementData, p: int, m: int, sign: TransferSign) -> RefinementCharacter:
    """chi~ on (u~1, u~2, u~3, u~4) = (eps a, p^-2 a b, -p^-1, eps p^-3 b)."""
    _require_regime(ref, Regime.INERT)
    eps = sign.eps
    al = ref.alpha
    (be,) = ref.betas(p, m)
    pf = Fraction(p)
    minus_inv_p = al * 0 - 1 / pf
    values = (eps * al, al * be / pf**2, minus_inv_p, eps * be / pf**3)
    return RefinementCharacter(Regime.INERT, values)


def ppart_from_character(char: RefinementCharacter) -> tuple:
    """Rebuild the U-values from the refinement character.

    Split: U_i = u_1 ... u_i.  Inert: U~1 = u~1, U~2 = u~2 U~1^2,
    U~3 = u~3 U~2 U~1^-1, U~4 = u~4 U~3.
    """
    u = char.values
    if char.regime is Regime.SPLIT:
        out, acc = [], 1
        for x in u:
            acc = acc * x
            out.append(acc)
        return tuple(out)
    U1 = u[0]
    U2 = u[1] * U1**2
    U3 = u[2] * U2 / U1
    U4 = u[3] * U3
    return (U1, U2, U3, U4)


def transfer_eigenpacket(pkt: HilbertEigenPacket, sign: TransferSign) -> GL4EigenPacket:
    require_valid(pkt)
    kappa = pkt.weight
    if kappa.n1 == kappa.n2:
        raise NonCohomologicalWeight("n1 = n2: the Asai motive has a middle Hodge type")
    if kappa.n1 < kappa.n2:
        raise InvalidWeight("transfer expects n1 > n2; exchange the two embeddings first")
    locals_: dict[int, GL4Local] = {}
    for ell in pkt.supported_primes():
        if ell == pkt.p:
            continue
        kind = splitting_type(pkt.field, ell)
        if kind is SplittingType.SPLIT:
            first = pkt.local(PrimeIdealLabel(ell, Slot.FIRST))
            second = pkt.local(PrimeIdealLabel(ell, Slot.SECOND))
            locals_[ell] = sigma_unramified_split(first, second, ell, pkt.p)
        else:
            locals_[ell] = sigma_unramified_inert(pkt.local(PrimeIdealLabel(ell, Slot.WHOLE)), ell, sign, pkt.p)
    m = kappa.m
    if pkt.regime is Regime.SPLIT:
        ppart = sigma_p_split(pkt.refinement, pkt.p, m)
        char = refinement_split(pkt.refinement, pkt.p, m)
    else:
        ppart = sigma_p_inert(pkt.refinement, pkt.p, m, sign)
        char = refinement_inert(pkt.refinement, pkt.p, m, sign)
    return GL4EigenPacket(sign, pkt.p, locals_, ppart, weight_map_j(kappa), char)


def q_equivalent(x: GL4EigenPacket, y: GL4EigenPacket) -> bool:
    """Same image in the auxiliary eigenvariety.

    Split regime: all T_{l,i} agree, U_{p,1}, U_{p,3}, U_{p,4} agree and
    U_{p,2} agrees up to sign.  Inert regime: the U~-values are compared
    directly.
    """
    if x.regime is not y.regime:
        raise IncomparablePackets("packets come from different regimes at p")
    if x.p != y.p:
        raise IncomparablePackets(f"different p: {x.p} vs {y.p}")
    if set(x.locals) != set(y.locals):
        raise IncomparablePackets(
            f"supports differ: {sorted(x.locals)} vs {sorted(y.locals)}"
        )
    for ell in x.locals:
        if any(a != b for a, b in zip(x.locals[ell].T, y.locals[ell].T)):
            return False
    ux, uy = x.ppart.U, y.ppart.U
    if x.regime is Regime.INERT:
        return all(a == b for a, b in zip(ux, uy))
    if ux[0] != uy[0] or ux[2] != uy[2] or ux[3] != uy[3]:
        return False
    return ux[1] == uy[1] or ux[1] == -uy[1]
