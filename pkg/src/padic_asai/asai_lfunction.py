"""Euler factors and Dirichlet coefficients of the Asai L-function.

This module works in the classical normalisation: parallel weight k, trivial
character and level one, so that e_l = N(l)^(k-1) at every prime l of K.
Everything is formal in X = l^(-s) locally, and in m^(-s) globally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import RamifiedPrimeError
from .asai_transfer import (
    GL4Local,
    TransferSign,
    asai_charpoly_local,
    sigma_unramified_inert,
    sigma_unramified_split,
)
from .exact_algebra import PowerSeries, Scalar, UniPoly, factorize, format_scalar, primes_up_to, series_inverse
from .hilbert_eigensystem import HilbertEigenPacket, eigenvalue_at_mOK, enforce_profile
from .quadratic_field import PrimeIdealLabel, Slot, SplittingType, splitting_type


@dataclass(frozen=True)
class LocalFactor:
    ell: int
    poly: UniPoly

    def __post_init__(self):
        if self.poly[0] != 1:
            raise ValueError("a local factor has constant term 1")


@dataclass(frozen=True)
class DirichletPrefix:
    coeffs: Mapping[int, Scalar]  # m -> b_m, only m coprime to the discriminant
    M: int

    def __getitem__(self, m: int) -> Scalar:
        return self.coeffs[m]


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    order: int
    first_mismatch: int | None = None
    lhs: Scalar | None = None
    rhs: Scalar | None = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return f"OK to X^{self.order}"
        return (
            f"MISMATCH at X^{self.first_mismatch}: "
            f"series {format_scalar(self.lhs)} vs Euler factor {format_scalar(self.rhs)}"
        )


def local_euler_factor(loc: GL4Local) -> LocalFactor:
    """prod (1 - gamma X): the reversed Frobenius characteristic polynomial."""
    return LocalFactor(loc.ell, asai_charpoly_local(loc).reversed(4))


def gl4_local_at(pkt: HilbertEigenPacket, ell: int, sign: TransferSign) -> GL4Local:
    """Transfer at ell without excluding ell = p (the p-part plays no role here)."""
    kind = splitting_type(pkt.field, ell)
    if kind is SplittingType.RAMIFIED:
        raise RamifiedPrimeError(f"{ell} is ramified in K")
    if kind is SplittingType.SPLIT:
        return sigma_unramified_split(
            pkt.local(PrimeIdealLabel(ell, Slot.FIRST)), pkt.local(PrimeIdealLabel(ell, Slot.SECOND)), ell
        )
    return sigma_unramified_inert(pkt.local(PrimeIdealLabel(ell, Slot.WHOLE)), ell, sign)


def _zeta_factor(ell: int, k: int, order: int) -> PowerSeries:
    """(1 - l^(2k-2) X^2)^(-1)."""
    q = Fraction(ell) ** (2 * k - 2)
    return PowerSeries([q ** (r // 2) if r % 2 == 0 else 0 for r in range(order + 1)], order)


def local_dirichlet_series(pkt: HilbertEigenPacket, ell: int, k: int, order: int) -> PowerSeries:
    """(sum_r c(l^r O_K) X^r) * (1 - l^(2k-2) X^2)^(-1) modulo X^(order+1)."""
    enforce_profile(pkt, k, primes=[ell])
    if not pkt.field.is_unramified(ell):
        raise RamifiedPrimeError(f"{ell} is ramified in K")
    c = PowerSeries([eigenvalue_at_mOK(pkt, ell**r) for r in range(order + 1)], order)
    return c * _zeta_factor(ell, k, order)


def local_identity_check(
    pkt: HilbertEigenPacket, ell: int, k: int, order: int, sign: TransferSign = TransferSign.PLUS
) -> IdentityCheck:
    """Compare the local Dirichlet series with 1 / (Asai Euler factor)."""
    lhs = local_dirichlet_series(pkt, ell, k, order)
    factor = local_euler_factor(gl4_local_at(pkt, ell, sign))
    rhs = series_inverse(PowerSeries.from_poly(factor.poly, order))
    i = lhs.first_difference(rhs)
    if i is None:
        return IdentityCheck(True, order)
    return IdentityCheck(False, order, i, lhs[i], rhs[i])


def _coprime_range(pkt: HilbertEigenPacket, M: int) -> list[int]:
    disc = pkt.field.discriminant
    return [m for m in range(1, M + 1) if all(disc % q for q in factorize(m))]


def global_dirichlet_coefficients(pkt: HilbertEigenPacket, k: int, M: int) -> DirichletPrefix:
    """b_m = sum over d^2 | m of d^(2k-2) c((m/d^2) O_K), for m <= M coprime to disc."""
    primes = [q for q in primes_up_to(M) if pkt.field.is_unramified(q)]
    enforce_profile(pkt, k, primes=primes)
    out = {}
    for m in _coprime_range(pkt, M):
        acc = 0
        d = 1
        while d * d <= m:
            if m % (d * d) == 0:
                acc = acc + Fraction(d) ** (2 * k - 2) * eigenvalue_at_mOK(pkt, m // (d * d))
            d += 1
        out[m] = acc
    return DirichletPrefix(out, M)


def euler_product_coefficients(pkt: HilbertEigenPacket, k: int, M: int, sign: TransferSign = TransferSign.PLUS) -> DirichletPrefix:
    """Same prefix through prod_l 1/(local Euler factor), l unramified."""
    primes = [q for q in primes_up_to(M) if pkt.field.is_unramified(q)]
    enforce_profile(pkt, k, primes=primes)
    local_coeffs = {}
    for ell in primes:
        order = 0
        while ell ** (order + 1) <= M:
            order += 1
        factor = local_euler_factor(gl4_local_at(pkt, ell, sign))
        local_coeffs[ell] = series_inverse(PowerSeries.from_poly(factor.poly, order))
    out = {}
    for m in _coprime_range(pkt, M):
        acc = Fraction(1)
        for ell, r in factorize(m).items():
            acc = acc * local_coeffs[ell][r]
        out[m] = acc
    return DirichletPrefix(out, M)

