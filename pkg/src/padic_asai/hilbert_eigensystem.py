"""Hecke eigenpackets for GL(2) over a real quadratic field.

A packet records a cohomological weight (n, v), the eigenvalues a_l of T_l
and s_l of S_l at finitely many unramified primes l, and a choice of
U_p-eigenvalues (the refinement) at the fixed prime p.  At each l the
Frobenius eigenvalues alpha_l, beta_l are kept implicit through

    t = alpha_l + beta_l = a_l,    e = alpha_l * beta_l = N(l) * s_l.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping

from .errors import InvalidPacket, MissingHeckeData, ProfileViolation, RamifiedPrimeError
from .exact_algebra import (
    MPoly,
    PolyRing,
    Scalar,
    format_scalar,
    is_prime,
    rational_value,
    ring_of,
    to_scalar,
)
from .quadratic_field import (
    PrimeIdealLabel,
    QuadField,
    Slot,
    SplittingType,
    factor_rational_ideal,
    splitting_type,
)


class Regime(enum.Enum):
    """How the fixed prime p behaves in K."""

    SPLIT = "split"
    INERT = "inert"

    @classmethod
    def of(cls, kind: SplittingType) -> Regime:
        if kind is SplittingType.RAMIFIED:
            raise RamifiedPrimeError("p must be unramified in K")
        return cls(kind.value)


@dataclass(frozen=True)
class HilbertWeight:
    n1: int
    n2: int
    v1: int
    v2: int

    @property
    def m(self) -> int:
        return self.n1 + 2 * self.v1

    def violations(self) -> list[str]:
        out = []
        if any(not isinstance(x, int) for x in (self.n1, self.n2, self.v1, self.v2)):
            return ["weight entries must be integers"]
        if self.n1 < 0 or self.n2 < 0:
            out.append(f"negative n: ({self.n1}, {self.n2})")
        if self.n1 + 2 * self.v1 != self.n2 + 2 * self.v2:
            out.append(
                f"m mismatch: n1+2v1={self.n1 + 2 * self.v1} != n2+2v2={self.n2 + 2 * self.v2}"
            )
        if (self.n1 - self.n2) % 2:
            out.append(f"parity: n1={self.n1} and n2={self.n2} differ mod 2")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def __str__(self) -> str:
        return f"({self.n1},{self.n2},{self.v1},{self.v2})"


@dataclass(frozen=True)
class SatakeLocal:
    label: PrimeIdealLabel
    a: Scalar
    s: Scalar

    def __post_init__(self):
        object.__setattr__(self, "a", to_scalar(self.a))
        object.__setattr__(self, "s", to_scalar(self.s))

    @property
    def t(self) -> Scalar:
        return self.a

    @property
    def e(self) -> Scalar:
        return self.label.norm * self.s


@dataclass(frozen=True)
class RefinementData:
    """Chosen U_p eigenvalue(s).

    ``alpha`` is alpha_p (split: the U_P eigenvalue for the FIRST prime above p;
    inert: the U_p eigenvalue) and ``alpha_c`` is alpha_{P^c} in the split case.
    ``valuations`` declares v_p of refinement symbols in symbolic mode.
    """

    regime: Regime
    alpha: Scalar
    alpha_c: Scalar | None = None
    valuations: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_scalar(self.alpha))
        if self.alpha_c is not None:
            object.__setattr__(self, "alpha_c", to_scalar(self.alpha_c))
        object.__setattr__(
            self, "valuations", {k: Fraction(v) for k, v in dict(self.valuations).items()}
        )

    def norm_product(self, p: int, m: int) -> int:
        """alpha*beta at each prime above p: p^(m+1) split, p^(2m+2) inert."""
        return Fraction(p) ** (m + 1) if self.regime is Regime.SPLIT else Fraction(p) ** (2 * m + 2)

    def betas(self, p: int, m: int) -> tuple[Scalar, ...]:
        """Complementary roots derived from the norm relation (never stored)."""
        c = self.norm_product(p, m)
        if self.regime is Regime.SPLIT:
            return (c / self.alpha, c / self.alpha_c)
        return (c / self.alpha,)


@dataclass(frozen=True)
class HilbertEigenPacket:
    field: QuadField
    weight: HilbertWeight
    p: int
    locals: Mapping[PrimeIdealLabel, SatakeLocal]
    refinement: RefinementData
    ring: PolyRing | None = None
    k: int | None = None  # classical parallel weight for the L-function profile

    @property
    def regime(self) -> Regime:
        return self.refinement.regime

    @property
    def symbolic(self) -> bool:
        return self.ring is not None

    def local(self, label: PrimeIdealLabel) -> SatakeLocal:
        if not self.field.is_unramified(label.prime):
            raise RamifiedPrimeError(f"{label.prime} is ramified in Q(sqrt {self.field.d})")
        try:
            return self.locals[label]
        except KeyError:
            raise MissingHeckeData(f"no Hecke data at {label}") from None

    def supported_primes(self) -> list[int]:
        return sorted({label.prime for label in self.locals})

    def scalars(self) -> list[Scalar]:
        out = []
        for loc in self.locals.values():
            out += [loc.a, loc.s]
        ref = self.refinement
        out.append(ref.alpha)
        if ref.alpha_c is not None:
            out.append(ref.alpha_c)
        return out


def validate_packet(pkt: HilbertEigenPacket) -> list[str]:
    """Every invariant violation of ``pkt``; empty when the packet is valid."""
    out = list(pkt.weight.violations())
    p = pkt.p
    if not is_prime(p):
        out.append(f"p={p} is not prime")
    elif p == 2:
        out.append("p must be odd")
    elif not pkt.field.is_unramified(p):
        out.append(f"p={p} is ramified in K")
    elif pkt.regime is not Regime.of(splitting_type(pkt.field, p)):
        actual = splitting_type(pkt.field, p).value
        out.append(f"regime {pkt.regime.value} but p={p} is {actual} in K")

    ref = pkt.refinement
    if ref.regime is Regime.SPLIT and ref.alpha_c is None:
        out.append("split refinement needs alpha_pc")
    if ref.regime is Regime.INERT and ref.alpha_c is not None:
        out.append("inert refinement takes a single alpha")
    for name, a in (("alpha", ref.alpha), ("alpha_c", ref.alpha_c)):
        if a is None:
            continue
        if not a:
            out.append(f"refinement {name} must be nonzero")
        elif isinstance(a, MPoly) and not a.is_monomial():
            out.append(f"refinement {name} must be a monomial in symbolic mode")

    try:
        ring = ring_of(*pkt.scalars())
    except Exception as exc:  # mixed rings
        out.append(str(exc))
        ring = None
    if pkt.ring is None and ring is not None:
        out.append("symbolic values in a numeric packet")
    if pkt.ring is not None and ring is not None and ring != pkt.ring:
        out.append("values use a ring other than the packet's")
    if pkt.ring is not None:
        for name in ref.valuations:
            if name not in pkt.ring:
                out.append(f"valuation declared for unknown symbol {name!r}")
    elif ref.valuations:
        out.append("declared valuations are only meaningful in symbolic mode")

    by_prime: dict[int, set[Slot]] = {}
    for label, loc in pkt.locals.items():
        if loc.label != label:
            out.append(f"local data keyed {label} but labelled {loc.label}")
        ell = label.prime
        if not is_prime(ell):
            out.append(f"{ell} is not prime")
            continue
        kind = splitting_type(pkt.field, ell)
        if kind is SplittingType.RAMIFIED:
            out.append(f"ramified prime {ell} carries Hecke data")
            continue
        expected = {SplittingType.SPLIT: (Slot.FIRST, Slot.SECOND), SplittingType.INERT: (Slot.WHOLE,)}
        if label.slot not in expected[kind]:
            out.append(f"prime {ell} is {kind.value} but data is given for slot {label.slot.value}")
        by_prime.setdefault(ell, set()).add(label.slot)
    for ell, slots in sorted(by_prime.items()):
        if slots & {Slot.FIRST, Slot.SECOND} and slots != {Slot.FIRST, Slot.SECOND}:
            out.append(f"split prime {ell} has Hecke data for only one of its two primes")
    if pkt.k is not None and (not isinstance(pkt.k, int) or pkt.k < 1):
        out.append(f"k must be a positive integer, got {pkt.k!r}")
    return out


def require_valid(pkt: HilbertEigenPacket) -> None:
    problems = validate_packet(pkt)
    if problems:
        raise InvalidPacket(problems)


def eigenvalue_at_prime_power(loc: SatakeLocal, r: int) -> Scalar:
    """c(l^r) by the Hecke recursion c(l^(r+1)) = a c(l^r) - e c(l^(r-1))."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    prev, cur = Fraction(0), Fraction(1)
    for _ in range(r):
        prev, cur = cur, loc.a * cur - loc.e * prev
    if isinstance(loc.a, MPoly) and not isinstance(cur, MPoly):
        cur = loc.a.ring.const(cur)
    return cur


def eigenvalue_at_ideal(pkt: HilbertEigenPacket, factorization: Mapping[PrimeIdealLabel, int]) -> Scalar:
    value: Scalar = Fraction(1) if pkt.ring is None else pkt.ring.one()
    for label, r in factorization.items():
        value = value * eigenvalue_at_prime_power(pkt.local(label), r)
    return value


def eigenvalue_at_mOK(pkt: HilbertEigenPacket, m: int) -> Scalar:
    """c(m O_K): product over the prime-ideal factorisation of m O_K."""
    return eigenvalue_at_ideal(pkt, factor_rational_ideal(pkt.field, m))


def swap_orientation(pkt: HilbertEigenPacket) -> HilbertEigenPacket:
    """Exchange FIRST and SECOND at every split prime, including the primes above p."""
    swapped = {}
    for label, loc in pkt.locals.items():
        new = label.conjugate()
        swapped[new] = SatakeLocal(new, loc.a, loc.s)
    ref = pkt.refinement
    if ref.regime is Regime.SPLIT:
        ref = replace(ref, alpha=ref.alpha_c, alpha_c=ref.alpha)
    return replace(pkt, locals=dict(sorted(swapped.items())), refinement=ref)


# -- "classical-level-1" profile used by the L-function identity -------------


def profile_violations(pkt: HilbertEigenPacket, k: int, primes=None) -> list[str]:
    """Data breaking e_l = N(l)^(k-1), optionally restricted to residue primes in ``primes``."""
    wanted = None if primes is None else set(primes)
    out = []
    for label, loc in sorted(pkt.locals.items()):
        if wanted is not None and label.prime not in wanted:
            continue
        want = Fraction(label.norm) ** (k - 1)
        if rational_value(loc.e) != want:
            out.append(f"e at {label} is {format_scalar(loc.e)}, profile needs {want}")
    return out


def enforce_profile(pkt: HilbertEigenPacket, k: int, primes=None) -> None:
    problems = profile_violations(pkt, k, primes)
    if problems:
        raise ProfileViolation("; ".join(problems))
