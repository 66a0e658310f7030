"""Real quadratic fields K = Q(sqrt d): splitting of rational primes and ideals m*O_K."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .exact_algebra import _require_prime, factorize


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n < 1:
        raise ValueError("kronecker symbol needs n >= 1")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _is_squarefree(d: int) -> bool:
    return all(e == 1 for e in factorize(d).values())


class SplittingType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


class Slot(enum.Enum):
    FIRST = "first"
    SECOND = "second"
    WHOLE = "whole"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class PrimeIdealLabel:
    """A prime of O_K named by its residue prime and a slot.

    For split l the FIRST/SECOND slots stand for l and its conjugate; the
    orientation is fixed when the input is read.
    """

    prime: int
    slot: Slot

    @property
    def norm(self) -> int:
        return self.prime**2 if self.slot is Slot.WHOLE else self.prime

    def __str__(self) -> str:
        return f"{self.prime}:{self.slot.value}"

    def __lt__(self, other: PrimeIdealLabel) -> bool:
        return (self.prime, _SLOT_RANK[self.slot]) < (other.prime, _SLOT_RANK[other.slot])

    def conjugate(self) -> PrimeIdealLabel:
        if self.slot is Slot.FIRST:
            return PrimeIdealLabel(self.prime, Slot.SECOND)
        if self.slot is Slot.SECOND:
            return PrimeIdealLabel(self.prime, Slot.FIRST)
        return self


_SLOT_RANK = {Slot.FIRST: 0, Slot.SECOND: 1, Slot.WHOLE: 2, Slot.RAMIFIED: 3}

# an ideal factorisation is a plain mapping label -> exponent
IdealFactorization = dict


@dataclass(frozen=True)
class QuadField:
    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d <= 1 or not _is_squarefree(self.d):
            raise ValueError(f"d must be a squarefree integer > 1, got {self.d!r}")

    @property
    def discriminant(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    def splitting_type(self, ell: int) -> SplittingType:
        return splitting_type(self, ell)

    def labels_over(self, ell: int) -> tuple[PrimeIdealLabel, ...]:
        kind = splitting_type(self, ell)
        if kind is SplittingType.SPLIT:
            return (PrimeIdealLabel(ell, Slot.FIRST), PrimeIdealLabel(ell, Slot.SECOND))
        if kind is SplittingType.INERT:
            return (PrimeIdealLabel(ell, Slot.WHOLE),)
        return (PrimeIdealLabel(ell, Slot.RAMIFIED),)

    def is_unramified(self, ell: int) -> bool:
        return self.discriminant % ell != 0


def splitting_type(field: QuadField, ell: int) -> SplittingType:
    _require_prime(ell)
    symbol = kronecker(field.discriminant, ell)
    if symbol == 1:
        return SplittingType.SPLIT
    if symbol == -1:
        return SplittingType.INERT
    return SplittingType.RAMIFIED


def factor_rational_ideal(field: QuadField, m: int) -> IdealFactorization:
    """Factor m*O_K into prime ideals."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    out: IdealFactorization = {}
    for ell, r in sorted(factorize(m).items()):
        kind = splitting_type(field, ell)
        for label in field.labels_over(ell):
            out[label] = 2 * r if kind is SplittingType.RAMIFIED else r
    return out


def factorization_norm(fac: IdealFactorization) -> int:
    n = 1
    for label, e in fac.items():
        n *= label.norm**e
    return n
