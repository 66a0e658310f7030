"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class AsaiError(Exception):
    """Base class for all domain errors raised by padic_asai."""


class NotPrimeError(AsaiError, ValueError):
    pass


class IndeterminateMismatch(AsaiError, TypeError):
    """Two symbolic values live in rings with different indeterminate sets."""


class NotInvertible(AsaiError, ZeroDivisionError):
    pass


class RamifiedPrimeError(AsaiError):
    """A query touched a prime ramified in K, which carries no Hecke data."""


class MissingHeckeData(AsaiError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "missing Hecke data"


class RegimeMismatch(AsaiError):
    pass


class NonCohomologicalWeight(AsaiError):
    """n1 == n2: the Asai motive has a middle Hodge type."""


class InvalidWeight(AsaiError, ValueError):
    pass


class ProfileViolation(AsaiError):
    """Hecke data does not satisfy e_l = N(l)^(k-1) required by the L-function identity."""


class UndeclaredValuation(AsaiError):
    pass


class IncomparablePackets(AsaiError):
    pass


class InvalidPacket(AsaiError):
    """A packet failed validation; ``diagnostics`` lists every violation."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))
