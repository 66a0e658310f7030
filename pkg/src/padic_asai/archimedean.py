"""Parameters at infinity and Hodge types attached to a Hilbert weight.

An exponent pair (u, v) stands for the character z^u zbar^v of C^x.  The
component of weight (n_i, v_i) at the i-th real place has parameter
{(1/2 - v_i, -n_i - v_i - 1/2), swap}; the Asai transfer takes the
pairwise exponent sums, and the normalised transfer (twisted by |det|^(1/2))
adds 1/2 to every exponent.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidWeight, NonCohomologicalWeight
from .hilbert_eigensystem import HilbertWeight
from .weight_slope import RHO, GL4Weight

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class ExponentPair:
    u: Fraction
    v: Fraction

    def __post_init__(self):
        for x in (self.u, self.v):
            if Fraction(x).denominator > 2:
                raise ValueError(f"exponent {x} is not a half-integer")
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))

    def swap(self) -> ExponentPair:
        return ExponentPair(self.v, self.u)

    def __add__(self, other: ExponentPair) -> ExponentPair:
        return ExponentPair(self.u + other.u, self.v + other.v)

    def shift(self, c) -> ExponentPair:
        return ExponentPair(self.u + c, self.v + c)


@dataclass(frozen=True, order=True)
class HodgeType:
    p: int
    q: int

    def __add__(self, other: HodgeType) -> HodgeType:
        return HodgeType(self.p + other.p, self.q + other.q)


def _check(kappa: HilbertWeight):
    problems = kappa.violations()
    if problems:
        raise InvalidWeight("; ".join(problems))


def parameter_of_component(n: int, v: int) -> list[ExponentPair]:
    first = ExponentPair(HALF - v, -n - v - HALF)
    return [first, first.swap()]


def asai_parameter(kappa: HilbertWeight, normalized: bool = False) -> list[ExponentPair]:
    """The four pairs, sorted by first exponent descending."""
    _check(kappa)
    n1, n2 = kappa.n1, kappa.n2
    s = kappa.v1 + kappa.v2
    one = ExponentPair(1 - s, -n1 - n2 - s - 1)
    two = ExponentPair(-n2 - s, -n1 - s)
    pairs = [one, one.swap(), two, two.swap()]
    if normalized:
        pairs = [x.shift(HALF) for x in pairs]
    return sorted(pairs, reverse=True)


def tensor_parameter(kappa: HilbertWeight, normalized: bool = False) -> list[ExponentPair]:
    """Oracle: all four exponent sums of one pair from each component."""
    _check(kappa)
    a, a_sw = parameter_of_component(kappa.n1, kappa.v1)
    b, b_sw = parameter_of_component(kappa.n2, kappa.v2)
    pairs = [a + b, a_sw + b_sw, a + b_sw, a_sw + b]
    if normalized:
        pairs = [x.shift(HALF) for x in pairs]
    return sorted(pairs, reverse=True)


def hodge_types_of_component(n: int, v: int) -> list[HodgeType]:
    return [HodgeType(n + 1 + v, v), HodgeType(v, n + 1 + v)]


def hodge_types_asai(kappa: HilbertWeight) -> list[HodgeType]:
    """The four Hodge types of the Asai motive, sorted by p descending."""
    _check(kappa)
    n1, n2 = kappa.n1, kappa.n2
    s = kappa.v1 + kappa.v2
    types = [
        HodgeType(n1 + n2 + s + 2, s),
        HodgeType(n1 + 1 + s, n2 + 1 + s),
        HodgeType(n2 + 1 + s, n1 + 1 + s),
        HodgeType(s, n1 + n2 + s + 2),
    ]
    return sorted(types, reverse=True)


def hodge_types_tensor(kappa: HilbertWeight) -> list[HodgeType]:
    """Oracle: every pairwise sum of the Hodge types at the two places."""
    _check(kappa)
    left = hodge_types_of_component(kappa.n1, kappa.v1)
    right = hodge_types_of_component(kappa.n2, kappa.v2)
    return sorted((h + g for h in left for g in right), reverse=True)


def has_middle_type(types) -> bool:
    return any(h.p == h.q for h in types)


def same_multiset(xs, ys) -> bool:
    return Counter(xs) == Counter(ys)


def mu_from_infinity(kappa: HilbertWeight) -> GL4Weight:
    """mu read off the normalised parameter: mu + rho = 3/2 - (first exponents, ascending)."""
    _check(kappa)
    if kappa.n1 == kappa.n2:
        raise NonCohomologicalWeight("n1 = n2: the normalised parameter is not regular")
    if kappa.n1 < kappa.n2:
        raise InvalidWeight("expects n1 > n2")
    firsts = sorted(x.u for x in asai_parameter(kappa, normalized=True))
    lam = [Fraction(3, 2) - u for u in firsts]
    mu = [x - r for x, r in zip(lam, RHO)]
    if any(x.denominator != 1 for x in mu):
        raise AssertionError(f"non-integral weight {mu} from the parameter")
    mu = [int(x) for x in mu]
    return GL4Weight(*mu, w=mu[0] + mu[3])
