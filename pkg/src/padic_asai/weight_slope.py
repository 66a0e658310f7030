"""GL(4) weights, Weyl-group slope bounds and classicality.

The weight of the transferred packet is obtained by pulling a Hilbert weight
character back along

    j(kappa)(t1, t2, t3, t4) = (t1 t2)^(-1) kappa(t1 t2, t3 t4, t1 t3, t2 t4),

where kappa has exponents (n1+v1, v1, n2+v2, v2) on its four torus
coordinates.  Slope bounds minimise the cost of the dot action
w.mu = (mu+rho)^w - rho against the exponent vector c of the element of the
torus that defines the controlling operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import InvalidWeight
from .exact_algebra import Scalar, monomial_valuation
from .hilbert_eigensystem import HilbertEigenPacket, HilbertWeight, Regime

RHO = (3, 2, 1, 0)
# exponents of p in diag(1, p, p^2, p^3) and diag(1, p, p^3, p^4)
T_EXPONENTS = {Regime.SPLIT: (0, 1, 2, 3), Regime.INERT: (0, 1, 3, 4)}


@dataclass(frozen=True)
class GL4Weight:
    mu1: int
    mu2: int
    mu3: int
    mu4: int
    w: int | None = None  # purity weight; defaults to mu1 + mu4

    def __post_init__(self):
        if self.w is None:
            object.__setattr__(self, "w", self.mu1 + self.mu4)

    @property
    def mu(self) -> tuple:
        return (self.mu1, self.mu2, self.mu3, self.mu4)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.mu) + ")"


@dataclass(frozen=True)
class SlopeContext:
    regime: Regime

    @property
    def rho(self) -> tuple[int, ...]:
        return RHO

    @property
    def c(self) -> tuple[int, ...]:
        return T_EXPONENTS[self.regime]


@dataclass(frozen=True)
class PurityReport:
    pure: bool
    dominant: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.pure and self.dominant


def _kappa_exponents(n1, n2, v1, v2) -> tuple[int, int, int, int]:
    return (n1 + v1, v1, n2 + v2, v2)


def pullback_exponents(n1: int, n2: int, v1: int, v2: int) -> tuple[int, int, int, int]:
    """Exponents of t1..t4 in j(kappa), without any validity check."""
    k1, k2, k3, k4 = _kappa_exponents(n1, n2, v1, v2)
    # kappa(t1t2, t3t4, t1t3, t2t4) then divide by t1 t2
    return (k1 + k3 - 1, k1 + k4 - 1, k2 + k3, k2 + k4)


def weight_map_j(kappa: HilbertWeight) -> GL4Weight:
    problems = kappa.violations()
    if problems:
        raise InvalidWeight("; ".join(problems))
    mu = pullback_exponents(kappa.n1, kappa.n2, kappa.v1, kappa.v2)
    return GL4Weight(*mu, w=2 * kappa.m - 1)


def purity_dominance_check(mu: GL4Weight) -> PurityReport:
    failures = []
    a, b, c, d = mu.mu
    pure = a + d == b + c == mu.w
    if not pure:
        failures.append(f"impure: mu1+mu4={a + d}, mu2+mu3={b + c}, w={mu.w}")
    dominant = a >= b >= c >= d
    if not dominant:
        failures.append(f"not dominant: {mu}")
    return PurityReport(pure, dominant, tuple(failures))


def _costs(mu, ctx: SlopeContext):
    lam = [Fraction(x) + r for x, r in zip(mu, ctx.rho)]
    c = ctx.c
    base = sum(ci * li for ci, li in zip(c, lam))
    for perm in permutations(range(4)):
        if perm == (0, 1, 2, 3):
            continue
        # (lam^w)_i = lam_{w^-1(i)}; perm plays the role of w^-1
        yield perm, sum(c[i] * lam[perm[i]] for i in range(4)) - base


def _as_mu(mu) -> tuple:
    return mu.mu if isinstance(mu, GL4Weight) else tuple(mu)


def weyl_slope_bound_bruteforce(mu, ctx: SlopeContext) -> Fraction:
    """min over the 23 nontrivial w of sum c_i ((w.mu)_i - mu_i)."""
    mu = _as_mu(mu)
    if not all(x >= y for x, y in zip(mu, mu[1:])):
        raise InvalidWeight(f"slope bound needs a dominant weight, got {mu}")
    return min(cost for _, cost in _costs(mu, ctx))


def transposition_cost(mu, ctx: SlopeContext, i: int, j: int) -> Fraction:
    """Cost of the transposition (i j), 1-based positions."""
    mu = _as_mu(mu)
    want = list(range(4))
    want[i - 1], want[j - 1] = want[j - 1], want[i - 1]
    for perm, cost in _costs(mu, ctx):
        if list(perm) == want:
            return cost
    raise ValueError(f"bad transposition ({i} {j})")


def _pair(kappa) -> tuple[int, int]:
    if isinstance(kappa, HilbertWeight):
        return kappa.n1, kappa.n2
    n1, n2 = kappa
    return n1, n2


def mu_for_pair(n1: int, n2: int) -> GL4Weight:
    """A GL(4) weight with the gaps of j(n1, n2, v) for any v.

    Slope costs depend only on the gaps mu_i - mu_{i+1}, which are
    (n2, n1-n2-1, n2) whatever v is, so v = 0 is used even when no valid
    weight with these n exists.
    """
    return GL4Weight(*pullback_exponents(n1, n2, 0, 0))


def small_slope_closed_form(kappa, regime: Regime) -> Fraction:
    n1, n2 = _pair(kappa)
    if not n1 > n2 >= 0:
        raise InvalidWeight(f"closed-form slope needs n1 > n2 >= 0, got ({n1}, {n2})")
    if regime is Regime.SPLIT:
        return Fraction(min(n1 - n2, n2 + 1))
    return Fraction(min(n2 + 1, 2 * (n1 - n2)))


def slope_bound(kappa, regime: Regime) -> Fraction:
    """Brute-force bound for a Hilbert weight (or bare (n1, n2) pair)."""
    n1, n2 = _pair(kappa)
    if isinstance(kappa, HilbertWeight) and kappa.is_valid():
        mu = weight_map_j(kappa)
    else:
        mu = mu_for_pair(n1, n2)
    return weyl_slope_bound_bruteforce(mu, SlopeContext(regime))


# -- classicality ------------------------------------------------------------


def classicality_threshold(kappa, regime: Regime) -> Fraction:
    """Bound that the relevant valuation must stay strictly below."""
    n1, n2 = _pair(kappa)
    if regime is Regime.SPLIT:
        return small_slope_closed_form((n1, n2), regime)
    if not n1 > n2 >= 0:
        raise InvalidWeight(f"threshold needs n1 > n2 >= 0, got ({n1}, {n2})")
    return min(Fraction(n2 + 1, 4), Fraction(n1 - n2, 2))


@dataclass(frozen=True)
class ClassicalityReport:
    regime: Regime
    quantity: str
    valuation: Fraction
    threshold: Fraction

    @property
    def classical(self) -> bool:
        return self.valuation < self.threshold

    def __bool__(self) -> bool:
        return self.classical


def classicality_check(pkt: HilbertEigenPacket) -> ClassicalityReport:
    """Small-slope criterion: split v_p(alpha^4 alpha_c^2), inert v_p(alpha)."""
    ref = pkt.refinement
    declared = ref.valuations
    if pkt.regime is Regime.SPLIT:
        val = 4 * monomial_valuation(ref.alpha, pkt.p, declared) + 2 * monomial_valuation(
            ref.alpha_c, pkt.p, declared
        )
        quantity = "v_p(alpha_p^4 alpha_pc^2)"
    else:
        val = monomial_valuation(ref.alpha, pkt.p, declared)
        quantity = "v_p(alpha_p)"
    return ClassicalityReport(pkt.regime, quantity, val, classicality_threshold(pkt.weight, pkt.regime))


def classical_weight_membership(kappa: HilbertWeight, regime: Regime) -> bool:
    """kappa valid, n1 > n2 >= 0, and 2v1+v2 = 0 (split) or 3v1+v2 = 0 (inert)."""
    if not kappa.is_valid() or not kappa.n1 > kappa.n2 >= 0:
        return False
    coeff = 2 if regime is Regime.SPLIT else 3
    return coeff * kappa.v1 + kappa.v2 == 0


def classical_weights(n1: int, n2: int, regime: Regime) -> list[HilbertWeight]:
    """All classical weights with the given n; at most one, often none."""
    # the linear condition plus n1+2v1 = n2+2v2 pins v1 = (n2-n1)/6 or /8
    denom = 6 if regime is Regime.SPLIT else 8
    if (n2 - n1) % denom:
        return []
    v1 = (n2 - n1) // denom
    kappa = HilbertWeight(n1, n2, v1, -(2 if regime is Regime.SPLIT else 3) * v1)
    return [kappa] if classical_weight_membership(kappa, regime) else []


# -- star action ------------------------------------------------------------


def star_exponent(mu, regime: Regime) -> int:
    """Exponent e with mu(t) = p^e for the torus element t of the regime."""
    return sum(c * x for c, x in zip(T_EXPONENTS[regime], _as_mu(mu)))


def star_eigenvalue(pkt: HilbertEigenPacket, sign) -> Scalar:
    """Controlling eigenvalue rescaled by mu(t)^(-1)."""
    from .asai_transfer import transfer_eigenpacket

    image = transfer_eigenpacket(pkt, sign)
    return image.ppart.controlling / Fraction(pkt.p) ** star_exponent(image.weight, pkt.regime)


def star_defect_exponent(kappa: HilbertWeight, regime: Regime) -> int:
    """Power of p left in the star eigenvalue: -(4v1+2v2) split, -(6v1+2v2) inert."""
    if regime is Regime.SPLIT:
        return -(4 * kappa.v1 + 2 * kappa.v2)
    return -(6 * kappa.v1 + 2 * kappa.v2)


def unit_condition(kappa: HilbertWeight, unit_norm: int) -> bool:
    """Whether the weight character is trivial on the supplied fundamental unit.

    On a unit eps the central part of kappa is N(eps)^m, so only the sign of
    the norm and the parity of m matter.
    """
    if unit_norm not in (1, -1):
        raise ValueError("a unit has norm +1 or -1")
    return unit_norm**kappa.m == 1
