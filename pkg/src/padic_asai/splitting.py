"""Splitting rings: adjoin roots of monic quadratics over the scalar domain.

Used as an independent route to the Frobenius eigenvalues alpha, beta that
the rest of the package keeps implicit.  An element is a dict from 0/1
exponent tuples (one slot per adjoined root r_i) to scalars, reduced with
r_i^2 = t_i r_i - e_i.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact_algebra import Scalar, UniPoly, format_scalar, to_scalar


class SplittingRing:
    def __init__(self, quadratics: Sequence[tuple]):
        """``quadratics`` lists (t_i, e_i): r_i is a root of X^2 - t_i X + e_i."""
        self.quadratics = tuple((to_scalar(t), to_scalar(e)) for t, e in quadratics)
        self.n = len(self.quadratics)

    def const(self, c) -> SplitElt:
        return SplitElt(self, {(0,) * self.n: to_scalar(c)})

    def root(self, i: int) -> SplitElt:
        exps = tuple(1 if j == i else 0 for j in range(self.n))
        return SplitElt(self, {exps: Fraction(1)})

    def conjugate_root(self, i: int) -> SplitElt:
        """t_i - r_i, the other root of the i-th quadratic."""
        return self.const(self.quadratics[i][0]) - self.root(i)


class SplitElt:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: SplittingRing, terms: dict):
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if v}

    def _lift(self, other) -> SplitElt:
        if isinstance(other, SplitElt):
            if other.ring is not self.ring:
                raise ValueError("elements of different splitting rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SplitElt(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SplitElt(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        acc = SplitElt(self.ring, {})
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                acc = acc + self._monomial_product(k1, k2, v1 * v2)
        return acc

    __rmul__ = __mul__

    def _monomial_product(self, k1, k2, coeff) -> SplitElt:
        # expand slot by slot; r_i^2 contributes t_i r_i - e_i
        result = {(): coeff}
        for i, (a, b) in enumerate(zip(k1, k2)):
            step = {}
            t, e = self.ring.quadratics[i]
            options = [(a + b, Fraction(1))] if a + b < 2 else [(1, t), (0, -e)]
            for prefix, c in result.items():
                for ex, factor in options:
                    if not factor:
                        continue
                    key = prefix + (ex,)
                    step[key] = step.get(key, Fraction(0)) + c * factor
            result = step
        return SplitElt(self.ring, result)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = self.ring.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        try:
            diff = self - other
        except (ValueError, TypeError):
            return NotImplemented
        return not diff.terms

    __hash__ = None

    def base_value(self) -> Scalar:
        """The element as a base scalar; ValueError if it still involves a root."""
        zero = (0,) * self.ring.n
        if any(k != zero for k in self.terms):
            raise ValueError(f"{self} is not in the base ring")
        return self.terms.get(zero, Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            mono = "*".join(f"r{i}" for i, x in enumerate(k) if x)
            parts.append(f"({format_scalar(v)})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def elementary_symmetric(values: Sequence[SplitElt]) -> list[SplitElt]:
    ring = values[0].ring
    out = []
    for j in range(len(values) + 1):
        acc = ring.const(0)
        for combo in combinations(values, j):
            prod = ring.const(1)
            for v in combo:
                prod = prod * v
            acc = acc + prod
        out.append(acc)
    return out


def charpoly_from_roots(roots: Sequence[SplitElt]) -> UniPoly:
    """prod (X - gamma) over ``roots``; every coefficient must land in the base."""
    e = elementary_symmetric(roots)
    n = len(roots)
    coeffs = [(-1) ** (n - i) * e[n - i].base_value() for i in range(n + 1)]
    return UniPoly(coeffs)


def power_sum_h(t, e, r: int) -> Scalar:
    """h_r(alpha, beta) = sum alpha^i beta^(r-i) computed in the splitting ring."""
    ring = SplittingRing([(t, e)])
    alpha, beta = ring.root(0), ring.conjugate_root(0)
    acc = ring.const(0)
    for i in range(r + 1):
        acc = acc + alpha**i * beta ** (r - i)
    return acc.base_value()


def split_tensor_charpoly(a, s, a2, s2, ell: int) -> UniPoly:
    """prod over {aa', ab', ba', bb'} with (a, b) roots of X^2 - aX + ell*s etc."""
    ring = SplittingRing([(a, ell * to_scalar(s)), (a2, ell * to_scalar(s2))])
    al, be = ring.root(0), ring.conjugate_root(0)
    al2, be2 = ring.root(1), ring.conjugate_root(1)
    return charpoly_from_roots([al * al2, al * be2, be * al2, be * be2])


def inert_tensor_charpoly(a, s, ell: int, eps: int) -> UniPoly:
    """prod over {eps*alpha, eps*r, -eps*r, eps*beta} with r^2 = alpha*beta."""
    e = ell**2 * to_scalar(s)
    ring = SplittingRing([(a, e), (0, -e)])
    al, be, r = ring.root(0), ring.conjugate_root(0), ring.root(1)
    return charpoly_from_roots([eps * al, eps * r, -eps * r, eps * be])


def inert_full_character(alpha, p: int, m: int, eps: int) -> tuple[SplittingRing, list[SplitElt]]:
    """chi(u_1..u_4) in the ring adjoining r with r^2 = alpha*beta = p^(2m+2)."""
    alpha = to_scalar(alpha)
    beta = Fraction(p) ** (2 * m + 2) / alpha
    ring = SplittingRing([(0, -alpha * beta)])
    r = ring.root(0)
    pf = Fraction(p)
    chi = [
        ring.const(eps * alpha),
        r * (-eps / pf),
        r * (eps / pf**2),
        ring.const(eps * beta / pf**3),
    ]
    return ring, chi
