"""Exact scalar arithmetic.

Two scalar modes are supported:

* numeric: :class:`fractions.Fraction` (ints are accepted and promoted);
* symbolic: :class:`MPoly`, a sparse polynomial over Q in indeterminates that
  are declared up front through a :class:`PolyRing`.

Mixing the two promotes the rational to a constant ``MPoly``.  ``MPoly``
exponents may be negative so that exact division by a monomial (needed for
refinement characters such as ``p^(m+1) / alpha``) stays inside the ring.

On top of scalars the module provides :class:`UniPoly` (dense univariate
polynomials in a formal variable X) and :class:`PowerSeries` (truncated
series whose precision is tracked pessimistically).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import IndeterminateMismatch, NotInvertible, NotPrimeError, UndeclaredValuation

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


# ---------------------------------------------------------------------------
# small integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"{p!r} is not prime")


# ---------------------------------------------------------------------------
# symbolic mode


class PolyRing:
    """An ordered, fixed set of indeterminate names.

    Every symbolic computation session declares its ring once; values from
    rings with different name tuples never combine.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"invalid indeterminate name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate indeterminates in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise IndeterminateMismatch(
                f"indeterminate {name!r} was not declared in {self!r}"
            ) from None

    def gen(self, name: str) -> MPoly:
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return MPoly(self, {tuple(exps): Fraction(1)})

    def gens(self) -> tuple[MPoly, ...]:
        return tuple(self.gen(n) for n in self.names)

    def const(self, value) -> MPoly:
        value = Fraction(value)
        terms = {(0,) * self.nvars: value} if value else {}
        return MPoly(self, terms)

    def zero(self) -> MPoly:
        return MPoly(self, {})

    def one(self) -> MPoly:
        return self.const(1)


class MPoly:
    """Immutable sparse Laurent polynomial over Q in a declared ring."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], Fraction]):
        self.ring = ring
        clean = {}
        for exps, c in terms.items():
            if len(exps) != ring.nvars:
                raise ValueError("exponent vector length does not match ring")
            if c:
                clean[tuple(exps)] = Fraction(c)
        self._terms = clean
        self._hash = None

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(e == zero for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(min(e, default=0) >= 0 for e in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def variables(self) -> set[str]:
        used = set()
        for exps in self._terms:
            used.update(self.ring.names[i] for i, e in enumerate(exps) if e)
        return used

    def coefficient_denominators(self) -> set[int]:
        return {c.denominator for c in self._terms.values()}

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> MPoly | None:
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise IndeterminateMismatch(
                    f"cannot combine values over {self.ring!r} and {other.ring!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly(self.ring, terms)

    __rmul__ = __mul__

    def _inverse(self) -> MPoly:
        if not self.is_monomial():
            raise NotInvertible(f"{self} is not a monomial; only monomials are units")
        ((e, c),) = self._terms.items()
        return MPoly(self.ring, {tuple(-a for a in e): 1 / c})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other._inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self._inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self._inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise IndeterminateMismatch(
                    f"cannot compare values over {self.ring!r} and {other.ring!r}"
                )
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((self.ring.names, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, values: Mapping[str, Fraction | int]) -> Fraction:
        """Substitute rationals for every indeterminate that occurs."""
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    term *= Fraction(values[self.ring.names[i]]) ** e
            total += term
        return total

    def __repr__(self) -> str:
        return f"MPoly({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


Scalar = Union[Fraction, MPoly]


def to_scalar(x) -> Scalar:
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def is_symbolic(x) -> bool:
    return isinstance(x, MPoly)


def is_zero(x) -> bool:
    return not x


def ring_of(*values) -> PolyRing | None:
    """The common ring of the symbolic values among ``values`` (None if all numeric)."""
    ring = None
    for v in values:
        if isinstance(v, MPoly):
            if ring is None:
                ring = v.ring
            elif v.ring != ring:
                raise IndeterminateMismatch(f"{ring!r} vs {v.ring!r}")
    return ring


def rational_value(x) -> Fraction | None:
    """The rational value of ``x`` when it is constant, else None."""
    if isinstance(x, MPoly):
        return x.constant_term() if x.is_constant() else None
    return Fraction(x)


def scalar_inverse(x) -> Scalar:
    if isinstance(x, MPoly):
        return x._inverse()
    if not x:
        raise NotInvertible("division by zero")
    return 1 / Fraction(x)


# ---------------------------------------------------------------------------
# rendering and parsing


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial_str(ring: PolyRing, exps: tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(ring.names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _term_order(exps: tuple[int, ...]):
    return (-sum(exps), tuple(-e for e in exps))


def format_scalar(x) -> str:
    """Canonical text: ``num/den`` for rationals, sorted sum of terms for MPoly."""
    if not isinstance(x, MPoly):
        return format_rational(x)
    if x.is_zero():
        return "0"
    out = []
    for exps in sorted(x._terms, key=_term_order):
        c = x._terms[exps]
        mono = _monomial_str(x.ring, exps)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ScalarSyntaxError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, ring: PolyRing | None):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                break
            pos = m.end()
            if m.group(1):
                self.tokens.append(("num", int(m.group(1))))
            elif m.group(2):
                self.tokens.append(("id", m.group(2)))
            elif m.group(3) in "+-*/^()":
                self.tokens.append(("op", m.group(3)))
            else:
                raise ScalarSyntaxError(f"unexpected character {m.group(3)!r} in {text!r}")
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Scalar:
        if not self.tokens:
            raise ScalarSyntaxError("empty value")
        value = self.expr()
        if self.i != len(self.tokens):
            raise ScalarSyntaxError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except ZeroDivisionError as exc:
                    raise ScalarSyntaxError(f"division by zero in {self.text!r}") from exc
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise ScalarSyntaxError(f"exponent must be an integer in {self.text!r}")
            try:
                return base ** (sign * val)
            except ZeroDivisionError as exc:
                raise ScalarSyntaxError(f"zero to a negative power in {self.text!r}") from exc
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Fraction(val)
        if kind == "id":
            if self.ring is None:
                raise ScalarSyntaxError(f"symbol {val!r} not allowed in numeric mode")
            if val not in self.ring:
                raise ScalarSyntaxError(f"undeclared symbol {val!r}")
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ScalarSyntaxError(f"unbalanced parenthesis in {self.text!r}")
            return inner
        raise ScalarSyntaxError(f"unexpected token {val!r} in {self.text!r}")


def parse_scalar(text: str, ring: PolyRing | None = None) -> Scalar:
    """Parse a rational (``-3/7``) or, given a ring, a polynomial expression.

    With a ring every result is an MPoly, so the mode of the parsed value is
    fixed by the caller rather than by the text.
    """
    value = _Parser(text, ring).parse()
    if ring is not None and not isinstance(value, MPoly):
        value = ring.const(value)
    return value


# ---------------------------------------------------------------------------
# p-adic valuation


def padic_valuation(x, p: int) -> int | float:
    """Additive p-adic valuation of a rational; ``math.inf`` for zero."""
    _require_prime(p)
    q = rational_value(x)
    if q is None:
        raise TypeError("valuation of a non-constant symbolic value needs declared valuations")
    if q == 0:
        return math.inf
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def monomial_valuation(x, p: int, declared: Mapping[str, Fraction]) -> Fraction | float:
    """Valuation of ``c * prod(x_i^e_i)`` given declared valuations of the x_i."""
    if not isinstance(x, MPoly):
        v = padic_valuation(x, p)
        return v if v == math.inf else Fraction(v)
    _require_prime(p)
    if x.is_zero():
        return math.inf
    if not x.is_monomial():
        raise ValueError(f"valuation of non-monomial {x} is not determined by its symbols")
    ((exps, c),) = x.items()
    total = Fraction(padic_valuation(c, p))
    for name, e in zip(x.ring.names, exps):
        if e:
            if name not in declared:
                raise UndeclaredValuation(f"no valuation declared for symbol {name!r}")
            total += e * Fraction(declared[name])
    return total


# ---------------------------------------------------------------------------
# univariate polynomials and power series


def _scalar_list(values: Iterable) -> list[Scalar]:
    return [to_scalar(v) for v in values]


class UniPoly:
    """Dense polynomial in X; ``coeffs[i]`` is the coefficient of X^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = _scalar_list(coeffs)
        ring_of(*cs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Sequence) -> UniPoly:
        poly = cls([1])
        for r in roots:
            poly = poly * cls([-to_scalar(r), 1])
        return poly

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other) -> UniPoly:
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed(self, n: int | None = None) -> UniPoly:
        """X^n * f(1/X); ``n`` defaults to the degree."""
        n = self.degree() if n is None else n
        if n < self.degree():
            raise ValueError("reversal degree smaller than polynomial degree")
        return UniPoly(self[n - i] for i in range(n + 1))

    def __repr__(self) -> str:
        return f"UniPoly([{', '.join(format_scalar(c) for c in self.coeffs)}])"


def poly_mul(a: UniPoly, b: UniPoly) -> UniPoly:
    """Exact product; raises IndeterminateMismatch for incompatible symbolic rings."""
    if a.is_zero() or b.is_zero():
        ring_of(*a.coeffs, *b.coeffs)
        return UniPoly()
    out: list = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] = out[i + j] + x * y
    return UniPoly(out)


class PowerSeries:
    """Power series in X known modulo X^(order+1)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = _scalar_list(coeffs)
        ring_of(*cs)
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_poly(cls, poly: UniPoly, order: int) -> PowerSeries:
        return cls(poly.coeffs, order)

    def __getitem__(self, i: int) -> Scalar:
        if i > self.order:
            raise IndexError(f"coefficient {i} beyond precision O(X^{self.order + 1})")
        return self.coeffs[i]

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise ValueError("cannot raise the precision of a series")
        return PowerSeries(self.coeffs, order)

    def __add__(self, other: PowerSeries) -> PowerSeries:
        n = min(self.order, other.order)
        return PowerSeries((self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), n)

    def __neg__(self) -> PowerSeries:
        return PowerSeries((-c for c in self.coeffs), self.order)

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        return self + (-other)

    def __mul__(self, other) -> PowerSeries:
        if not isinstance(other, PowerSeries):
            return PowerSeries((c * other for c in self.coeffs), self.order)
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = Fraction(0)
            for i in range(k + 1):
                a = self.coeffs[i]
                if a:
                    acc = acc + a * other.coeffs[k - i]
            out.append(acc)
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def first_difference(self, other: PowerSeries) -> int | None:
        """Index of the first coefficient where the two series differ, within common precision."""
        for i in range(min(self.order, other.order) + 1):
            if self.coeffs[i] != other.coeffs[i]:
                return i
        return None

    def __repr__(self) -> str:
        body = ", ".join(format_scalar(c) for c in self.coeffs)
        return f"PowerSeries([{body}], order={self.order})"


def series_inverse(f: PowerSeries) -> PowerSeries:
    """g with f*g = 1 + O(X^(order+1)); f(0) must be a nonzero rational."""
    c0 = rational_value(f.coeffs[0])
    if c0 is None or c0 == 0:
        raise NotInvertible(f"constant term {format_scalar(f.coeffs[0])} is not invertible")
    inv0 = 1 / c0
    g: list = [inv0 if not isinstance(f.coeffs[0], MPoly) else f.coeffs[0].ring.const(inv0)]
    for n in range(1, f.order + 1):
        acc = Fraction(0)
        for i in range(1, n + 1):
            fi = f.coeffs[i]
            if fi:
                acc = acc + fi * g[n - i]
        g.append(-acc * inv0)
    return PowerSeries(g, f.order)
