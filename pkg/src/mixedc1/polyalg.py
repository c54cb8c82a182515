"""Exact univariate and bivariate polynomial arithmetic over the rationals.

Everything here is built on :class:`fractions.Fraction`; no floating point
value ever enters a coefficient.  Polynomials are stored in the monomial
basis, Bernstein coefficients are obtained by conversion.
"""
from __future__ import annotations

import math
import warnings
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]

#: degree of the zero polynomial
NEG_INF = -math.inf


class ZeroDivisorError(ZeroDivisionError):
    """Division by the zero polynomial."""


def as_rational(x) -> Fraction:
    """Parse an int, Fraction, decimal/``"p/q"`` string or float (exactly)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        # shortest repr, so 0.1 means 1/10 and not the binary double
        return Fraction(repr(x))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(x: Fraction) -> str:
    """Decimal string when the expansion terminates, ``"p/q"`` otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    s = format(Decimal(x.numerator) / Decimal(x.denominator), "f")
    return s


class Poly:
    """Immutable univariate polynomial; ``coeffs[i]`` multiplies ``v**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction helpers
    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def var(cls) -> "Poly":
        return cls([0, 1])

    # basic properties
    @property
    def degree(self):
        """Index of the leading coefficient, ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def cf(self, j: int) -> Fraction:
        """Coefficient of ``v**j`` (zero outside the stored range)."""
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Fraction(0)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.cf(i) + other.cf(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_rational(c)
        return Poly(a / c for a in self.coeffs)

    def __pow__(self, n: int):
        out = Poly([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        return quo_rem(self, other)

    def __floordiv__(self, other):
        return quo_rem(self, other)[0]

    def __mod__(self, other):
        return quo_rem(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == Poly([other]).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, t):
        t = as_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def deriv(self, order: int = 1) -> "Poly":
        p = self
        for _ in range(order):
            p = Poly(i * c for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def integ(self) -> "Poly":
        """Antiderivative vanishing at zero."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def compose(self, q: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def evalf(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("v" if i == 1 else f"v^{i}")
            terms.append(f"({c})" + (f"*{mon}" if mon else ""))
        return "Poly(" + " + ".join(terms) + ")"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


def _coerce(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def poly_arith(p: Poly, q, op: str) -> Poly:
    """Dispatch ``add``/``sub``/``mul``/``scale`` (``q`` is a scalar for scale)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p * as_rational(q)
    raise ValueError(f"unknown op {op!r}")


def quo_rem(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if q.is_zero():
        raise ZeroDivisorError("division by the zero polynomial")
    rem = list(p.coeffs)
    dq = len(q.coeffs) - 1
    lq = q.coeffs[-1]
    if len(rem) - 1 < dq:
        return Poly(), p
    quot = [Fraction(0)] * (len(rem) - dq)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq] / lq
        quot[k] = c
        if c:
            for j, b in enumerate(q.coeffs):
                rem[k + j] -= c * b
    return Poly(quot), Poly(rem[:dq])


def divides(q: Poly, p: Poly) -> bool:
    return quo_rem(p, q)[1].is_zero()


def exact_div(p: Poly, q: Poly) -> Poly:
    quot, rem = quo_rem(p, q)
    if not rem.is_zero():
        raise ArithmeticError(f"{q!r} does not divide {p!r}")
    return quot


def gcd_normalized(p: Poly, q: Poly) -> Poly:
    """Euclidean gcd scaled so that its value at zero is one.

    When the gcd vanishes at zero it is made monic instead and a
    :class:`RuntimeWarning` is emitted.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, quo_rem(a, b)[1]
    g0 = a(0)
    if g0 != 0:
        return a / g0
    warnings.warn("gcd vanishes at v=0, normalizing by leading coefficient",
                  RuntimeWarning, stacklevel=2)
    return a / a.lc()


# --- Bernstein basis -------------------------------------------------------

@lru_cache(maxsize=None)
def _bern_to_mono(d: int) -> tuple[tuple[Fraction, ...], ...]:
    # row i: monomial coefficients of B^d_i
    rows = []
    for i in range(d + 1):
        row = [Fraction(0)] * (d + 1)
        for k in range(i, d + 1):
            row[k] = Fraction(math.comb(d, i) * math.comb(d - i, k - i) * (-1) ** (k - i))
        rows.append(tuple(row))
    return tuple(rows)


def bernstein_poly(d: int, i: int) -> Poly:
    return Poly(_bern_to_mono(d)[i])


def bernstein_convert(coeffs: Sequence, d: int, direction: str) -> list[Fraction]:
    """Change of basis between ``{B^d_i}`` and ``{v^i}``.

    ``to_monomial`` takes ``d+1`` Bernstein coefficients, ``from_monomial``
    takes monomial coefficients of length at most ``d+1``.
    """
    cs = [as_rational(c) for c in coeffs]
    if direction == "to_monomial":
        if len(cs) != d + 1:
            raise ValueError(f"expected {d + 1} Bernstein coefficients, got {len(cs)}")
        mat = _bern_to_mono(d)
        return [sum((cs[i] * mat[i][k] for i in range(d + 1)), Fraction(0)) for k in range(d + 1)]
    if direction == "from_monomial":
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) > d + 1:
            raise ValueError(f"degree {len(cs) - 1} exceeds Bernstein degree {d}")
        cs += [Fraction(0)] * (d + 1 - len(cs))
        return [sum((cs[k] * Fraction(math.comb(i, k), math.comb(d, k)) for k in range(i + 1)), Fraction(0))
                for i in range(d + 1)]
    raise ValueError(f"unknown direction {direction!r}")


def to_bernstein(p: Poly, d: int) -> list[Fraction]:
    return bernstein_convert(p.coeffs, d, "from_monomial")


def from_bernstein(b: Sequence, d: int) -> Poly:
    return Poly(bernstein_convert(b, d, "to_monomial"))


# --- sign on [0, 1] --------------------------------------------------------

def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.deriv()]
    while not seq[-1].is_zero():
        seq.append(-quo_rem(seq[-2], seq[-1])[1])
    seq.pop()
    return seq


def _sign_changes(seq: Sequence[Poly], t: Fraction) -> int:
    vals = [s(t) for s in seq]
    vals = [x for x in vals if x != 0]
    return sum(1 for a, b in zip(vals, vals[1:]) if (a > 0) != (b > 0))


def count_roots(p: Poly, a=0, b=1) -> int:
    """Number of distinct real roots in the half-open interval ``(a, b]``."""
    a, b = as_rational(a), as_rational(b)
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    seq = sturm_sequence(p)
    return _sign_changes(seq, a) - _sign_changes(seq, b)


def sign_constant_on_unit_interval(p: Poly) -> str:
    """``"positive"``, ``"negative"`` or ``"has_zero"`` on the closed interval [0, 1]."""
    if p.is_zero():
        return "has_zero"
    if p(0) == 0 or p(1) == 0 or count_roots(p, 0, 1) > 0:
        return "has_zero"
    return "positive" if p(0) > 0 else "negative"


# --- bivariate ---------------------------------------------------------------

class BiPoly:
    """Bivariate polynomial ``sum c[i, j] u**i v**j`` on a reference domain.

    ``kind`` is ``"triangle"`` or ``"square"`` and selects the domain used by
    :meth:`integral`.
    """

    __slots__ = ("terms", "kind")

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None, kind: str = "square"):
        if kind not in ("triangle", "square"):
            raise ValueError(f"unknown domain kind {kind!r}")
        self.kind = kind
        self.terms: dict[tuple[int, int], Fraction] = {}
        for k, c in (terms or {}).items():
            c = as_rational(c)
            if c != 0:
                self.terms[k] = c

    def _new(self, terms) -> "BiPoly":
        return BiPoly(terms, self.kind)

    def _check(self, other: "BiPoly"):
        if other.kind != self.kind:
            raise ValueError(f"incompatible domain kinds {self.kind} and {other.kind}")

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = self._new({(0, 0): as_rational(other)})
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = as_rational(other)
            return self._new({k: c * a for k, a in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return self._new(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.kind == other.kind and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=NEG_INF)

    def partial_u(self) -> "BiPoly":
        return self._new({(i - 1, j): i * c for (i, j), c in self.terms.items() if i > 0})

    def partial_v(self) -> "BiPoly":
        return self._new({(i, j - 1): j * c for (i, j), c in self.terms.items() if j > 0})

    def restrict_u0(self) -> Poly:
        n = max((j for (i, j) in self.terms if i == 0), default=-1)
        cs = [Fraction(0)] * (n + 1)
        for (i, j), c in self.terms.items():
            if i == 0:
                cs[j] = c
        return Poly(cs)

    def __call__(self, u, v) -> Fraction:
        u, v = as_rational(u), as_rational(v)
        return sum((c * u ** i * v ** j for (i, j), c in self.terms.items()), Fraction(0))

    def evalf(self, u: float, v: float) -> float:
        return sum(float(c) * u ** i * v ** j for (i, j), c in self.terms.items())

    def integral(self) -> Fraction:
        """Exact integral over the reference triangle or the unit square."""
        total = Fraction(0)
        for (i, j), c in self.terms.items():
            if self.kind == "triangle":
                total += c * Fraction(math.factorial(i) * math.factorial(j), math.factorial(i + j + 2))
            else:
                total += c * Fraction(1, (i + 1) * (j + 1))
        return total

    def __repr__(self):
        return f"BiPoly({self.kind}, {dict(sorted(self.terms.items()))})"


def bipoly_ops(f: BiPoly, op: str, g: BiPoly | None = None):
    """Named access to the bivariate bundle used by the rest of the package."""
    if op == "product":
        return f * g
    if op == "partial_u":
        return f.partial_u()
    if op == "partial_v":
        return f.partial_v()
    if op == "restrict_u0":
        return f.restrict_u0()
    if op == "integral":
        return f.integral()
    raise ValueError(f"unknown op {op!r}")


def univariate_in_u(p: Poly, kind: str) -> BiPoly:
    return BiPoly({(i, 0): c for i, c in enumerate(p.coeffs)}, kind)


def univariate_in_v(p: Poly, kind: str) -> BiPoly:
    return BiPoly({(0, j): c for j, c in enumerate(p.coeffs)}, kind)


@lru_cache(maxsize=None)
def _triangle_basis(d: int) -> dict[tuple[int, int], BiPoly]:
    u = BiPoly({(1, 0): 1}, "triangle")
    v = BiPoly({(0, 1): 1}, "triangle")
    w = BiPoly({(0, 0): 1}, "triangle") - u - v
    upow = [BiPoly({(0, 0): 1}, "triangle")]
    vpow = [upow[0]]
    wpow = [upow[0]]
    for _ in range(d):
        upow.append(upow[-1] * u)
        vpow.append(vpow[-1] * v)
        wpow.append(wpow[-1] * w)
    out = {}
    for i in range(d + 1):
        for j in range(d + 1 - i):
            k = d - i - j
            coef = math.factorial(d) // (math.factorial(i) * math.factorial(j) * math.factorial(k))
            out[(i, j)] = upow[i] * vpow[j] * wpow[k] * coef
    return out


@lru_cache(maxsize=None)
def _square_basis(d: int) -> dict[tuple[int, int], BiPoly]:
    out = {}
    for i in range(d + 1):
        bi = bernstein_poly(d, i)
        for j in range(d + 1):
            bj = bernstein_poly(d, j)
            out[(i, j)] = BiPoly({(a, b): ca * cb for a, ca in enumerate(bi.coeffs)
                                  for b, cb in enumerate(bj.coeffs)}, "square")
    return out


def bernstein_index_set(kind: str, d: int) -> list[tuple[int, int]]:
    if kind == "triangle":
        return [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    return [(i, j) for i in range(d + 1) for j in range(d + 1)]


def bezier_bipoly(net: Mapping[tuple[int, int], Scalar], d: int, kind: str) -> BiPoly:
    """Monomial form of a triangle or tensor-product Bezier net of degree ``d``."""
    basis = _triangle_basis(d) if kind == "triangle" else _square_basis(d)
    acc: dict[tuple[int, int], Fraction] = {}
    for key, b in net.items():
        b = as_rational(b)
        if b == 0:
            continue
        for mon, c in basis[key].terms.items():
            acc[mon] = acc.get(mon, 0) + b * c
    return BiPoly(acc, kind)
