"""Exact integer-polynomial algebra.

Polynomials are dense integer coefficient tuples with the constant term
first.  The canonical form used for minimal polynomials throughout the
package is *primitive*: content 1 and positive leading coefficient, which
makes equality and discriminant comparisons plain ``==`` checks.

The module provides evaluation, content/primitive-part splitting,
resultants and discriminants (fraction-free Bareiss elimination on the
Sylvester matrix), Sturm chains with exact sign-variation counts, the
rational-root test, and fractional-linear coefficient substitutions
f(x) -> (cx+d)^deg(f) * f((ax+b)/(cx+d)).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    DegreeDropError,
    DegreeError,
    EndpointRootError,
    ZeroPolynomialError,
)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, constant term first, trailing zeros trimmed."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def const(c: int) -> "IntPoly":
        return IntPoly((c,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other):
        other = IntPoly.const(other) if isinstance(other, int) else other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = IntPoly.const(other) if isinstance(other, int) else other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def eval_cleared(self, p: int, q: int) -> int:
        """q**deg(f) * f(p/q), an exact integer (q > 0)."""
        if self.is_zero():
            return 0
        acc = self.coeffs[-1]
        qpow = 1
        for c in reversed(self.coeffs[:-1]):
            qpow *= q
            acc = acc * p + c * qpow
        return acc

    def eval_fraction(self, r: Fraction) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        p, q = r.numerator, r.denominator
        return Fraction(self.eval_cleared(p, q), q ** self.degree())

    def sign_at(self, r: Fraction) -> int:
        return _sign(self.eval_cleared(r.numerator, r.denominator))

    def bit_size(self) -> int:
        return max((abs(c).bit_length() for c in self.coeffs), default=0)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree(), -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            elif i == 1:
                body = "x" if mag == 1 else f"{mag}x"
            else:
                body = f"x^{i}" if mag == 1 else f"{mag}x^{i}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)


def eval_at_rational(f: IntPoly, r: Fraction) -> Fraction:
    """Exact value of f at a rational point."""
    return f.eval_fraction(Fraction(r))


def content_primitive(f: IntPoly) -> tuple[int, IntPoly]:
    """Split f = ±c·g with c > 0 and g primitive with positive leading coefficient."""
    if f.is_zero():
        raise ZeroPolynomialError("zero polynomial has no primitive part")
    c = f.content()
    g = IntPoly(tuple(x // c for x in f.coeffs))
    if g.lc < 0:
        g = -g
    return c, g


def _bareiss_det(rows: list[list[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(rows)
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def resultant(f: IntPoly, g: IntPoly) -> int:
    if f.is_zero() or g.is_zero():
        return 0
    m, n = f.degree(), g.degree()
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(f: IntPoly) -> int:
    """disc(f) = (-1)^(m(m-1)/2) * res(f, f') / lc(f), exactly."""
    m = f.degree()
    if m < 2:
        raise DegreeError("discriminant needs degree >= 2")
    res = resultant(f, f.derivative())
    num = res if (m * (m - 1) // 2) % 2 == 0 else -res
    d, r = divmod(num, f.lc)
    if r != 0:  # always divides; guards against construction bugs
        raise ArithmeticError("leading coefficient does not divide the resultant")
    return d


@dataclass(frozen=True)
class Unimodular2x2:
    """Integer 2x2 matrix with determinant ±1, acting by (ax+b)/(cx+d)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if abs(self.det) != 1:
            raise ValueError(f"matrix {self} is not unimodular")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @staticmethod
    def identity() -> "Unimodular2x2":
        return Unimodular2x2(1, 0, 0, 1)

    def inverse(self) -> "Unimodular2x2":
        s = self.det  # 1/det == det for det = ±1
        return Unimodular2x2(self.d * s, -self.b * s, -self.c * s, self.a * s)

    def __matmul__(self, other: "Unimodular2x2") -> "Unimodular2x2":
        return Unimodular2x2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


def moebius_transform(f: IntPoly, a: int, b: int, c: int, d: int) -> IntPoly:
    """Primitive part of (cx+d)^deg(f) * f((ax+b)/(cx+d)).

    The roots of the result are the preimages of f's roots under
    t -> (at+b)/(ct+d).  Degree must be preserved; a drop means f had a
    root at the pole of the substitution, which is impossible for the
    rational-root-free polynomials this package constructs.
    """
    if a * d - b * c == 0:
        raise ValueError("singular substitution matrix")
    m = f.degree()
    if m < 1:
        raise DegreeError("substitution needs degree >= 1")
    num = IntPoly((b, a))
    den = IntPoly((d, c))
    den_pow = [IntPoly.const(1)]
    for _ in range(m):
        den_pow.append(den_pow[-1] * den)
    acc = IntPoly.const(f.coeffs[m])
    for i in range(m - 1, -1, -1):
        acc = acc * num + f.coeffs[i] * den_pow[m - i]
    if acc.degree() != m:
        raise DegreeDropError("degree dropped: polynomial has a root at the pole")
    return content_primitive(acc)[1]


def unimodular_transform(f: IntPoly, gamma: Unimodular2x2) -> IntPoly:
    return moebius_transform(f, gamma.a, gamma.b, gamma.c, gamma.d)


def rem_mod(h: IntPoly, f: IntPoly) -> IntPoly:
    """Remainder of h modulo f over Q, cleared by a positive rational factor.

    The result is an integer polynomial with the same sign as the true
    remainder at every point, content 1; zero iff f divides h.
    """
    m = f.degree()
    if m <= 0:
        return IntPoly(())
    r = [Fraction(c) for c in h.coeffs]
    flc = Fraction(f.lc)
    while len(r) - 1 >= m:
        if r[-1] == 0:
            r.pop()
            continue
        factor = r[-1] / flc
        top = len(r) - 1
        for k in range(m + 1):
            r[top - m + k] -= factor * f.coeffs[k]
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    if not r:
        return IntPoly(())
    scale = lcm(*(c.denominator for c in r))
    ints = [int(c * scale) for c in r]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return IntPoly(tuple(c // g for c in ints))


def qq_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """gcd over Q, returned as a primitive integer polynomial."""
    a, b = f, g
    if a.degree() < b.degree():
        a, b = b, a
    while not b.is_zero():
        a, b = b, rem_mod(a, b)
    if a.is_zero():
        raise ZeroPolynomialError("gcd of zero polynomials")
    return content_primitive(a)[1]


def is_squarefree(f: IntPoly) -> bool:
    if f.degree() <= 1:
        return not f.is_zero()
    return qq_gcd(f, f.derivative()).degree() == 0


@functools.lru_cache(maxsize=512)
def sturm_chain(f: IntPoly) -> tuple[IntPoly, ...]:
    """Signed-remainder chain of f; scalings are positive so signs survive."""
    if f.is_zero():
        raise ZeroPolynomialError("no Sturm chain for the zero polynomial")
    head = IntPoly(tuple(c // f.content() for c in f.coeffs))
    chain = [head]
    if head.degree() >= 1:
        d = head.derivative()
        chain.append(IntPoly(tuple(c // d.content() for c in d.coeffs)))
    while chain[-1].degree() >= 1:
        nxt = -rem_mod(chain[-2], chain[-1])
        if nxt.is_zero():
            break
        chain.append(nxt)
    return tuple(chain)


def _variations(chain: tuple[IntPoly, ...], r: Fraction) -> int:
    signs = []
    p, q = r.numerator, r.denominator
    for poly in chain:
        s = _sign(poly.eval_cleared(p, q))
        if s:
            signs.append(s)
    flips = 0
    for prev, cur in zip(signs, signs[1:]):
        if prev != cur:
            flips += 1
    return flips


def sturm_count(f: IntPoly, lo: Fraction, hi: Fraction) -> int:
    """Exact number of distinct real roots of squarefree f in (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise ValueError("need lo < hi")
    if f.sign_at(lo) == 0 or f.sign_at(hi) == 0:
        raise EndpointRootError("endpoint is a root; perturb the interval")
    chain = sturm_chain(f)
    return _variations(chain, lo) - _variations(chain, hi)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(f: IntPoly) -> list[Fraction]:
    """All rational roots, via the divisor test on the primitive part."""
    if f.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    _, g = content_primitive(f)
    roots = set()
    while g.degree() >= 1 and g.coeffs[0] == 0:
        roots.add(Fraction(0))
        g = IntPoly(g.coeffs[1:])
    if g.degree() >= 1:
        for p in _divisors(g.coeffs[0]):
            for q in _divisors(g.lc):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if cand not in roots and g.sign_at(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def divide_out_rational_root(f: IntPoly, r: Fraction) -> IntPoly:
    """Exact quotient of f by (q·x - p) for a known rational root r = p/q."""
    if f.degree() < 1:
        raise DegreeError("nothing to divide out")
    p, q = r.numerator, r.denominator
    rem = [Fraction(c) for c in f.coeffs]
    quot = [Fraction(0)] * (len(rem) - 1)
    for i in range(len(rem) - 1, 0, -1):
        coef = rem[i] / q
        quot[i - 1] = coef
        rem[i - 1] += coef * p
    if rem[0] != 0:
        raise ValueError(f"{r} is not a root")
    scale = lcm(*(c.denominator for c in quot))
    cleared = IntPoly(tuple(int(c * scale) for c in quot))
    return content_primitive(cleared)[1]
