"""Exact polynomial arithmetic: root counting, power sums, Chebyshev bases.

Two thin wrapper types are exposed.  IntPolynomial carries plain integer
coefficients and is what searches produce; RatPolynomial carries Fractions
and is what the root-locating machinery consumes.  Coefficients are stored
low degree first with trailing zeros removed; the zero polynomial has an
empty coefficient tuple and degree -1.

Everything here is exact.  sturm_count counts *distinct* roots and treats
its interval as closed, so roots sitting exactly on an endpoint count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _ipoly


def _trimmed(coeffs, cast):
    c = [cast(x) for x in coeffs]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Integer-coefficient polynomial, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trimmed(coeffs, int)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        v = 0
        for a in reversed(self.coeffs):
            v = v * x + a
        return v

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return IntPolynomial([-a for a in self.coeffs])

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def to_rat(self) -> "RatPolynomial":
        return RatPolynomial(self.coeffs)


class RatPolynomial:
    """Rational-coefficient polynomial, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trimmed(coeffs, Fraction)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        v = Fraction(0)
        for a in reversed(self.coeffs):
            v = v * x + a
        return v

    def __eq__(self, other):
        return isinstance(other, RatPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return RatPolynomial([-a for a in self.coeffs])

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return RatPolynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatPolynomial):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return RatPolynomial()
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    out[i + j] += x * y
            return RatPolynomial(out)
        return RatPolynomial([a * other for a in self.coeffs])

    __rmul__ = __mul__

    def __repr__(self):
        return f"RatPolynomial({[str(c) for c in self.coeffs]})"

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_int(self) -> IntPolynomial:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return IntPolynomial([c.numerator for c in self.coeffs])

    def scaled_integer_coeffs(self) -> tuple[list[int], int]:
        """Return (W, D) with self = W / D, W integer and D > 0."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return [int(c * den) for c in self.coeffs], den


@dataclass(frozen=True)
class ClosedInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class PowerSums:
    """Power sums s_0..s_J of a polynomial's root multiset; s_0 is the degree."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __getitem__(self, j: int) -> Fraction:
        return self.values[j]

    def __len__(self) -> int:
        return len(self.values)


def nth_derivative(p: RatPolynomial, i: int) -> RatPolynomial:
    """The i-th derivative of p (i = 0 returns p itself)."""
    if i < 0:
        raise ValueError("derivative order must be nonnegative")
    c = p.coeffs
    for _ in range(i):
        c = tuple(j * c[j] for j in range(1, len(c)))
    return RatPolynomial(c)


def squarefree_part(p: RatPolynomial) -> RatPolynomial:
    """Product of the distinct irreducible factors, primitive with positive lead."""
    w, _ = p.scaled_integer_coeffs()
    return RatPolynomial(_ipoly.squarefree(w))


def sturm_count(p: RatPolynomial, interval: ClosedInterval) -> int:
    """Number of distinct real roots of p in the closed interval."""
    w, _ = p.scaled_integer_coeffs()
    lo, hi = interval.lo, interval.hi
    return _ipoly.count_distinct_in(
        w, (lo.numerator, lo.denominator), (hi.numerator, hi.denominator))


def all_roots_in(p: RatPolynomial, interval: ClosedInterval) -> bool:
    """True iff every complex root of p is real and lies in the interval."""
    w, _ = p.scaled_integer_coeffs()
    lo, hi = interval.lo, interval.hi
    return _ipoly.roots_all_in(
        w, (lo.numerator, lo.denominator), (hi.numerator, hi.denominator))


def power_sums(p: RatPolynomial, count: int) -> PowerSums:
    """Power sums s_0..s_count of the roots of p, via the Newton identities.

    s_0 is the number of roots (the degree).  Indices beyond the degree use
    the linear recurrence the coefficients impose on the root power sums.
    """
    n = p.degree
    if n < 0:
        raise ValueError("zero polynomial")
    if count < 0:
        raise ValueError("need count >= 0")
    c = p.coeffs
    lead = c[-1]
    s: list[Fraction] = [Fraction(n)]
    for j in range(1, count + 1):
        if j <= n:
            acc = j * c[n - j]
            for i in range(1, j):
                acc += c[n - i] * s[j - i]
        else:
            acc = Fraction(0)
            for i in range(1, n + 1):
                acc += c[n - i] * s[j - i]
        s.append(-acc / lead)
    return PowerSums(tuple(s))


def coeffs_from_power_sums(s: PowerSums, leading, n: int) -> RatPolynomial:
    """Rebuild the degree-n polynomial with leading coefficient and s_1..s_n."""
    if len(s) < n + 1:
        raise ValueError("need power sums up to index n")
    lead = Fraction(leading)
    if lead == 0:
        raise ValueError("leading coefficient must be nonzero")
    c: dict[int, Fraction] = {n: lead}
    for j in range(1, n + 1):
        acc = lead * s[j]
        for i in range(1, j):
            acc += c[n - i] * s[j - i]
        c[n - j] = -acc / j
    return RatPolynomial([c[i] for i in range(n + 1)])


def chebyshev_rescaled(i: int, B) -> RatPolynomial:
    """Polynomial C_i with C_i(B cos t) = B cos(i t); C_0 = B, C_1 = z."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    B = Fraction(B)
    if B <= 0:
        raise ValueError("scale must be positive")
    prev = RatPolynomial([B])
    if i == 0:
        return prev
    cur = RatPolynomial([0, 1])
    two_over_B = 2 / B
    for _ in range(i - 1):
        nxt_coeffs = [Fraction(0)] + [two_over_B * a for a in cur.coeffs]
        for j, a in enumerate(prev.coeffs):
            nxt_coeffs[j] -= a
        prev, cur = cur, RatPolynomial(nxt_coeffs)
    return cur


def rat_divmod(a: RatPolynomial, b: RatPolynomial) -> tuple[RatPolynomial, RatPolynomial]:
    """Quotient and remainder of a by b over the rationals."""
    if b.degree < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a.coeffs)
    q = [Fraction(0)] * max(0, len(r) - len(b.coeffs) + 1)
    lb = b.coeffs[-1]
    db = b.degree
    while len(r) - 1 >= db and any(r):
        while r and not r[-1]:
            r.pop()
        if len(r) - 1 < db:
            break
        f = r[-1] / lb
        pos = len(r) - 1 - db
        q[pos] = f
        for i in range(db + 1):
            r[pos + i] -= f * b.coeffs[i]
        r.pop()
    return RatPolynomial(q), RatPolynomial(r)
