"""Problem types and transforms for circle-rooted polynomial searches.

A degree-2n integer polynomial P with P(z) = u * z^{2n} P(q/z) / q^n
(u = +1 reciprocal, u = -1 antireciprocal) and all roots on |z| = sqrt(q)
corresponds, through the substitution P(z) = z^n Q(z + q/z), to a degree-n
integer polynomial Q with all roots real and inside [-2 sqrt(q), 2 sqrt(q)].
Searching for P coefficient by coefficient from the outside in becomes a
search over Q, which is what the tree engine consumes.

Odd-degree or antireciprocal inputs carry forced linear or quadratic
factors; reduce_reciprocal strips them so that callers always reach the
even-degree reciprocal case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _ipoly
from .polycore import IntPolynomial


def _isqrt_exact(q: int) -> int:
    w = math.isqrt(q)
    if w * w != q:
        raise ValueError(f"{q} is not a perfect square")
    return w


def _matches_functional_eq(a: tuple[int, ...], q: int, sign: int) -> bool:
    """Check a_i = sign * q^{(N-2i)/2} * a_{N-i} for all i (N = degree)."""
    n2 = len(a) - 1
    if n2 % 2 == 0:
        half = n2 // 2
        for i in range(half + 1):
            if a[i] != sign * q ** (half - i) * a[n2 - i]:
                return False
        return True
    w = math.isqrt(q)
    if w * w != q:
        return False
    for i in range((n2 + 1) // 2):
        if a[i] != sign * w ** (n2 - 2 * i) * a[n2 - i]:
            return False
    return True


def reduce_reciprocal(S: IntPolynomial, q: int) -> tuple[IntPolynomial, list[IntPolynomial]]:
    """Strip the forced factors of a (anti)reciprocal polynomial.

    Odd-degree reciprocal inputs are divisible by z + sqrt(q), odd-degree
    antireciprocal ones by z - sqrt(q), and even-degree antireciprocal ones
    by z^2 - q.  Returns the remaining even-degree reciprocal polynomial and
    the stripped factors.  Raises ValueError if S satisfies neither
    functional equation.
    """
    if S.degree < 0:
        raise ValueError("zero polynomial")
    cur = list(S.coeffs)
    stripped: list[IntPolynomial] = []
    while True:
        a = tuple(cur)
        deg = len(a) - 1
        if _matches_functional_eq(a, q, +1):
            if deg % 2 == 0:
                return IntPolynomial(cur), stripped
            w = _isqrt_exact(q)
            factor = [w, 1]
        elif _matches_functional_eq(a, q, -1):
            if deg % 2 == 0:
                factor = [-q, 0, 1]
            else:
                w = _isqrt_exact(q)
                factor = [-w, 1]
        else:
            raise ValueError("polynomial satisfies no reciprocal functional equation")
        cur = _ipoly.exact_div(cur, factor)
        stripped.append(IntPolynomial(factor))


def symmetrize(P: IntPolynomial, q: int) -> IntPolynomial:
    """Invert P(z) = z^n Q(z + q/z) for a reciprocal P of even degree 2n."""
    if P.degree < 0 or P.degree % 2 != 0:
        raise ValueError("need a nonzero polynomial of even degree")
    n = P.degree // 2
    residual = list(P.coeffs) + [0] * (2 * n + 1 - len(P.coeffs))
    e = [0] * (n + 1)
    # z^{n-i} (z^2+q)^i, maintained as its coefficient list while i descends
    for i in range(n, -1, -1):
        e[i] = residual[n + i]
        if e[i]:
            base = [0] * (n - i)
            pw = [1]
            for _ in range(i):
                nxt = [0, 0] + pw
                for j, x in enumerate(pw):
                    nxt[j] += q * x
                pw = nxt
            term = base + pw
            for j, x in enumerate(term):
                residual[j] -= e[i] * x
    if any(residual):
        raise ValueError("polynomial is not reciprocal for this q")
    return IntPolynomial(e)


def desymmetrize(Q: IntPolynomial, q: int) -> IntPolynomial:
    """Expand P(z) = z^n Q(z + q/z); the inverse of symmetrize."""
    n = Q.degree
    if n < 0:
        raise ValueError("zero polynomial")
    out = [0] * (2 * n + 1)
    for i, e in enumerate(Q.coeffs):
        if not e:
            continue
        pw = [1]
        for _ in range(i):
            nxt = [0, 0] + pw
            for j, x in enumerate(pw):
                nxt[j] += q * x
            pw = nxt
        for j, x in enumerate(pw):
            out[n - i + j] += e * x
    return IntPolynomial(out)


def _check_moduli_chain(moduli: tuple[int, ...], n: int) -> None:
    for m in moduli:
        if m < 1:
            raise ValueError("moduli must be positive")
    for j in range(1, n + 1):
        if moduli[j - 1] % moduli[j]:
            raise ValueError("modulus at each index must divide the ones below it")


@dataclass(frozen=True)
class WeilSearchProblem:
    """Search data on the circle side: degree 2n, lattice congruences per coefficient.

    Solutions are integer polynomials A with all roots on |z| = sqrt(q),
    satisfying A = base + sum_i c_i m_i z^i with integer c_i, c_i = 0 for
    i >= 2n - k, and the reciprocal functional equation tying c_i to c_{2n-i}.
    """

    n: int
    k: int
    q: int
    base_coeffs: tuple[int, ...]
    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "base_coeffs", tuple(int(x) for x in self.base_coeffs))
        object.__setattr__(self, "moduli", tuple(int(x) for x in self.moduli))
        if self.n < 1:
            raise ValueError("need n >= 1")
        if not 0 <= self.k <= self.n:
            raise ValueError("need 0 <= k <= n")
        if self.q < 1:
            raise ValueError("need q >= 1")
        if len(self.base_coeffs) != 2 * self.n + 1:
            raise ValueError("base polynomial must have degree exactly 2n")
        if len(self.moduli) != 2 * self.n + 1:
            raise ValueError("need one modulus per coefficient")
        if self.base_coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        if not _matches_functional_eq(self.base_coeffs, self.q, +1):
            raise ValueError("base polynomial violates the reciprocal functional equation")
        for i in range(2 * self.n + 1):
            if self.moduli[i] != self.moduli[2 * self.n - i]:
                raise ValueError("moduli must be symmetric under i <-> 2n-i")
        _check_moduli_chain(self.moduli[: self.n + 1], self.n)


@dataclass(frozen=True)
class SymmetricSearchProblem:
    """Search data on the real-rooted side: degree n, roots in [-B, B].

    Solutions are integer polynomials Q = base + sum_i d_i m_i z^i with
    integer d_i, d_i = 0 for i >= n - k, and all roots real in [-B, B].
    negated records that the base was sign-flipped to make the leading
    coefficient positive, so callers can undo it when mapping back.
    """

    n: int
    k: int
    B: Fraction
    base_coeffs: tuple[int, ...]
    moduli: tuple[int, ...]
    negated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "B", Fraction(self.B))
        object.__setattr__(self, "base_coeffs", tuple(int(x) for x in self.base_coeffs))
        object.__setattr__(self, "moduli", tuple(int(x) for x in self.moduli))
        if self.n < 1:
            raise ValueError("need n >= 1")
        if not 0 <= self.k <= self.n:
            raise ValueError("need 0 <= k <= n")
        if self.B <= 0:
            raise ValueError("need B > 0")
        if len(self.base_coeffs) != self.n + 1:
            raise ValueError("base polynomial must have degree exactly n")
        if len(self.moduli) != self.n + 1:
            raise ValueError("need one modulus per coefficient")
        if self.base_coeffs[-1] <= 0:
            raise ValueError("leading coefficient must be positive (negate the base first)")
        _check_moduli_chain(self.moduli, self.n)


@dataclass(frozen=True)
class SolutionSet:
    """Solutions found by a search, with a flag for early-stopped enumerations."""

    polynomials: tuple[IntPolynomial, ...]
    exactly_known: bool = True

    def __len__(self) -> int:
        return len(self.polynomials)

    def __iter__(self):
        return iter(self.polynomials)


def build_symmetric_problem(problem: WeilSearchProblem) -> SymmetricSearchProblem:
    """Transfer a circle-side problem to the real-rooted side.

    The coefficient map is triangular and unimodular over the integers, so
    congruences carry across index by index; the divisibility chain on the
    moduli is exactly what makes the transferred residues well defined.
    """
    w = _isqrt_exact(problem.q)
    base = IntPolynomial(problem.base_coeffs)
    negated = False
    if base.coeffs[-1] < 0:
        base = -base
        negated = True
    b = symmetrize(base, problem.q)
    return SymmetricSearchProblem(
        n=problem.n,
        k=problem.k,
        B=Fraction(2 * w),
        base_coeffs=b.coeffs,
        moduli=problem.moduli[: problem.n + 1],
        negated=negated,
    )


def volume_estimates(n: int) -> tuple[Fraction, Fraction]:
    """Volume of the degree-2n circle-rooted region vs its coefficient box.

    Both are normalized to leading coefficient 1 and q = 1; the first number
    divided by the second estimates how sparse admissible coefficient tuples
    are inside the naive box, which is what makes pruned tree search pay off.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    vol = Fraction(2 ** n, math.factorial(n))
    for j in range(1, n + 1):
        vol *= Fraction(2 * j, 2 * j - 1) ** (n + 1 - j)
    box = Fraction(1)
    for j in range(1, n + 1):
        box *= 2 * math.comb(2 * n, j)
    return vol, box


def child_count_estimate(n: int, m: int, j: int) -> Fraction:
    """Expected number of admissible values for the j-th coefficient mod m."""
    if n < 1 or m < 1 or j < 1:
        raise ValueError("need n, m, j >= 1")
    return Fraction(4 * n, j * m)
