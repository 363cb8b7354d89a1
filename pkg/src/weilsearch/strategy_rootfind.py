"""Child generation by flooring the extrema of the prefix derivative.

The admissible next coefficients of a node are the integer constant shifts c
for which R + c keeps all roots in [-B, B], where R is the appropriately
scaled derivative of the partial polynomial.  Since R' is already known to
have all roots in [-B, B], the answer is an interval: c must put every local
minimum of R + c at or below zero and every local maximum at or above zero,
with the endpoints +-B acting as extrema by parity.

Extremum locations come from an untrusted numeric root finder.  Each
approximation is boxed into a width 2^(3-p) dyadic bracket; three exact
guards (brackets disjoint, correct curvature side, derivative sign change)
establish that each bracket holds exactly one critical point.  Flooring the
extremum values then never needs the locations exactly: a binary search on
integer levels v, with a Sturm count of R - v on the bracket deciding
"level reached or not", produces floor(local max) exactly.

Degenerate inputs (repeated critical points, critical points at +-B) break
the bracketing; prescreen handles them exactly via a gcd computation, and
anything else raises PrecisionAbort so the caller can retry with a finer p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy

from . import _ipoly
from .polycore import (ClosedInterval, RatPolynomial, all_roots_in,
                       nth_derivative, rat_divmod, squarefree_part,
                       sturm_count)
from .treesearch import ChildRange, SearchNode
from .weil import SymmetricSearchProblem


class PrecisionAbort(Exception):
    """Bracketing at the current precision cannot be certified; retry finer."""


class PrecisionExhausted(RuntimeError):
    """Every precision in the schedule failed on the same node."""


@dataclass(frozen=True)
class Bracket:
    """Dyadic interval believed to contain one critical point of R."""

    r: Fraction
    s: Fraction
    role: str  # "local_max", "local_min" or "endpoint"


@dataclass
class PrecisionPolicy:
    """Rounding precision schedule: double on failure, a few times."""

    initial: int = 32
    max_retries: int = 3

    def __post_init__(self):
        if self.initial < 8:
            raise ValueError("precision below 8 bits is never useful")

    def ladder(self):
        p = self.initial
        yield p
        for _ in range(self.max_retries):
            p *= 2
            yield p


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _approx_roots(R: RatPolynomial, p: int) -> list[Fraction] | None:
    """Untrusted numeric approximations of the roots of R, ascending.

    Returns real parts as exact Fractions (of the floating-point values, so
    conversion adds no further error), or None when the root finder fails.
    """
    d = R.degree
    if d <= 0:
        return []
    if p <= 48:
        try:
            co = [float(c) for c in reversed(R.coeffs)]
        except OverflowError:
            co = None
        if co is not None and all(math.isfinite(x) for x in co):
            roots = numpy.roots(co)
            return sorted(Fraction(float(z.real)) for z in roots)
    mp = mpmath.mp
    with mp.workprec(p + 20):
        try:
            roots = mpmath.polyroots(
                [mpmath.mpf(c.numerator) / c.denominator
                 for c in reversed(R.coeffs)],
                maxsteps=200, extraprec=2 * p)
        except (mpmath.libmp.NoConvergence, ZeroDivisionError):
            return None
        scale = 1 << (p + 6)
        out = []
        for z in roots:
            x = mpmath.re(z)
            out.append(Fraction(int(mpmath.floor(x * scale)), scale))
    return sorted(out)


def bracket_floor_max(R: RatPolynomial, r, s, t0: int | None = None) -> int:
    """floor(R at its unique local maximum in [r, s]), or t0 if that floor
    is already >= t0 (t0 = None meaning no threshold).

    Caller guarantees: R'' (r) <= 0 and [r, s] contains exactly one root of
    R', a local maximum.  The tangent line at r then overshoots the max, so
    floor(R(r)) and floor(R(r) + (s-r)R'(r)) seed an integer binary search;
    each probe asks exactly (via Sturm) whether R reaches level v on [r, s].
    """
    r = Fraction(r)
    s = Fraction(s)
    y = R(r)
    t = math.floor(y)
    if t0 is not None and t >= t0:
        return t0
    u = math.floor(y + (s - r) * nth_derivative(R, 1)(r))
    box = ClosedInterval(r, s)
    while t != u:
        v = -((-t - u) // 2)
        if sturm_count(R - RatPolynomial([v]), box) > 0:
            t = v
        else:
            u = v - 1
    return t


def _rat_gcd(a: RatPolynomial, b: RatPolynomial) -> RatPolynomial:
    wa, _ = a.scaled_integer_coeffs()
    wb, _ = b.scaled_integer_coeffs()
    return RatPolynomial(_ipoly.poly_gcd(wa, wb))


def prescreen(R: RatPolynomial, B) -> set[int]:
    """Exact fallback for degenerate extremum configurations.

    If R' has a repeated root, or a critical point of R sits at +-B, then a
    viable shift c must make R + c vanish at every root of
    T = gcd(R', (z^2 - B^2) R''), which pins c down completely: the
    remainder of R modulo the squarefree part of T must be the constant -c.
    When T is constant the configuration is not degenerate at all and the
    caller's numeric trouble is a precision problem: raise PrecisionAbort.
    """
    B = Fraction(B)
    deriv = nth_derivative(R, 1)
    window = RatPolynomial([-B * B, 0, 1]) * nth_derivative(R, 2)
    T = _rat_gcd(deriv, window)
    if T.degree <= 0:
        raise PrecisionAbort("critical points are simple and interior")
    g = squarefree_part(T)
    _, rho = rat_divmod(R, g)
    if rho.degree > 0:
        return set()
    val = -rho.coeffs[0] if rho.coeffs else Fraction(0)
    if val.denominator != 1:
        return set()
    c = int(val)
    if all_roots_in(R + RatPolynomial([c]), ClosedInterval(-B, B)):
        return {c}
    return set()


def _prescreen_range(R: RatPolynomial, B) -> tuple[int, int]:
    got = prescreen(R, B)
    if got:
        (c,) = got
        return c, c
    return 0, -1


def solve_shift_range(R: RatPolynomial, B, p: int) -> tuple[int, int]:
    """Integer interval [l, u] of constant shifts c for which R + c has all
    roots in [-B, B]; l > u encodes the empty set.

    Precondition: R has positive leading coefficient and R' is expected
    (though not guaranteed, hence the guards) to have all roots in [-B, B].
    Raises PrecisionAbort when neither the bracketing nor the degenerate
    fallback can certify an answer at this precision.
    """
    B = Fraction(B)
    d = R.degree
    if d < 1 or R.coeffs[-1] <= 0:
        raise ValueError("need degree >= 1 and a positive leading coefficient")
    deriv = nth_derivative(R, 1)
    approx = _approx_roots(deriv, p)
    if approx is None:
        return _prescreen_range(R, B)
    dw, dden = deriv.scaled_integer_coeffs()
    ddw, _ = nth_derivative(R, 2).scaled_integer_coeffs()
    scale = 1 << (p - 1)
    ends: list[tuple[Fraction, Fraction]] = [(-B, -B)]
    for x in approx:
        k = math.floor(x * scale) - 1
        ends.append((Fraction(k, scale), Fraction(k + 4, scale)))
    ends.append((B, B))
    for i in range(1, d):
        r_i, s_i = ends[i]
        if r_i < -B or s_i > B:
            return _prescreen_range(R, B)
        if s_i >= ends[i + 1][0]:
            return _prescreen_range(R, B)
        curve = _ipoly.sign_at(ddw, r_i.numerator, r_i.denominator)
        if ((-1) ** (d - i)) * curve > 0:
            return _prescreen_range(R, B)
        a = _ipoly.sign_at(dw, r_i.numerator, r_i.denominator)
        b = _ipoly.sign_at(dw, s_i.numerator, s_i.denominator)
        if a * b > 0:
            return _prescreen_range(R, B)
    l = None
    u = None
    negR = -R
    for i in range(d, -1, -1):
        r_i, s_i = ends[i]
        maximum_role = (d - i) % 2 == 0
        if r_i == s_i:
            t = R(r_i)
            if maximum_role:
                cand = -math.floor(t)
                l = cand if l is None else max(l, cand)
            else:
                cand = -math.ceil(t)
                u = cand if u is None else min(u, cand)
        elif maximum_role:
            t = bracket_floor_max(R, r_i, s_i, None if l is None else -l)
            l = -t if l is None else max(-t, l)
        else:
            t = bracket_floor_max(negR, r_i, s_i, u)
            u = t if u is None else min(t, u)
        if l is not None and u is not None and l > u:
            return l, u
    return l, u


def _child_range_at(problem: SymmetricSearchProblem, node: SearchNode,
                    p: int) -> ChildRange:
    i_star = problem.n - problem.k - node.depth - 1
    der = _ipoly.nth_derivative_scaled(list(node.partial_coeffs), i_star)
    denom = math.factorial(i_star) * problem.moduli[i_star]
    R = RatPolynomial([Fraction(c, denom) for c in der])
    l, u = solve_shift_range(R, problem.B, p)
    return ChildRange(l, u, certified=True)


class RootfindStrategy:
    """Engine adapter: exact child ranges via extremum flooring."""

    name = "rootfind"

    def __init__(self, problem: SymmetricSearchProblem,
                 policy: PrecisionPolicy | None = None):
        self.problem = problem
        self.policy = policy or PrecisionPolicy()
        self.max_precision_used: int | None = None

    def rebuild_node(self, chosen: tuple[int, ...]) -> SearchNode:
        p = self.problem
        partial = list(p.base_coeffs)
        for t, d in enumerate(chosen):
            idx = p.n - p.k - 1 - t
            partial[idx] += d * p.moduli[idx]
        return SearchNode(depth=len(chosen), chosen=tuple(chosen),
                          partial_coeffs=tuple(partial))

    def root_node(self) -> SearchNode:
        return self.rebuild_node(())

    def child_range(self, node: SearchNode) -> ChildRange:
        last = None
        for p in self.policy.ladder():
            try:
                rng = _child_range_at(self.problem, node, p)
            except PrecisionAbort as err:
                last = err
                continue
            if self.max_precision_used is None or p > self.max_precision_used:
                self.max_precision_used = p
            return rng
        raise PrecisionExhausted(
            f"no precision sufficed at depth {node.depth}, "
            f"prefix {node.chosen}") from last

    def make_child(self, node: SearchNode, d: int) -> SearchNode:
        p = self.problem
        idx = p.n - p.k - node.depth - 1
        partial = list(node.partial_coeffs)
        partial[idx] += d * p.moduli[idx]
        return SearchNode(depth=node.depth + 1, chosen=node.chosen + (d,),
                          partial_coeffs=tuple(partial))


def children_rootfind(node: SearchNode, problem: SymmetricSearchProblem,
                      policy: PrecisionPolicy | None = None) -> ChildRange:
    """Certified range of next lattice values for a node (public wrapper)."""
    return RootfindStrategy(problem, policy).child_range(node)
