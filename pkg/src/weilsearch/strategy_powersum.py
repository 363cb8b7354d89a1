"""Child bounding from power sums of the already-fixed coefficients.

The top k+j+1 coefficients of the degree-n target determine, through the
Newton identities, the power sums s_1..s_{k+j} of the roots of any
completion.  The next power sum s_m (m = k+j+1) is an affine function
s_m = alpha + beta * c of the next coefficient c, with beta = -m / c_n.

For a polynomial with all n roots real in [-B, B] the following hold, and
each is affine in s_m once s_0..s_{m-1} are pinned down:

  1. s_m <= B^2 s_{m-2}                       (even m; r^m <= B^2 r^{m-2})
  2. |sum_k t_{m,k} s_k| <= n B, where sum_k t_{m,k} z^k is the rescaled
     Chebyshev polynomial with C_m(B cos t) = B cos(m t); likewise with the
     index-(m-2) row applied to (s_{k+2} - (B^2/2) s_k), bounded by n B^3/2
  3. the shifted sums s'_i = sum over roots of (B + r)^i are nonnegative,
     log-convex (s'_m s'_{m-2} >= s'^2_{m-1}) and grow at most by 2B per
     step (s'_m <= 2B s'_{m-1})
  4. the same for s''_i = sum of (B - r)^i

Intersecting them yields a rational interval for c; the lattice c = b + d*mod
turns it into an integer range of d values.  The bounds are necessary, not
sufficient, so the engine re-checks proposed children with the derivative
descent test.

When B is an integer everything is computed with scaled integers
T_i = s_i * c_n^i, avoiding rational arithmetic in the hot path entirely.
The Fraction route stays as the reference implementation and handles
non-integer B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .polycore import chebyshev_rescaled
from .treesearch import ChildRange, SearchNode
from .weil import SymmetricSearchProblem


@dataclass
class PowerSumState:
    """Cached power sums of the fixed prefix, plus the two shifted variants.

    With scale == 1 the entries are Fractions s_i, (B+r)-sums and (B-r)-sums.
    With an integer scale C (the leading coefficient) entry i holds the
    integer s_i * C^i instead, and B is known to be an integer.
    """

    sums: list
    shifted_plus: list
    shifted_minus: list
    scale: int = 1
    scratch: tuple | None = None

    @classmethod
    def from_sums(cls, sums, B) -> "PowerSumState":
        """Build the shifted caches from plain power sums (reference route)."""
        s = [Fraction(v) for v in sums]
        B = Fraction(B)
        plus, minus = [], []
        for i in range(len(s)):
            p = Fraction(0)
            q = Fraction(0)
            for t in range(i + 1):
                w = math.comb(i, t) * B ** (i - t)
                p += w * s[t]
                q += w * (-1) ** t * s[t]
            plus.append(p)
            minus.append(q)
        return cls(sums=s, shifted_plus=plus, shifted_minus=minus)


class _Bounds:
    """Intersection of affine constraints a*x + b >= 0 on one unknown."""

    __slots__ = ("lo", "hi", "feasible")

    def __init__(self):
        self.lo = None
        self.hi = None
        self.feasible = True

    def add_ge(self, a, b) -> None:
        if not self.feasible:
            return
        if a > 0:
            v = -Fraction(b) / a
            if self.lo is None or v > self.lo:
                self.lo = v
        elif a < 0:
            v = -Fraction(b) / a
            if self.hi is None or v < self.hi:
                self.hi = v
        elif b < 0:
            self.feasible = False

    def add_le(self, a, b) -> None:
        self.add_ge(-a, -b)

    def interval(self):
        if not self.feasible:
            return None
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            return None
        return self.lo, self.hi


def _cheb_rows(B: Fraction, upto: int) -> list[tuple[list[int], int]]:
    """Integer-cleared coefficient rows of the rescaled Chebyshev family."""
    rows = []
    for i in range(upto + 1):
        coeffs = chebyshev_rescaled(i, B).coeffs
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        rows.append(([int(c * den) for c in coeffs], den))
    return rows


def power_sum_bounds(state: PowerSumState, j: int, c_n, affine, B) -> tuple[Fraction, Fraction] | None:
    """Rational interval [L, U] of next-coefficient values allowed by the
    power-sum inequalities at index j, or None when they are contradictory.

    affine = (alpha, beta) with s_j = alpha + beta * c; beta must be negative
    (it is -j / c_n with a positive leading coefficient).
    """
    if state.scale != 1:
        raise ValueError("reference bounds need an unscaled state")
    m = j
    if m != len(state.sums):
        raise ValueError("state caches power sums up to exactly index j-1")
    alpha, beta = Fraction(affine[0]), Fraction(affine[1])
    if beta * c_n != -j:
        raise ValueError("affine slope must be -j over the leading coefficient")
    B = Fraction(B)
    s = state.sums
    n = s[0]
    box = _Bounds()
    if m % 2 == 0:
        box.add_le(1, -(B * B) * s[m - 2])
    rows = _cheb_rows(B, m)
    vec, den = rows[m]
    known = sum(Fraction(vec[t], den) * s[t] for t in range(m))
    box.add_le(Fraction(vec[m], den), known - n * B)
    box.add_ge(Fraction(vec[m], den), known + n * B)
    if m >= 2:
        uvec, uden = rows[m - 2]
        known = Fraction(0)
        for t in range(m - 1):
            known -= Fraction(uvec[t], uden) * (B * B / 2) * s[t]
        for t in range(m - 2):
            known += Fraction(uvec[t], uden) * s[t + 2]
        lead = Fraction(uvec[m - 2], uden)
        box.add_le(lead, known - n * B ** 3 / 2)
        box.add_ge(lead, known + n * B ** 3 / 2)
    sigma = Fraction(0)
    tau = Fraction(0)
    for t in range(m):
        w = math.comb(m, t) * B ** (m - t)
        sigma += w * s[t]
        tau += w * (-1) ** t * s[t]
    sp1 = state.shifted_plus[m - 1]
    sm1 = state.shifted_minus[m - 1]
    box.add_le(1, sigma - 2 * B * sp1)
    box.add_le((-1) ** m, tau - 2 * B * sm1)
    if m >= 2:
        sp2 = state.shifted_plus[m - 2]
        sm2 = state.shifted_minus[m - 2]
        box.add_ge(sp2, sigma * sp2 - sp1 * sp1)
        box.add_ge((-1) ** m * sm2, tau * sm2 - sm1 * sm1)
    got = box.interval()
    if got is None:
        return None
    s_lo, s_hi = got
    # s = alpha + beta*c with beta < 0: both ends finite here because the
    # Chebyshev row bounds s_j two-sidedly.
    if s_lo is None or s_hi is None:
        raise ValueError("power-sum constraints failed to bound the coefficient")
    return (s_hi - alpha) / beta, (s_lo - alpha) / beta


class PowerSumStrategy:
    """Engine adapter: propose child ranges from the power-sum inequalities."""

    name = "powersum"
    max_precision_used = None

    def __init__(self, problem: SymmetricSearchProblem):
        self.problem = problem
        self.scale = int(problem.base_coeffs[-1])
        self.B_int = problem.B.numerator if problem.B.denominator == 1 else None
        self.rows = _cheb_rows(problem.B, problem.n + 1)
        self.comb = [[math.comb(i, t) for t in range(i + 1)]
                     for i in range(problem.n + 2)]

    # -- node construction ------------------------------------------------

    def rebuild_node(self, chosen: tuple[int, ...]) -> SearchNode:
        p = self.problem
        partial = list(p.base_coeffs)
        for t, d in enumerate(chosen):
            idx = p.n - p.k - 1 - t
            partial[idx] += d * p.moduli[idx]
        depth = len(chosen)
        state = self._state_from_partial(partial, p.k + depth)
        return SearchNode(depth=depth, chosen=tuple(chosen),
                          partial_coeffs=tuple(partial),
                          cached_power_sums=state)

    def root_node(self) -> SearchNode:
        return self.rebuild_node(())

    def _state_from_partial(self, partial, upto: int) -> PowerSumState:
        n = self.problem.n
        C = self.scale
        if self.B_int is not None:
            T = [n]
            for j in range(1, upto + 1):
                acc = j * partial[n - j] * C ** (j - 1)
                for i in range(1, j):
                    acc += partial[n - i] * T[j - i] * C ** (i - 1)
                T.append(-acc)
            BC = self.B_int * C
            plus, minus = [], []
            for i in range(upto + 1):
                row = self.comb[i]
                a = 0
                b = 0
                for t in range(i + 1):
                    w = row[t] * BC ** (i - t)
                    a += w * T[t]
                    b += w * T[t] if t % 2 == 0 else -w * T[t]
                plus.append(a)
                minus.append(b)
            return PowerSumState(sums=T, shifted_plus=plus,
                                 shifted_minus=minus, scale=C)
        sums = [Fraction(n)]
        for j in range(1, upto + 1):
            acc = Fraction(j * partial[n - j])
            for i in range(1, j):
                acc += partial[n - i] * sums[j - i]
            sums.append(-acc / C)
        return PowerSumState.from_sums(sums, self.problem.B)

    # -- child generation -------------------------------------------------

    def child_range(self, node: SearchNode) -> ChildRange:
        p = self.problem
        state: PowerSumState = node.cached_power_sums
        m = p.k + node.depth + 1
        idx = p.n - m
        cur_c = node.partial_coeffs[idx]
        mod = p.moduli[idx]
        if state.scale != 1:
            return self._child_range_scaled(node, state, m, cur_c, mod)
        alpha = Fraction(0)
        for i in range(1, m):
            alpha += node.partial_coeffs[p.n - i] * state.sums[m - i]
        alpha = -alpha / self.scale
        beta = Fraction(-m, self.scale)
        got = power_sum_bounds(state, m, self.scale, (alpha, beta), p.B)
        if got is None:
            state.scratch = None
            return ChildRange(0, -1)
        c_lo, c_hi = got
        state.scratch = ("frac", alpha, beta)
        lo = math.ceil((c_lo - cur_c) / mod)
        hi = math.floor((c_hi - cur_c) / mod)
        return ChildRange(lo, hi)

    def _child_range_scaled(self, node, state, m, cur_c, mod) -> ChildRange:
        p = self.problem
        C = self.scale
        B = self.B_int
        T = state.sums
        n = p.n
        A0 = 0
        for i in range(1, m):
            A0 -= node.partial_coeffs[n - i] * T[m - i] * C ** (i - 1)
        M = m * C ** (m - 1)
        # X = T_m = A0 - M*c ranges over what the families allow
        box = _Bounds()
        if m % 2 == 0:
            box.add_le(1, -B * B * C * C * T[m - 2])
        vec, den = self.rows[m]
        known = 0
        for t in range(m):
            known += vec[t] * C ** (m - t) * T[t]
        lim = n * B * den * C ** m
        box.add_le(vec[m], known - lim)
        box.add_ge(vec[m], known + lim)
        if m >= 2:
            uvec, uden = self.rows[m - 2]
            known = 0
            for t in range(m - 1):
                known -= uvec[t] * B * B * C ** (m - t) * T[t]
            for t in range(m - 2):
                known += 2 * uvec[t] * C ** (m - t - 2) * T[t + 2]
            lim = n * B ** 3 * uden * C ** m
            box.add_le(2 * uvec[m - 2], known - lim)
            box.add_ge(2 * uvec[m - 2], known + lim)
        BC = B * C
        sigma = 0
        tau = 0
        row = self.comb[m]
        for t in range(m):
            w = row[t] * BC ** (m - t)
            sigma += w * T[t]
            tau += w * T[t] if t % 2 == 0 else -w * T[t]
        sp1 = state.shifted_plus[m - 1]
        sm1 = state.shifted_minus[m - 1]
        box.add_le(1, sigma - 2 * BC * sp1)
        box.add_le((-1) ** m, tau - 2 * BC * sm1)
        if m >= 2:
            sp2 = state.shifted_plus[m - 2]
            sm2 = state.shifted_minus[m - 2]
            box.add_ge(sp2, sigma * sp2 - sp1 * sp1)
            box.add_ge((-1) ** m * sm2, tau * sm2 - sm1 * sm1)
        got = box.interval()
        if got is None:
            state.scratch = None
            return ChildRange(0, -1)
        X_lo, X_hi = got
        if X_lo is None or X_hi is None:
            raise ValueError("power-sum constraints failed to bound the coefficient")
        state.scratch = ("scaled", A0, M, sigma, tau)
        Mm = M * mod
        lo = math.ceil(Fraction(A0 - M * cur_c, Mm) - Fraction(X_hi) / Mm)
        hi = math.floor(Fraction(A0 - M * cur_c, Mm) - Fraction(X_lo) / Mm)
        return ChildRange(lo, hi)

    def make_child(self, node: SearchNode, d: int) -> SearchNode:
        p = self.problem
        state: PowerSumState = node.cached_power_sums
        m = p.k + node.depth + 1
        idx = p.n - m
        mod = p.moduli[idx]
        c = node.partial_coeffs[idx] + d * mod
        partial = list(node.partial_coeffs)
        partial[idx] = c
        kind = state.scratch[0]
        if kind == "scaled":
            _, A0, M, sigma, tau = state.scratch
            X = A0 - M * c
            child_state = PowerSumState(
                sums=state.sums + [X],
                shifted_plus=state.shifted_plus + [sigma + X],
                shifted_minus=state.shifted_minus + [tau + X if m % 2 == 0 else tau - X],
                scale=state.scale)
        else:
            _, alpha, beta = state.scratch
            s_m = alpha + beta * c
            B = p.B
            sigma = Fraction(0)
            tau = Fraction(0)
            row = self.comb[m]
            for t in range(m):
                w = row[t] * B ** (m - t)
                sigma += w * state.sums[t]
                tau += w * (-1) ** t * state.sums[t]
            child_state = PowerSumState(
                sums=state.sums + [s_m],
                shifted_plus=state.shifted_plus + [sigma + s_m],
                shifted_minus=state.shifted_minus + [tau + s_m if m % 2 == 0 else tau - s_m],
                scale=1)
        return SearchNode(depth=node.depth + 1,
                          chosen=node.chosen + (d,),
                          partial_coeffs=tuple(partial),
                          cached_power_sums=child_state)


def children_powersum(problem: SymmetricSearchProblem, node: SearchNode) -> ChildRange:
    """Admissible next lattice values for a node, by power-sum bounding."""
    strat = PowerSumStrategy(problem)
    if node.cached_power_sums is None:
        node = strat.rebuild_node(node.chosen)
    return strat.child_range(node)

