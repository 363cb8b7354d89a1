"""Shared brute-force oracles and random instance generation for the tests.

The box oracle enumerates every congruence-lattice point whose coefficients
obey |c_{n-j}| <= lead * C(n, j) * B^j (the elementary-symmetric bound for
roots in [-B, B]) and keeps the polynomials whose roots are all real and in
the interval.  It shares no code with the tree search beyond the exact
root-counting predicate, which the property suite checks independently.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from weilsearch import ClosedInterval, RatPolynomial, SymmetricSearchProblem, all_roots_in


def box_ranges(problem: SymmetricSearchProblem) -> list[range]:
    """Inclusive lattice index ranges for each free coefficient, low index first."""
    n, k, B = problem.n, problem.k, problem.B
    lead = problem.base_coeffs[-1]
    out = []
    for i in range(n - k):
        bound = math.comb(n, n - i) * B ** (n - i) * lead
        base = problem.base_coeffs[i]
        m = problem.moduli[i]
        lo = math.ceil(Fraction(-bound - base, m))
        hi = math.floor(Fraction(bound - base, m))
        out.append(range(lo, hi + 1))
    return out


def box_size(problem: SymmetricSearchProblem) -> int:
    return math.prod(len(r) for r in box_ranges(problem))


def brute_force_solutions(problem: SymmetricSearchProblem) -> set[tuple[int, ...]]:
    """All solutions of the problem by exhaustive filtered enumeration."""
    n = problem.n
    box = ClosedInterval(-problem.B, problem.B)
    fixed = problem.base_coeffs[n - problem.k:]
    found = set()
    for ds in itertools.product(*box_ranges(problem)):
        coeffs = tuple(problem.base_coeffs[i] + ds[i] * problem.moduli[i]
                       for i in range(n - problem.k)) + fixed
        if all_roots_in(RatPolynomial([Fraction(c) for c in coeffs]), box):
            found.add(coeffs)
    return found


def random_instance(rng, max_n=5, max_modulus=4, max_free_depth=2,
                    cell_cap=4000, integer_b_only=False) -> SymmetricSearchProblem:
    """A random solvable-size instance whose brute-force box fits under cell_cap."""
    while True:
        n = rng.randrange(1, max_n + 1)
        depth = rng.randrange(1, min(n, max_free_depth) + 1)
        k = n - depth
        if integer_b_only or rng.random() < 0.8:
            B = Fraction(rng.choice([2, 2, 2, 3, 4]))
        else:
            B = Fraction(rng.choice([5, 7, 9]), 2)
        lead = rng.choice([1, 1, 2])
        moduli = [1] * (n + 1)
        v = 1
        for j in range(n, -1, -1):
            if rng.random() < 0.3 and v * 2 <= max_modulus:
                v *= 2
            elif v == 1 and rng.random() < 0.2:
                v = rng.choice([3, max_modulus])
            moduli[j] = v
        coeffs = [0] * (n + 1)
        coeffs[n] = lead
        for i in range(n - 1, -1, -1):
            bound = math.comb(n, n - i) * B ** (n - i) * lead
            w = min(6, int(bound))
            coeffs[i] = rng.randrange(-w, w + 1) if w else 0
        problem = SymmetricSearchProblem(n=n, k=k, B=B, base_coeffs=coeffs,
                                         moduli=moduli)
        if 0 < box_size(problem) <= cell_cap:
            return problem
