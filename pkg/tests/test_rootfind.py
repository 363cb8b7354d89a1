"""Tests for the extremum-flooring child-range strategy."""

import math
import random
from fractions import Fraction

import pytest

from weilsearch import (
    ClosedInterval,
    PrecisionAbort,
    PrecisionExhausted,
    PrecisionPolicy,
    RatPolynomial,
    RootfindStrategy,
    SymmetricSearchProblem,
    all_roots_in,
    bracket_floor_max,
    children_rootfind,
    prescreen,
    solve_shift_range,
)


def _rp(coeffs):
    return RatPolynomial([Fraction(c) for c in coeffs])


def _integral(P, const=0):
    """Antiderivative of P with constant term `const`."""
    co = [Fraction(const)]
    co += [Fraction(c, j + 1) for j, c in enumerate(P.coeffs)]
    return RatPolynomial(co)


def test_solve_shift_range_frozen():
    # z^2 - 2 + c has roots +-sqrt(2 - c), inside [-2, 2] iff -2 <= c <= 2
    assert solve_shift_range(_rp([-2, 0, 1]), 2, 32) == (-2, 2)
    # z^3 - 3z + c: critical values -+2 at z = +-1, endpoints +-2
    assert solve_shift_range(_rp([0, -3, 0, 1]), 2, 32) == (-2, 2)
    # z^2 - 6 + c needs 2 <= c <= 6
    assert solve_shift_range(_rp([-6, 0, 1]), 2, 32) == (2, 6)
    # z^4 - 5z^2 + c: min value -25/4, endpoint value -4
    assert solve_shift_range(_rp([0, 0, -5, 0, 1]), 2, 32) == (4, 6)
    # z^4 - z^2 + 9/10 + c: viable c would need -9/10 <= c <= -13/20,
    # which contains no integer
    lo, hi = solve_shift_range(_rp([Fraction(9, 10), 0, -1, 0, 1]), 2, 32)
    assert lo > hi


def test_solve_shift_range_rejects_bad_input():
    with pytest.raises(ValueError):
        solve_shift_range(_rp([3]), 2, 32)  # constant
    with pytest.raises(ValueError):
        solve_shift_range(_rp([0, 0, -1]), 2, 32)  # negative lead


def _expected_shift_range(R, crit, B):
    """Closed-form viable shift interval from the classical criterion.

    With R' having distinct real roots inside (-B, B) and lead > 0, R + c
    keeps every root real iff R + c >= 0 at each local maximum and <= 0 at
    each local minimum; the endpoint sign conditions then confine the roots
    to [-B, B].  Walking the critical points right to left, the rightmost
    is always a local minimum.
    """
    d = R.degree
    lower = [-R(Fraction(B))]
    upper = []
    if d % 2 == 0:
        lower.append(-R(Fraction(-B)))
    else:
        upper.append(-R(Fraction(-B)))
    for j, x in enumerate(sorted(crit, reverse=True)):
        if j % 2 == 0:
            upper.append(-R(x))
        else:
            lower.append(-R(x))
    lo = math.ceil(max(lower))
    hi = math.floor(min(upper))
    return lo, hi


def test_solve_shift_range_vs_oracle():
    rng = random.Random(20109)
    box = None
    empties = hits = 0
    for case in range(500):
        d = rng.randint(2, 5)
        grid = [Fraction(k, 4) for k in range(-7, 8)]
        crit = rng.sample(grid, d - 1)
        lead = rng.choice([1, 1, 2, 3])
        P = _rp([lead])
        for x in crit:
            P = P * _rp([-x, 1])
        c0 = Fraction(rng.randint(-40, 40), rng.choice([1, 1, 2, 4]))
        R = _integral(P, c0)
        B = 2
        p = 100 if case % 3 == 0 else 32
        lo, hi = solve_shift_range(R, B, p)
        elo, ehi = _expected_shift_range(R, crit, B)
        assert set(range(lo, hi + 1)) == set(range(elo, ehi + 1)), \
            (R.coeffs, (lo, hi), (elo, ehi))
        if lo > hi:
            empties += 1
            probes = [lo - 1, lo, hi, hi + 1]
        else:
            hits += 1
            probes = [lo - 2, lo - 1, lo, (lo + hi) // 2, hi, hi + 1, hi + 2]
        box = ClosedInterval(Fraction(-B), Fraction(B))
        for c in probes:
            inside = all_roots_in(R + _rp([c]), box)
            assert inside == (lo <= c <= hi), (R.coeffs, c)
    assert empties > 20 and hits > 100


def test_solve_shift_range_generic_randoms():
    # no structural guarantees here; when the range is certified it must
    # agree with direct root location near its boundary
    rng = random.Random(777)
    certified = aborted = 0
    box = ClosedInterval(Fraction(-2), Fraction(2))
    for _ in range(150):
        d = rng.randint(2, 4)
        co = [Fraction(rng.randint(-6, 6)) for _ in range(d)]
        co.append(Fraction(rng.randint(1, 4)))
        R = RatPolynomial(co)
        try:
            lo, hi = solve_shift_range(R, 2, 32)
        except PrecisionAbort:
            aborted += 1
            continue
        certified += 1
        for c in range(lo - 2, hi + 3):
            inside = all_roots_in(R + _rp([c]), box)
            assert inside == (lo <= c <= hi), (co, c)
    assert certified > 30


def test_bracket_floor_max_frozen():
    assert bracket_floor_max(_rp([0, 0, -1]), Fraction(-1, 2),
                             Fraction(1, 2)) == 0
    assert bracket_floor_max(_rp([0, 0, -1]), Fraction(-1, 2),
                             Fraction(1, 2), t0=-1) == -1
    assert bracket_floor_max(_rp([Fraction(1, 2), 0, -1]), Fraction(-1, 2),
                             Fraction(1, 2)) == 0
    assert bracket_floor_max(_rp([Fraction(7, 2), 0, -1]), Fraction(-1),
                             Fraction(2)) == 3


def test_bracket_floor_max_vs_oracle():
    rng = random.Random(5151)
    for case in range(500):
        if case % 5 == 0:
            # concave-right cubic -z^3 + 3a^2 z + g, local max at z = a > 0
            a = Fraction(rng.randint(1, 8), rng.choice([1, 2, 4]))
            g = Fraction(rng.randint(-30, 30), rng.choice([1, 2, 3]))
            R = _rp([g, 3 * a * a, 0, -1])
            r = a * Fraction(rng.randint(1, 7), 8)
            s = a + Fraction(rng.randint(1, 16), rng.choice([1, 2, 4]))
            peak = R(a)
        else:
            # downward parabola alpha - beta (z - m)^2
            alpha = Fraction(rng.randint(-40, 40), rng.choice([1, 2, 4, 8]))
            beta = Fraction(rng.randint(1, 12), rng.choice([1, 2, 4]))
            m = Fraction(rng.randint(-16, 16), 8)
            R = _rp([alpha - beta * m * m, 2 * beta * m, -beta])
            r = m - Fraction(rng.randint(1, 16), 8)
            s = m + Fraction(rng.randint(1, 16), 8)
            peak = alpha
        t0 = rng.choice([None, None, rng.randint(-40, 40)])
        rfloor = math.floor(R(r))
        if t0 is not None and rfloor >= t0:
            expected = t0
        else:
            expected = math.floor(peak)
        assert bracket_floor_max(R, r, s, t0) == expected, (R.coeffs, r, s, t0)


def test_prescreen_frozen():
    # z^3: repeated critical point at 0, shift 0 is the unique candidate
    assert prescreen(_rp([0, 0, 0, 1]), 2) == {0}
    # non-degenerate configuration: the fallback cannot help
    with pytest.raises(PrecisionAbort):
        prescreen(_rp([-2, 0, 1]), 2)
    # z^3 + 1/2: pinned shift -1/2 is not an integer
    assert prescreen(_rp([Fraction(1, 2), 0, 0, 1]), 2) == set()


def test_shift_range_aborts_on_out_of_range_critical_point():
    # z^3 + 5z^2 + 4z + 5 has a local maximum near -2.87, outside [-2, 2];
    # root interlacing then forbids confining all roots to the box, and the
    # solver must refuse to certify rather than emit a bogus range
    with pytest.raises(PrecisionAbort):
        solve_shift_range(_rp([5, 4, 5, 1]), 2, 32)


def test_prescreen_perfect_power_family():
    rng = random.Random(8080)
    for _ in range(200):
        d = rng.randint(3, 6)
        B = rng.choice([1, 2, Fraction(5, 2)])
        a = Fraction(rng.randint(-24, 24), 8)
        shift = rng.choice([0, 0, rng.randint(-5, 5), Fraction(1, 2)])
        R = _rp([1])
        for _ in range(d):
            R = R * _rp([-a, 1])
        R = R + _rp([shift])
        got = prescreen(R, B)
        if isinstance(shift, Fraction):
            assert got == set()
        elif abs(a) <= B:
            assert got == {-shift}
        else:
            assert got == set()


def _problem(n, k, base, moduli=None, B=2):
    return SymmetricSearchProblem(
        n=n, k=k, B=B,
        base_coeffs=tuple(base),
        moduli=tuple(moduli or [1] * (n + 1)))


def test_children_rootfind_synthetic():
    problem = _problem(2, 0, [0, 0, 1])
    strat = RootfindStrategy(problem)
    rng = strat.child_range(strat.root_node())
    assert (rng.lo, rng.hi) == (-4, 4)
    assert rng.certified
    # same through the public wrapper
    rng2 = children_rootfind(strat.root_node(), problem)
    assert (rng2.lo, rng2.hi) == (-4, 4)


def test_rebuild_node_matches_child_chain():
    problem = _problem(3, 0, [1, -2, 0, 1], moduli=[12, 6, 6, 2])
    strat = RootfindStrategy(problem)
    node = strat.root_node()
    for d in (2, -1, 3):
        node = strat.make_child(node, d)
    rebuilt = strat.rebuild_node((2, -1, 3))
    assert rebuilt == node


def test_precision_policy_ladder():
    assert list(PrecisionPolicy().ladder()) == [32, 64, 128, 256]
    assert list(PrecisionPolicy(initial=16, max_retries=2).ladder()) == \
        [16, 32, 64]
    assert list(PrecisionPolicy(initial=32, max_retries=0).ladder()) == [32]
    with pytest.raises(ValueError):
        PrecisionPolicy(initial=4)


def test_precision_retry_on_tight_critical_pair():
    # 2^41 z^3 - 3 z^2 has critical points 0 and 2^-40; at 32 bits their
    # brackets collide and the node aborts, at 64 bits they separate
    problem = _problem(3, 2, [0, 0, -3, 2 ** 41])
    strat = RootfindStrategy(problem)
    rng = strat.child_range(strat.root_node())
    assert (rng.lo, rng.hi) == (0, 0)
    assert strat.max_precision_used == 64


def test_precision_exhausted_when_ladder_too_short():
    problem = _problem(3, 2, [0, 0, -3, 2 ** 41])
    strat = RootfindStrategy(problem, PrecisionPolicy(initial=8, max_retries=1))
    with pytest.raises(PrecisionExhausted):
        strat.child_range(strat.root_node())
