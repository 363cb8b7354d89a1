"""Circle-side/real-side problem types and the symmetrization transform."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from weilsearch import (
    IntPolynomial,
    SymmetricSearchProblem,
    WeilSearchProblem,
    build_symmetric_problem,
    child_count_estimate,
    desymmetrize,
    reduce_reciprocal,
    symmetrize,
    volume_estimates,
)


def test_symmetrize_known_values():
    assert symmetrize(IntPolynomial([1, 3, 1]), 1) == IntPolynomial([3, 1])
    assert symmetrize(IntPolynomial([4, 0, 4, 0, 1]), 2) == IntPolynomial([0, 0, 1])
    assert desymmetrize(IntPolynomial([3, 1]), 1) == IntPolynomial([1, 3, 1])
    assert desymmetrize(IntPolynomial([0, 0, 1]), 2) == IntPolynomial([4, 0, 4, 0, 1])


def test_symmetrize_rejects_non_reciprocal():
    with pytest.raises(ValueError):
        symmetrize(IntPolynomial([1, 2, 3]), 1)
    with pytest.raises(ValueError):
        symmetrize(IntPolynomial([1, 1]), 1)  # odd degree


def test_symmetrize_desymmetrize_roundtrip():
    rng = random.Random(443)
    for _ in range(500):
        n = rng.randrange(1, 7)
        q = rng.choice([1, 1, 2, 3, 4, 9])
        coeffs = [rng.randrange(-9, 10) for _ in range(n)] + [rng.choice([1, 2, -3, 7])]
        Q = IntPolynomial(coeffs)
        P = desymmetrize(Q, q)
        assert P.degree == 2 * Q.degree
        assert symmetrize(P, q) == Q


def test_reduce_reciprocal_even_reciprocal_passthrough():
    p = IntPolynomial([1, 3, 1])
    reduced, stripped = reduce_reciprocal(p, 1)
    assert reduced == p and stripped == []


def test_reduce_reciprocal_strips_forced_factors():
    reduced, stripped = reduce_reciprocal(IntPolynomial([-1, 0, 1]), 1)
    assert reduced == IntPolynomial([1]) and stripped == [IntPolynomial([-1, 0, 1])]
    reduced, stripped = reduce_reciprocal(IntPolynomial([-1, 0, 0, 1]), 1)
    assert reduced == IntPolynomial([1, 1, 1]) and stripped == [IntPolynomial([-1, 1])]
    reduced, stripped = reduce_reciprocal(IntPolynomial([1, 2, 2, 1]), 1)
    assert reduced == IntPolynomial([1, 1, 1]) and stripped == [IntPolynomial([1, 1])]


def test_reduce_reciprocal_q4_odd():
    # z^3 + 10z^2 + 20z + 8 = (z + 2)(z^2 + 8z + 4), reciprocal for q = 4
    reduced, stripped = reduce_reciprocal(IntPolynomial([8, 20, 10, 1]), 4)
    assert reduced == IntPolynomial([4, 8, 1])
    assert stripped == [IntPolynomial([2, 1])]


def test_reduce_reciprocal_rejects_no_functional_equation():
    with pytest.raises(ValueError):
        reduce_reciprocal(IntPolynomial([1, 2, 3]), 1)


def test_volume_estimates_small_values():
    assert volume_estimates(1) == (Fraction(4), Fraction(4))
    region, box = volume_estimates(2)
    assert region == Fraction(2**2, 2) * Fraction(2, 1) ** 2 * Fraction(4, 3)
    assert box == (2 * 4) * (2 * 6)
    with pytest.raises(ValueError):
        volume_estimates(0)


def test_child_count_estimate():
    assert child_count_estimate(28, 2401, 16) == Fraction(112, 2401 * 16)
    assert child_count_estimate(10, 9, 1) == Fraction(40, 9)
    with pytest.raises(ValueError):
        child_count_estimate(0, 1, 1)
    with pytest.raises(ValueError):
        child_count_estimate(3, 1, 0)


def test_weil_problem_validation():
    good = dict(n=1, k=0, q=1, base_coeffs=[1, 3, 1], moduli=[2, 2, 2])
    WeilSearchProblem(**good)
    with pytest.raises(ValueError):
        WeilSearchProblem(**{**good, "base_coeffs": [1, 3, 2]})  # functional eq
    with pytest.raises(ValueError):
        WeilSearchProblem(**{**good, "moduli": [2, 2]})  # length
    with pytest.raises(ValueError):
        WeilSearchProblem(**{**good, "moduli": [2, 3, 4]})  # mirror symmetry
    with pytest.raises(ValueError):
        WeilSearchProblem(**{**good, "k": 5})
    with pytest.raises(ValueError):
        WeilSearchProblem(n=1, k=0, q=1, base_coeffs=[0, 0, 0], moduli=[1, 1, 1])
    with pytest.raises(ValueError):
        WeilSearchProblem(n=2, k=0, q=1, base_coeffs=[1, 1, 1, 1, 1],
                          moduli=[2, 3, 3, 3, 2])  # chain: m_1 must divide m_0


def test_weil_problem_accepts_divisibility_chain():
    WeilSearchProblem(n=2, k=0, q=1, base_coeffs=[1, 1, 1, 1, 1], moduli=[6, 3, 3, 3, 6])


def test_symmetric_problem_validation():
    good = dict(n=2, k=0, B=Fraction(2), base_coeffs=[0, 0, 1], moduli=[1, 1, 1])
    SymmetricSearchProblem(**good)
    with pytest.raises(ValueError):
        SymmetricSearchProblem(**{**good, "base_coeffs": [0, 0, -1]})  # lead sign
    with pytest.raises(ValueError):
        SymmetricSearchProblem(**{**good, "B": Fraction(0)})
    with pytest.raises(ValueError):
        SymmetricSearchProblem(**{**good, "moduli": [1, 2, 1]})  # chain
    with pytest.raises(ValueError):
        SymmetricSearchProblem(**{**good, "moduli": [0, 1, 1]})  # positivity


def test_build_symmetric_problem_transfers_fields():
    w = WeilSearchProblem(n=1, k=0, q=4, base_coeffs=[4, 3, 1], moduli=[5, 5, 5])
    s = build_symmetric_problem(w)
    assert s.n == 1 and s.k == 0 and s.B == 4
    assert s.base_coeffs == (3, 1)
    assert s.moduli == (5, 5)
    assert s.negated is False


def test_build_symmetric_problem_normalizes_negative_lead():
    w = WeilSearchProblem(n=1, k=1, q=1, base_coeffs=[-2, -5, -2], moduli=[1, 1, 1])
    s = build_symmetric_problem(w)
    assert s.negated is True
    assert s.base_coeffs[-1] > 0
    assert symmetrize(IntPolynomial([2, 5, 2]), 1).coeffs == s.base_coeffs


def test_build_symmetric_problem_rejects_nonsquare_q():
    w = WeilSearchProblem(n=1, k=0, q=2, base_coeffs=[2, 1, 1], moduli=[1, 1, 1])
    with pytest.raises(ValueError):
        build_symmetric_problem(w)


def test_volume_ratio_shrinks():
    r10, b10 = volume_estimates(10)
    assert Fraction(r10, b10) < Fraction(1, 10**30)
