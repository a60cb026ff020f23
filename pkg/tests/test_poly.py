import itertools

import numpy as np
import pytest

from majorana import (
    ConvergenceError,
    MajoranaPolynomial,
    RootMultiset,
    StateVector,
    ValidationError,
    build_polynomial,
    coefficients_from_roots,
    elementary_symmetric,
    find_roots,
)
from majorana.poly import root_residuals

from conftest import EXAMPLE_A, EXAMPLE_B, EXAMPLE_C, random_complex


def _multiset_distance(x, y):
    # greedy nearest pairing is enough for well-separated test sets
    x, y = list(np.asarray(x, complex)), list(np.asarray(y, complex))
    assert len(x) == len(y)
    worst = 0.0
    for a in x:
        j = int(np.argmin([abs(a - b) for b in y]))
        worst = max(worst, abs(a - y.pop(j)))
    return worst


def test_build_polynomial_examples():
    np.testing.assert_allclose(build_polynomial(StateVector(EXAMPLE_A)).coefficients, [1, -6, 13, -12, 4], atol=1e-13)
    np.testing.assert_allclose(build_polynomial(StateVector(EXAMPLE_B)).coefficients, [0, -1, 6, -11, 6], atol=1e-13)
    np.testing.assert_array_equal(build_polynomial(StateVector([1, 0, 0, 0, 0, 0])).coefficients, [1, 0, 0, 0, 0, 0])


def test_polynomial_fields():
    p = build_polynomial(StateVector(EXAMPLE_C))
    assert p.d == 5
    assert p.leading_index == 2
    np.testing.assert_allclose(p.deflated(), [1, -2, 1], atol=1e-14)
    np.testing.assert_allclose(p.to_amplitudes(), EXAMPLE_C, atol=1e-14)
    assert abs(p(1.0)) < 1e-14
    with pytest.raises(ValidationError):
        MajoranaPolynomial([0, 0])


@pytest.mark.parametrize(
    "amps,roots,r",
    [(EXAMPLE_A, [1, 1, 2, 2], 0), (EXAMPLE_B, [1, 2, 3], 1), (EXAMPLE_C, [1, 1], 2)],
)
def test_find_roots_examples(amps, roots, r):
    res = find_roots(build_polynomial(StateVector(amps)))
    assert res.infinity_count == r
    assert res.degree_total == 4
    assert _multiset_distance(res.finite_roots, roots) < 1e-7


def test_find_roots_all_at_infinity():
    res = find_roots(build_polynomial(StateVector([0, 0, 0, 2])))
    assert res.infinity_count == 3
    assert res.finite_roots.size == 0


def test_trailing_zeros_give_roots_at_zero():
    res = find_roots(build_polynomial(StateVector([1, 0, 0, 0])))
    assert np.all(np.abs(res.finite_roots) < 1e-12)


def test_elementary_symmetric_examples():
    assert elementary_symmetric([1, 2, 3], 2) == 11
    assert elementary_symmetric([1.5, -2j], 0) == 1
    assert elementary_symmetric([], 0) == 1
    assert elementary_symmetric([1, 1, 2, 2], 4) == 4
    with pytest.raises(ValueError):
        elementary_symmetric([1, 2], 3)


def test_elementary_symmetric_vs_subsets(rng):
    for n in range(0, 9):
        vals = random_complex(rng, n)
        for k in range(n + 1):
            brute = sum((np.prod(c) for c in itertools.combinations(vals, k)), start=0j) if k else 1
            got = elementary_symmetric(vals, k)
            assert abs(got - brute) <= 1e-12 * max(1.0, abs(brute))


def test_coefficients_from_roots_examples():
    p = coefficients_from_roots(RootMultiset([1, 1, 2, 2], 0), 1)
    np.testing.assert_allclose(p.coefficients, [1, -6, 13, -12, 4], atol=1e-14)
    with pytest.raises(ValidationError):
        # a degree-0 polynomial is a single coefficient, which is not a valid Majorana polynomial
        coefficients_from_roots(RootMultiset([], 0), 5)
    p = coefficients_from_roots(RootMultiset([], 1), 5)
    np.testing.assert_array_equal(p.coefficients, [0, 5])
    with pytest.raises(ValueError):
        coefficients_from_roots(RootMultiset([1], 0), 0)


def test_random_degree6_roots_recovered(rng):
    for _ in range(20):
        roots = random_complex(rng, 6)
        p = coefficients_from_roots(RootMultiset(roots, 0), complex(*rng.normal(size=2)))
        assert _multiset_distance(find_roots(p).finite_roots, roots) < 1e-6


def test_vieta_round_trip(rng):
    for _ in range(200):
        d = int(rng.integers(2, 13))
        amps = random_complex(rng, d)
        r = int(rng.integers(0, d))
        amps[:r] = 0 if rng.random() < 0.3 else amps[:r]
        p = build_polynomial(StateVector(amps))
        roots = find_roots(p)
        assert roots.infinity_count == p.leading_index == int(np.flatnonzero(amps)[0])
        back = coefficients_from_roots(roots, p.coefficients[p.leading_index])
        scale = np.max(np.abs(p.coefficients))
        assert np.max(np.abs(back.coefficients - p.coefficients)) <= 1e-6 * scale
        assert np.all(root_residuals(p, roots.finite_roots) <= 1e-8)


def test_clustered_roots_d12():
    roots = np.concatenate([1 + 1e-4 * np.exp(2j * np.pi * np.arange(4) / 4), [2j] * 3, [-1, 0.5, 3, -2j]])
    p = coefficients_from_roots(RootMultiset(roots, 0), 1)
    res = find_roots(p)
    assert np.all(res.residuals <= 1e-8)
    back = coefficients_from_roots(res, 1)
    np.testing.assert_allclose(back.coefficients, p.coefficients, atol=1e-9 * np.max(np.abs(p.coefficients)))


def test_convergence_error_carries_iterates():
    err = ConvergenceError("x", iterates=np.array([1j]), residuals=np.array([1.0]))
    assert err.iterates[0] == 1j
    assert isinstance(err, ArithmeticError)
