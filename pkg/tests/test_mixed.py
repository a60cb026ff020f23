import math

import numpy as np
import pytest

from majorana import (
    DensityMatrix,
    MixedStarModel,
    SizeError,
    StarSet,
    StateVector,
    ValidationError,
    decompose_mixed,
    density_entry_from_stars,
    hermitian_eigh,
    normalize_star_set,
    partial_trace_ancilla,
    purification_error,
    purify_and_represent,
    pure_density_from_stars,
    reconstruct_mixed,
    star_sets_match,
    star_to_bloch,
    state_to_stars,
    stars_to_state,
)
from majorana.mixed import purification_vector

from conftest import EXAMPLE_A, EXAMPLE_C, STARS_A, STARS_C, random_complex, random_density

NORTH = StarSet.from_pairs([(1, 0)])


def _unit(v):
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


def test_density_matrix_validation():
    DensityMatrix(np.eye(3) / 3)
    with pytest.raises(ValidationError, match="trace"):
        DensityMatrix(np.eye(2))
    with pytest.raises(ValidationError, match="Hermitian"):
        DensityMatrix([[0.5, 1j], [0, 0.5]])
    with pytest.raises(ValidationError, match="Hermitian.*trace"):
        DensityMatrix([[1.0, 1j], [0, 0.5]])
    with pytest.raises(ValidationError):
        DensityMatrix(np.ones((2, 3)) / 2)


def test_mixed_model_validation():
    with pytest.raises(ValidationError):
        MixedStarModel([0.5, 0.4], (NORTH, NORTH))
    with pytest.raises(ValidationError):
        MixedStarModel([1.0], (STARS_A,))
    with pytest.raises(ValidationError):
        MixedStarModel([1.0], ())


def test_density_entry_examples():
    assert density_entry_from_stars(NORTH, 0, 0) == pytest.approx(1, abs=1e-15)
    assert density_entry_from_stars(NORTH, 1, 1) == pytest.approx(0, abs=1e-15)
    A = normalize_star_set(STARS_A)
    a = EXAMPLE_A
    # 3 / (541/6) = 18/541
    assert abs(density_entry_from_stars(A, 0, 1) - a[0] * np.conj(a[1]) / np.vdot(a, a).real) <= 1e-12
    assert abs(density_entry_from_stars(A, 0, 1) - 18 / 541) <= 1e-12
    with pytest.raises(ValueError):
        density_entry_from_stars(A, 0, 5)


def test_density_entry_conjugate_symmetry(rng):
    for _ in range(20):
        n = int(rng.integers(1, 7))
        A = normalize_star_set(StarSet.from_pairs(random_complex(rng, n, 2), prefactor=1j))
        for r in range(n + 1):
            for s in range(n + 1):
                assert abs(density_entry_from_stars(A, r, s) - np.conj(density_entry_from_stars(A, s, r))) <= 1e-13


def test_pure_density_examples():
    half = 1 / math.sqrt(2)
    np.testing.assert_allclose(
        pure_density_from_stars(StarSet.from_pairs([(half, half)])).entries, [[0.5, 0.5], [0.5, 0.5]], atol=1e-15
    )
    expected = np.zeros((5, 5))
    expected[0, 0] = 1
    np.testing.assert_allclose(pure_density_from_stars(StarSet.from_pairs([(1, 0)] * 4)).entries, expected, atol=1e-15)
    c = _unit(EXAMPLE_C)
    np.testing.assert_allclose(
        pure_density_from_stars(normalize_star_set(STARS_C)).entries, np.outer(c, c.conj()), atol=1e-12
    )


def test_pure_density_properties(rng):
    for _ in range(30):
        n = int(rng.integers(1, 9))
        A = normalize_star_set(StarSet.from_pairs(random_complex(rng, n, 2)))
        rho = pure_density_from_stars(A).entries
        a = stars_to_state(A).amplitudes
        np.testing.assert_allclose(rho, np.outer(a, a.conj()), atol=1e-9)
        assert abs(np.trace(rho) - 1) <= 1e-10
        assert np.max(np.abs(rho - rho.conj().T)) <= 1e-10
        values = np.linalg.eigvalsh(rho)
        assert values[-2] <= 1e-9


def test_jacobi_matches_lapack(rng):
    for n in range(1, 9):
        h = random_complex(rng, n, n)
        h = h + h.conj().T
        values, vectors = hermitian_eigh(h)
        np.testing.assert_allclose(values, np.linalg.eigvalsh(h)[::-1], atol=1e-11)
        np.testing.assert_allclose(vectors.conj().T @ vectors, np.eye(n), atol=1e-12)
        np.testing.assert_allclose(vectors @ np.diag(values) @ vectors.conj().T, h, atol=1e-11)


def test_jacobi_diagonal_and_degenerate():
    values, vectors = hermitian_eigh(np.diag([0.2, 0.5, 0.3]))
    np.testing.assert_array_equal(values, [0.5, 0.3, 0.2])
    values, _ = hermitian_eigh(np.eye(4))
    np.testing.assert_array_equal(values, [1, 1, 1, 1])


def test_decompose_maximally_mixed_qubit():
    model = decompose_mixed(DensityMatrix(np.eye(2) / 2))
    np.testing.assert_allclose(model.weights, [0.5, 0.5], atol=1e-15)
    p, q = (star_to_bloch(c.stars[0]).as_array() for c in model.components)
    np.testing.assert_allclose(p, -q, atol=1e-12)
    np.testing.assert_allclose(reconstruct_mixed(model).entries, np.eye(2) / 2, atol=1e-10)


def test_decompose_pure_state():
    a = _unit(EXAMPLE_A)
    model = decompose_mixed(DensityMatrix(np.outer(a, a.conj())))
    assert model.weights.tolist() == [1.0]
    assert star_sets_match(model.components[0], STARS_A, 1e-7)
    single = reconstruct_mixed(model).entries
    np.testing.assert_allclose(single, pure_density_from_stars(model.components[0]).entries, atol=1e-15)


def test_decompose_two_component_mixture(rng):
    q, _ = np.linalg.qr(random_complex(rng, 5, 5))
    a, b = q[:, 0], q[:, 1]
    rho = 0.7 * np.outer(a, a.conj()) + 0.3 * np.outer(b, b.conj())
    model = decompose_mixed(DensityMatrix(rho))
    assert len(model.components) == 2
    np.testing.assert_allclose(model.weights, [0.7, 0.3], atol=1e-12)
    np.testing.assert_allclose(reconstruct_mixed(model).entries, rho, atol=1e-8)


def test_decompose_reconstruct_random(rng):
    for _ in range(60):
        d = int(rng.integers(2, 9))
        rho = random_density(rng, d, int(rng.integers(1, d + 1)))
        model = decompose_mixed(DensityMatrix(rho))
        assert np.max(np.abs(reconstruct_mixed(model).entries - rho)) <= 1e-8
        again = decompose_mixed(reconstruct_mixed(model))
        assert np.max(np.abs(reconstruct_mixed(again).entries - rho)) <= 1e-8


def test_decompose_rejects_non_psd():
    with pytest.raises(ValidationError, match="positive semi-definite"):
        decompose_mixed(DensityMatrix(np.diag([1.2, -0.2])))


def test_purify_pure_state():
    a = _unit(EXAMPLE_A)
    rho = DensityMatrix(np.outer(a, a.conj()))
    res = purify_and_represent(rho)
    assert len(res.stars.stars) == 4
    assert star_sets_match(res.stars, state_to_stars(StateVector(a)).stars, 1e-7)
    assert purification_error(res, rho) <= 1e-8


def test_purify_maximally_mixed_qubit():
    rho = DensityMatrix(np.eye(2) / 2)
    psi, rank = purification_vector(rho)
    assert rank == 2
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    assert abs(abs(np.vdot(psi, bell)) - 1) <= 1e-12
    res = purify_and_represent(rho)
    assert len(res.stars.stars) == 3
    assert purification_error(res, rho) <= 1e-10


def test_purify_rank2_qutrit(rng):
    rho = DensityMatrix(random_density(rng, 3, 2))
    res = purify_and_represent(rho)
    assert len(res.stars.stars) == 5
    assert purification_error(res, rho) <= 1e-8


def test_partial_trace_convention():
    # ancilla index slow: psi = e0 (x) x + e1 (x) y
    x, y = np.array([1, 0, 0]), np.array([0, 0, 1j])
    psi = np.concatenate([x, y]) / math.sqrt(2)
    np.testing.assert_allclose(partial_trace_ancilla(psi, 3), np.diag([0.5, 0, 0.5]), atol=1e-15)


def test_purification_recovery_random(rng):
    for _ in range(40):
        d = int(rng.integers(2, 7))
        r = int(rng.integers(1, min(d, 12 // d) + 1))
        rho = DensityMatrix(random_density(rng, d, r))
        res = purify_and_represent(rho)
        assert len(res.stars.stars) == r * d - 1
        assert purification_error(res, rho) <= 1e-8


def test_purify_size_cap(rng):
    with pytest.raises(SizeError):
        purify_and_represent(DensityMatrix(random_density(rng, 6, 6)))
