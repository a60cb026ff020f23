"""Mixed states: ensembles of star sets and purification."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ConvergenceError, SizeError, StarSet, StateVector, ValidationError, binomial, selector_matrix
from .permanent import RYSER_MAX, _unit_columns, decomposable_norm, permanent_ryser
from .representation import CorrespondenceResult, normalize_star_set, state_to_stars, stars_to_state

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIGEN_DROP = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
PURIFY_MAX = RYSER_MAX + 1


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        problems = []
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"density matrix must be square, got shape {m.shape}")
        if m.shape[0] < 2:
            raise ValidationError("density matrix dimension must be >= 2")
        if not np.all(np.isfinite(m)):
            raise ValidationError("density matrix entries must be finite")
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > HERMITIAN_TOL:
            problems.append(f"not Hermitian (max |rho - rho^*| = {herm:.3e})")
        tr = np.trace(m)
        if abs(tr - 1) > TRACE_TOL:
            problems.append(f"trace is {tr.real:.12g}{tr.imag:+.3g}j, not 1")
        if problems:
            raise ValidationError("invalid density matrix: " + "; ".join(problems))
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class MixedStarModel:
    weights: np.ndarray
    components: tuple[StarSet, ...]

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        comps = tuple(self.components)
        if w.size < 1 or w.size != len(comps):
            raise ValidationError(f"{w.size} weights for {len(comps)} components")
        if np.any(w < 0) or abs(w.sum() - 1) > 1e-10:
            raise ValidationError("weights must be a probability vector")
        if len({c.dim for c in comps}) != 1:
            raise ValidationError("components have different dimensions")
        for c in comps:
            if abs(decomposable_norm(c) - 1) > 1e-8:
                raise ValidationError("components must be normalized star sets")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return self.components[0].dim


def hermitian_eigh(h) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for Hermitian matrices.

    Each rotation first rephases column q so that a_pq is real and
    non-negative, then applies the real symmetric Jacobi rotation that zeroes
    it.  Sweeps run row-cyclically until the off-diagonal Frobenius norm is at
    most ``JACOBI_TOL``.

    Returns
    -------
    values : ndarray
        Real eigenvalues, descending.
    vectors : ndarray
        Unitary matrix whose column k is the eigenvector of ``values[k]``.
    """
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= JACOBI_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                u = apq.conjugate() / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * u, c * u]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ rot
    else:
        raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    values = np.diag(a).real.copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v[:, order]


def _positive_part(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs with eigenvalue above EIGEN_DROP, weights renormalized."""
    values, vectors = hermitian_eigh(rho.entries)
    if values.min() < -EIGEN_DROP:
        raise ValidationError(f"invalid density matrix: not positive semi-definite (eigenvalue {values.min():.3e})")
    keep = values > EIGEN_DROP
    w = values[keep]
    return w / w.sum(), vectors[:, keep]


def _selector_permanents(A: StarSet) -> tuple[np.ndarray, np.ndarray]:
    """per(C_r^* V) and per(V^* C_r) for every r, on unit-column V."""
    d = A.dim
    if d - 1 > RYSER_MAX:
        raise SizeError(f"permanent formulas limited to d <= {RYSER_MAX + 1}")
    V, norms = _unit_columns(A.matrix())
    scale = abs(A.prefactor) * np.prod(norms) / math.factorial(d - 1)
    left = np.empty(d, dtype=complex)
    right = np.empty(d, dtype=complex)
    for r in range(d):
        C = selector_matrix(d, r).columns
        w = math.sqrt(binomial(d - 1, r))
        left[r] = scale * w * permanent_ryser(C.conj().T @ V)
        right[r] = scale * w * permanent_ryser(V.conj().T @ C)
    return left, right


def density_entry_from_stars(A: StarSet, r: int, s: int) -> complex:
    """(r, s) entry a_r conj(a_s) of the pure state represented by ``A``.

    sqrt(C(d-1,r) C(d-1,s)) per(C_r^* V) per(V^* C_s) / ((d-1)!)^2, times
    |prefactor|^2.
    """
    d = A.dim
    if not (0 <= r < d and 0 <= s < d):
        raise ValueError(f"indices ({r}, {s}) outside [0, {d - 1}]")
    V, norms = _unit_columns(A.matrix())
    scale = (abs(A.prefactor) * np.prod(norms) / math.factorial(d - 1)) ** 2
    Cr = selector_matrix(d, r).columns
    Cs = selector_matrix(d, s).columns
    weight = math.sqrt(binomial(d - 1, r) * binomial(d - 1, s))
    return complex(scale * weight * permanent_ryser(Cr.conj().T @ V) * permanent_ryser(V.conj().T @ Cs))


def pure_density_from_stars(A: StarSet) -> DensityMatrix:
    left, right = _selector_permanents(A)
    return DensityMatrix(np.outer(left, right))


def decompose_mixed(rho: DensityMatrix) -> MixedStarModel:
    """Spectral ensemble: one normalized star set per retained eigenvector.

    Degenerate eigenvalues make the ensemble non-unique; models are only
    comparable through :func:`reconstruct_mixed`.
    """
    weights, vectors = _positive_part(rho)
    comps = tuple(normalize_star_set(state_to_stars(StateVector(vectors[:, k])).stars) for k in range(weights.size))
    return MixedStarModel(weights, comps)


def reconstruct_mixed(m: MixedStarModel) -> DensityMatrix:
    total = sum(p * pure_density_from_stars(c).entries for p, c in zip(m.weights, m.components))
    return DensityMatrix(total)


def purification_vector(rho: DensityMatrix) -> tuple[np.ndarray, int]:
    """psi in C^{r d} with psi[j d + i] = sqrt(p_j) v_j[i] (ancilla index j slow)."""
    weights, vectors = _positive_part(rho)
    rank = weights.size
    if rank * rho.dim > PURIFY_MAX:
        raise SizeError(f"purified dimension {rank * rho.dim} exceeds cap {PURIFY_MAX}")
    psi = (np.sqrt(weights)[:, None] * vectors.T).reshape(-1)
    return psi, rank


def partial_trace_ancilla(psi, d: int) -> np.ndarray:
    """Trace |psi><psi| over the slow (ancilla) index of C^r ⊗ C^d."""
    m = np.asarray(psi, dtype=complex).reshape(-1, d)
    return m.T @ m.conj()


def purify_and_represent(rho: DensityMatrix) -> CorrespondenceResult:
    psi, _ = purification_vector(rho)
    return state_to_stars(StateVector(psi))


def purification_error(result: CorrespondenceResult, rho: DensityMatrix, method: str = "permanent") -> float:
    """Max entrywise error of the ancilla partial trace of the state rebuilt from stars."""
    psi = stars_to_state(result.stars, method=method).amplitudes
    return float(np.max(np.abs(partial_trace_ancilla(psi, rho.dim) - rho.entries)))
