"""Majorana polynomial, its roots, and Vieta's relations.

For a state (a_0, ..., a_{d-1}) the Majorana polynomial is

    g(z) = sum_j (-1)^j a_j sqrt(C(d-1, j)) z^{d-1-j}.

Leading zero coefficients lower the degree; each one is a root "at
infinity", i.e. a star at (0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ConvergenceError, StateVector, ValidationError, binomial

MAX_ITER = 200
STEP_TOL = 1e-13
ANGLE_OFFSET = 0.3
RESIDUAL_TOL = 1e-8
CLUSTER_TOL = 1e-6
# iteration runs in extended precision (80-bit on x86-64) so that the split
# of a multiple root stays below the tolerance budget of the callers
_WORK = np.clongdouble
_EPS = float(np.finfo(np.longdouble).eps)


@dataclass(frozen=True)
class MajoranaPolynomial:
    """Coefficients c_0..c_{d-1} of g(z) = sum_j c_j z^{d-1-j}, highest power first."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).reshape(-1)
        if c.size < 2:
            raise ValidationError("a Majorana polynomial needs d >= 2 coefficients")
        if not np.any(c != 0):
            raise ValidationError("all coefficients are zero")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def d(self) -> int:
        return self.coefficients.size

    @property
    def leading_index(self) -> int:
        """Index r of the first nonzero coefficient (= number of roots at infinity)."""
        return int(np.flatnonzero(self.coefficients)[0])

    def deflated(self) -> np.ndarray:
        """Coefficients with the leading zeros stripped (degree d-1-r)."""
        return self.coefficients[self.leading_index :]

    def __call__(self, z):
        return np.polyval(self.coefficients, z)

    def to_amplitudes(self) -> np.ndarray:
        d = self.d
        signs = (-1.0) ** np.arange(d)
        weights = np.sqrt([binomial(d - 1, j) for j in range(d)])
        return signs * self.coefficients / weights


@dataclass(frozen=True)
class RootMultiset:
    finite_roots: np.ndarray
    infinity_count: int
    residuals: np.ndarray | None = None

    def __post_init__(self):
        r = np.array(self.finite_roots, dtype=complex).reshape(-1)
        r.setflags(write=False)
        object.__setattr__(self, "finite_roots", r)
        if self.infinity_count < 0:
            raise ValidationError("infinity_count must be non-negative")

    @property
    def degree_total(self) -> int:
        """d - 1: finite roots plus roots at infinity."""
        return self.finite_roots.size + self.infinity_count


def build_polynomial(s: StateVector) -> MajoranaPolynomial:
    d = s.dim
    factors = np.array([(-1) ** j * math.sqrt(binomial(d - 1, j)) for j in range(d)])
    return MajoranaPolynomial(factors * s.amplitudes)


def elementary_symmetric(values, k: int) -> complex:
    """E_k(values) via the product recurrence for prod_i (1 + mu_i t)."""
    vals = np.asarray(values, dtype=complex).reshape(-1)
    if not 0 <= k <= vals.size:
        raise ValueError(f"k={k} outside [0, {vals.size}]")
    return complex(_elementary_all(vals)[k])


def _elementary_all(vals: np.ndarray) -> np.ndarray:
    e = np.zeros(vals.size + 1, dtype=complex)
    e[0] = 1
    for i, mu in enumerate(vals, start=1):
        e[1 : i + 1] = e[1 : i + 1] + mu * e[0:i]
    return e


def coefficients_from_roots(roots: RootMultiset, leading: complex) -> MajoranaPolynomial:
    """c_0 prod (z - mu), prefixed with ``infinity_count`` zero coefficients."""
    if leading == 0:
        raise ValueError("leading coefficient must be nonzero")
    e = _elementary_all(roots.finite_roots)
    signs = (-1.0) ** np.arange(e.size)
    deflated = complex(leading) * signs * e
    return MajoranaPolynomial(np.concatenate([np.zeros(roots.infinity_count, complex), deflated]))


def _horner(coeffs: np.ndarray, z: np.ndarray):
    """p(z), p'(z) and sum_j |c_j| |z|^{m-j} (for the rounding-error bound)."""
    p = np.full(z.shape, coeffs[0], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    bound = np.full(z.shape, abs(coeffs[0]))
    az = np.abs(z)
    for c in coeffs[1:]:
        dp = dp * z + p
        p = p * z + c
        bound = bound * az + abs(c)
    return p, dp, bound


def _aberth(monic: np.ndarray) -> tuple[np.ndarray, bool]:
    """Simultaneous Aberth-Ehrlich iteration on a monic polynomial (degree >= 2).

    A root stops moving once its correction is below STEP_TOL (1 + |z|) or
    |p(z)| is within the rounding-error level of Horner evaluation; the second
    test is what lets clustered (multiple) roots terminate.
    """
    monic = monic.astype(_WORK)
    m = monic.size - 1
    radius = 1.0 + float(np.max(np.abs(monic[1:])))
    z = (radius * np.exp(1j * (2 * np.pi * np.arange(m) / m + ANGLE_OFFSET))).astype(_WORK)
    active = np.ones(m, dtype=bool)
    for _ in range(MAX_ITER):
        p, dp, bound = _horner(monic, z)
        at_noise = np.abs(p) <= 16 * m * _EPS * bound
        active &= ~at_noise
        if not active.any():
            return z, True
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        repulsion = (1.0 / diff).sum(axis=1) - 1.0  # drop the diagonal's 1/1
        idx = np.flatnonzero(active)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = p[idx] / dp[idx]
            step = newton / (1.0 - newton * repulsion[idx])
        bad = ~np.isfinite(step)
        step[bad] = 0.0
        z[idx] = z[idx] - step
        done = np.abs(step) <= STEP_TOL * (1.0 + np.abs(z[idx]))
        active[idx[done & ~bad]] = False
        if not active.any():
            return z, True
    return z, False


def _polish(monic: np.ndarray, z: np.ndarray) -> np.ndarray:
    """One Newton step per root, kept only where it lowers |p|."""
    monic = monic.astype(_WORK)
    p, dp, _ = _horner(monic, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        cand = z - p / dp
    ok = np.isfinite(cand)
    pc, _, _ = _horner(monic, np.where(ok, cand, z))
    better = ok & (np.abs(pc) < np.abs(p))
    return np.where(better, cand, z)


def _clusters(z: np.ndarray, tol: float) -> list[list[int]]:
    """Groups of indices whose members chain together within tol (1 + |z|)."""
    parent = list(range(z.size))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(z.size):
        for j in range(i + 1, z.size):
            if abs(z[i] - z[j]) <= tol * (1.0 + abs(z[i])):
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(z.size):
        groups.setdefault(find(i), []).append(i)
    return [g for g in groups.values() if len(g) > 1]


def _vieta_error(monic: np.ndarray, z: np.ndarray) -> float:
    e = _elementary_all(z.astype(complex))
    signs = (-1.0) ** np.arange(e.size)
    return float(np.max(np.abs(signs * e - monic.astype(complex))))


def _recenter_clusters(monic: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Shift each tight cluster of k roots so its mean sits on a root of p^(k-1).

    A k-fold root splits into a ring of size ~eps^(1/k) whose mean drifts
    too; the mean is a simple root of the (k-1)-th derivative and can be
    refined by Newton.  Member offsets are kept, so nothing is merged.
    The shift is only kept when the Vieta reconstruction improves.
    """
    monic = monic.astype(_WORK)
    base = z.astype(_WORK)
    shifts = []
    for group in _clusters(base, CLUSTER_TOL):
        k = len(group)
        deriv = np.polyder(monic, k - 1)
        centre = base[group].mean()
        c = centre
        for _ in range(8):
            q, dq, _ = _horner(deriv, np.array([c]))
            if dq[0] == 0:
                break
            step = q[0] / dq[0]
            c = c - step
            if abs(step) <= _EPS * (1.0 + abs(c)):
                break
        shifts.append((group, c - centre))
    if not shifts:
        return base

    def shifted(items):
        t = base.copy()
        for group, delta in items:
            t[group] = t[group] + delta
        return t

    # errors of different clusters can partially cancel, so try the joint shift first
    best = base
    best_err = _vieta_error(monic, base)
    joint = shifted(shifts)
    if _vieta_error(monic, joint) < best_err:
        return joint
    for item in shifts:
        trial = best.copy()
        group, delta = item
        trial[group] = trial[group] + delta
        err = _vieta_error(monic, trial)
        if err < best_err:
            best, best_err = trial, err
    return best


def root_residuals(p: MajoranaPolynomial, roots) -> np.ndarray:
    """|g(mu)| / (max|c_j| (1 + |mu|)^deg) for each finite root."""
    c = p.deflated()
    mu = np.asarray(roots, dtype=complex)
    deg = c.size - 1
    scale = np.max(np.abs(c)) * (1.0 + np.abs(mu)) ** deg
    return np.abs(np.polyval(c, mu)) / scale


def find_roots(p: MajoranaPolynomial) -> RootMultiset:
    """Finite roots (with multiplicity) plus the count of roots at infinity."""
    r = p.leading_index
    c = p.deflated()
    deg = c.size - 1
    if deg == 0:
        return RootMultiset(np.zeros(0, complex), r, np.zeros(0))
    monic = c / c[0]
    if deg == 1:
        z = np.array([-monic[1]])
        converged = True
    else:
        z, converged = _aberth(monic)
        z = _recenter_clusters(monic, _polish(monic, z)).astype(complex)
    res = root_residuals(p, z)
    # an exhausted budget is tolerated when every root already meets the residual bound
    if np.any(res > RESIDUAL_TOL):
        status = "converged" if converged else f"stopped after {MAX_ITER} iterations"
        raise ConvergenceError(
            f"Aberth iteration {status} with worst scaled residual {res.max():.3e}",
            iterates=z,
            residuals=res,
        )
    return RootMultiset(z, r, res)
