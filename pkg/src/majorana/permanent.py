"""Matrix permanents and inner products of decomposable symmetric tensors."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import NumericalConsistencyError, SizeError, StarSet

NAIVE_MAX = 9
RYSER_MAX = 24
_CHUNK_BITS = 14


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def permanent_naive(m) -> complex:
    """Sum over all n! permutations.  Oracle for the fast kernel; n <= 9."""
    a = _as_square(m)
    n = a.shape[0]
    if n > NAIVE_MAX:
        raise SizeError(f"naive permanent limited to n <= {NAIVE_MAX}, got {n}")
    if n == 0:
        return 1 + 0j
    rows = range(n)
    total = 0j
    for sigma in itertools.permutations(rows):
        prod = 1 + 0j
        for i in rows:
            prod *= a[i, sigma[i]]
        total += prod
    return total


def _gray(k: np.ndarray) -> np.ndarray:
    return k ^ (k >> 1)


def permanent_ryser(m) -> complex:
    """Ryser inclusion-exclusion with Gray-code subset order, O(2^n n).

    per(A) = (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} a_ij

    Subsets are walked in Gray-code order in fixed-size chunks.  Each chunk
    restarts from row sums computed directly from its subset mask, so rounding
    drift does not accumulate across chunks and the summation order is fixed.
    """
    a = _as_square(m)
    n = a.shape[0]
    if n > RYSER_MAX:
        raise SizeError(f"Ryser permanent limited to n <= {RYSER_MAX}, got {n}")
    if n == 0:
        return 1 + 0j
    if n == 1:
        return complex(a[0, 0])

    total_steps = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)
    bit_weights = 1 << np.arange(n, dtype=np.int64)
    partials = []
    # k = 0 is the empty subset, whose product of zero row sums is 0
    for start in range(1, total_steps, chunk):
        stop = min(start + chunk, total_steps)
        k = np.arange(start, stop, dtype=np.int64)
        g = _gray(k)
        mask0 = (g[0] & bit_weights) != 0
        rs0 = a[:, mask0].sum(axis=1)
        if k.size > 1:
            ks = k[1:]
            flip = np.log2(ks & -ks).astype(np.int64)
            added = (g[1:] >> flip) & 1
            sign = np.where(added == 1, 1.0, -1.0)
            deltas = a.T[flip] * sign[:, None]
            rows = np.vstack([rs0[None, :], rs0[None, :] + np.cumsum(deltas, axis=0)])
        else:
            rows = rs0[None, :]
        parity = np.where(np.bitwise_count(g) % 2 == 0, 1.0, -1.0)
        partials.append(np.sum(parity * np.prod(rows, axis=1)))
    total = np.sum(np.array(partials))
    return complex(total * (-1) ** n)


def gram_matrix(U, W) -> np.ndarray:
    """Entry (i, j) is <u_i, w_j> = u_i^* w_j for columns u_i of U, w_j of W."""
    u = np.asarray(U, dtype=complex)
    w = np.asarray(W, dtype=complex)
    if u.ndim != 2 or w.ndim != 2 or u.shape[0] != w.shape[0]:
        raise ValueError(f"incompatible shapes {u.shape} and {w.shape}")
    if u.shape[1] != w.shape[1]:
        raise ValueError(f"column counts differ: {u.shape[1]} vs {w.shape[1]}")
    if u.shape[1] < 1:
        raise ValueError("need at least one column")
    return u.conj().T @ w


def _unit_columns(V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    norms = np.linalg.norm(V, axis=0)
    return V / norms, norms


def decomposable_inner(A: StarSet, B: StarSet) -> complex:
    """<A, B> = conj(pA) pB per(<u_i, w_j>) / (d-1)!."""
    if len(A.stars) != len(B.stars):
        raise ValueError(f"star counts differ: {len(A.stars)} vs {len(B.stars)}")
    n = len(A.stars)
    if n > RYSER_MAX:
        raise SizeError(f"inner product limited to d <= {RYSER_MAX + 1}")
    # unit columns keep Ryser's alternating sum well scaled; the norms come back as a factor
    U, nu = _unit_columns(A.matrix())
    W, nw = _unit_columns(B.matrix())
    per = permanent_ryser(gram_matrix(U, W))
    return A.prefactor.conjugate() * B.prefactor * (np.prod(nu) * np.prod(nw)) * per / math.factorial(n)


def decomposable_norm(A: StarSet) -> float:
    ip = decomposable_inner(A, A)
    scale = abs(A.prefactor) ** 2 * float(np.prod([s.norm() ** 2 for s in A.stars]))
    tol = 1e-10 * max(scale, 1.0)
    if abs(ip.imag) > tol:
        raise NumericalConsistencyError(f"self inner product has imaginary part {ip.imag!r}")
    if ip.real < -tol:
        raise NumericalConsistencyError(f"self inner product is negative: {ip.real!r}")
    return math.sqrt(max(ip.real, 0.0))
