"""State vector <-> star set correspondence and Bloch-sphere geometry."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from .core import BlochPoint, SizeError, Star, StarSet, StateVector, binomial, selector_matrix
from .permanent import RYSER_MAX, _unit_columns, decomposable_inner, decomposable_norm, permanent_ryser
from .poly import _elementary_all, build_polynomial, find_roots

DEFAULT_MATCH_TOL = 1e-6
SOUTH = Star(0j, 1 + 0j)


@dataclass(frozen=True)
class CorrespondenceResult:
    stars: StarSet
    source: StateVector
    residual: float


def star_to_bloch(s: Star) -> BlochPoint:
    """Unit Bloch vector (2 Re(a0* a1), 2 Im(a0* a1), |a0|^2 - |a1|^2) of the normalized star."""
    u = s.normalized()
    cross = u.alpha.conjugate() * u.beta
    c = np.array([2 * cross.real, 2 * cross.imag, abs(u.alpha) ** 2 - abs(u.beta) ** 2])
    c /= np.linalg.norm(c)
    return BlochPoint(*(float(x) for x in c))


def bloch_to_star(p) -> Star:
    c = p.as_array() if isinstance(p, BlochPoint) else np.asarray(p, dtype=float).reshape(3)
    n = np.linalg.norm(c)
    if not np.isfinite(n) or abs(n - 1.0) > 1e-9:
        raise ValueError(f"Bloch vector has norm {n!r}, expected 1 within 1e-9")
    cx, cy, cz = c / n
    cz = min(1.0, max(-1.0, cz))
    # half-angle form of (cos(theta/2), sin(theta/2)); exact zeros at the poles
    alpha = math.sqrt((1.0 + cz) / 2.0)
    beta = math.sqrt((1.0 - cz) / 2.0) * np.exp(1j * math.atan2(cy, cx))
    return Star(alpha, complex(beta))


SORT_DECIMALS = 12


def _sort_key(s: Star):
    # rounding lets stars that differ only by rounding noise tie on latitude
    b = star_to_bloch(s)
    return (-round(b.cz, SORT_DECIMALS), round(math.atan2(b.cy, b.cx), SORT_DECIMALS), b.cx, b.cy)


def sorted_stars(stars) -> tuple[Star, ...]:
    """Deterministic order: c_z descending, then azimuth ascending."""
    return tuple(sorted(stars, key=_sort_key))


def _amplitudes_symmetric(A: StarSet) -> np.ndarray:
    """Amplitudes from elementary symmetric functions of beta/alpha.

    Each star (alpha, beta) is rewritten as alpha (1, beta/alpha), or as
    beta (0, 1) when alpha == 0, with the scalars folded into the prefactor.
    """
    d = A.dim
    scale = A.prefactor
    r = 0
    mus = []
    for s in A.stars:
        if s.alpha == 0:
            r += 1
            scale *= s.beta
        else:
            scale *= s.alpha
            mus.append(s.beta / s.alpha)
    e = _elementary_all(np.array(mus, dtype=complex))
    amps = np.zeros(d, dtype=complex)
    for j in range(r, d):
        amps[j] = scale * e[j - r] / math.sqrt(binomial(d - 1, j))
    return amps


def _amplitudes_permanent(A: StarSet) -> np.ndarray:
    d = A.dim
    if d - 1 > RYSER_MAX:
        raise SizeError(f"permanent reconstruction limited to d <= {RYSER_MAX + 1}")
    # per(C_j^* V) = per(C_j^* V_unit) * prod |v_i|; unit columns avoid cancellation in Ryser
    V, norms = _unit_columns(A.matrix())
    scale = A.prefactor * np.prod(norms) / math.factorial(d - 1)
    amps = np.empty(d, dtype=complex)
    for j in range(d):
        C = selector_matrix(d, j).columns
        amps[j] = scale * math.sqrt(binomial(d - 1, j)) * permanent_ryser(C.conj().T @ V)
    return amps


def stars_to_state(A: StarSet, method: str = "permanent") -> StateVector:
    """Coordinates a_j = <f_j, A> of the tensor represented by ``A``.

    ``method="permanent"`` evaluates per(C_j^* V) directly and is the reference;
    ``method="symmetric"`` uses elementary symmetric functions and is much
    faster for large d.
    """
    if method == "permanent":
        amps = _amplitudes_permanent(A)
    elif method == "symmetric":
        amps = _amplitudes_symmetric(A)
    else:
        raise ValueError(f"unknown method {method!r}")
    return StateVector(amps)


def _ray_distance(s: np.ndarray, t: np.ndarray) -> float:
    ns, nt = np.linalg.norm(s), np.linalg.norm(t)
    return max(0.0, 1.0 - abs(np.vdot(s, t)) / (ns * nt))


def state_to_stars(s: StateVector) -> CorrespondenceResult:
    roots = find_roots(build_polynomial(s))
    r = roots.infinity_count
    d = s.dim
    stars = [SOUTH] * r + [Star(1 + 0j, complex(mu)) for mu in roots.finite_roots]
    prefactor = s.amplitudes[r] * math.sqrt(binomial(d - 1, r))
    star_set = StarSet(sorted_stars(stars), prefactor)
    residual = _ray_distance(s.amplitudes, _amplitudes_symmetric(star_set))
    return CorrespondenceResult(star_set, s, residual)


def state_inner_via_stars(A: StarSet, B: StarSet) -> complex:
    """Coordinate inner product sum_j conj(b_j) c_j computed from star form."""
    return decomposable_inner(A, B)


def normalize_star_set(A: StarSet) -> StarSet:
    """Unit-norm stars with the prefactor rescaled so the tensor has norm 1."""
    unit = tuple(s.normalized() for s in A.stars)
    gamma = decomposable_norm(StarSet(unit, 1))
    phase = A.prefactor / abs(A.prefactor) if A.prefactor != 0 else 1
    return StarSet(unit, phase / gamma)


@dataclass(frozen=True)
class MatchReport:
    matched: bool
    pairs: tuple[tuple[int, int], ...]
    distances: np.ndarray
    max_distance: float

    def __bool__(self) -> bool:
        return self.matched


def bloch_array(A: StarSet) -> np.ndarray:
    return np.array([star_to_bloch(s).as_array() for s in A.stars])


def star_sets_match(A: StarSet, B: StarSet, tol: float = DEFAULT_MATCH_TOL) -> MatchReport:
    """Compare two star multisets on the Bloch sphere; prefactors are ignored."""
    if len(A.stars) != len(B.stars):
        raise ValueError(f"star counts differ: {len(A.stars)} vs {len(B.stars)}")
    cost = cdist(bloch_array(A), bloch_array(B))
    rows, cols = linear_sum_assignment(cost)
    dist = cost[rows, cols]
    worst = float(dist.max())
    return MatchReport(worst <= tol, tuple(zip(rows.tolist(), cols.tolist())), dist, worst)


def roundtrip_check(s: StateVector) -> float:
    """1 - |<s, s'>| / (|s| |s'|) with s' rebuilt from the stars of s."""
    rebuilt = stars_to_state(state_to_stars(s).stars)
    return _ray_distance(s.amplitudes, rebuilt.amplitudes)
