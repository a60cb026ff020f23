"""Domain types and small shared helpers.

Vectors live in the symmetric subspace of (C^2)^{⊗(d-1)} and are stored by
their coordinates in the orthonormal basis f_0, ..., f_{d-1}.  Inner products
are conjugate-linear in the first argument: <u, v> = u^* v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 64
BLOCH_TOL = 1e-12


class MajoranaError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(MajoranaError, ValueError):
    """Input violates a type invariant (zero vector, bad density matrix, ...)."""


class SizeError(MajoranaError, ValueError):
    """Input exceeds a hard size cap."""


class ConvergenceError(MajoranaError, ArithmeticError):
    """Iterative solver failed to converge within its budget."""

    def __init__(self, message: str, iterates=None, residuals=None):
        super().__init__(message)
        self.iterates = iterates
        self.residuals = residuals


class NumericalConsistencyError(MajoranaError, ArithmeticError):
    """A quantity that must be real/non-negative came out otherwise."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k) for 0 <= k <= n <= 64."""
    if not (0 <= k <= n <= MAX_DIM):
        raise ValueError(f"binomial({n}, {k}) outside 0 <= k <= n <= {MAX_DIM}")
    k = min(k, n - k)
    out = 1
    for i in range(1, k + 1):
        # exact at every step: out * (n - k + i) is divisible by i
        out = out * (n - k + i) // i
    return out


@dataclass(frozen=True)
class StateVector:
    """Nonzero amplitude vector (a_0, ..., a_{d-1}); not necessarily unit norm."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 2:
            raise ValidationError(f"state dimension must be >= 2, got {amps.size}")
        if amps.size > MAX_DIM:
            raise SizeError(f"state dimension {amps.size} exceeds cap {MAX_DIM}")
        if not np.all(np.isfinite(amps)):
            raise ValidationError("amplitudes must be finite")
        if not np.any(amps != 0):
            raise ValidationError("the zero vector is not a state")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def first_nonzero(self) -> int:
        """Index r of the first nonzero amplitude."""
        return int(np.flatnonzero(self.amplitudes)[0])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_unit(self, tol: float = 1e-10) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> StateVector:
        return StateVector(self.amplitudes / self.norm())


@dataclass(frozen=True)
class BlochPoint:
    cx: float
    cy: float
    cz: float

    def __post_init__(self):
        n = np.sqrt(self.cx**2 + self.cy**2 + self.cz**2)
        if abs(n - 1.0) > BLOCH_TOL:
            raise ValidationError(f"Bloch point has norm {n!r}, expected 1")

    def as_array(self) -> np.ndarray:
        return np.array([self.cx, self.cy, self.cz])


@dataclass(frozen=True)
class Star:
    """A qubit (alpha, beta) taken up to a nonzero scalar."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if a == 0 and b == 0:
            raise ValidationError("a star cannot be (0, 0)")
        if not (np.isfinite(a) and np.isfinite(b)):
            raise ValidationError("star components must be finite")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    def canonical(self) -> Star:
        """(1, beta/alpha) when alpha != 0, otherwise (0, 1)."""
        if self.alpha == 0:
            return Star(0j, 1 + 0j)
        with np.errstate(over="ignore"):
            mu = self.beta / self.alpha
        if not np.isfinite(mu):
            # alpha is subnormal relative to beta: indistinguishable from the pole
            return Star(0j, 1 + 0j)
        return Star(1 + 0j, mu)

    def norm(self) -> float:
        return float(np.hypot(abs(self.alpha), abs(self.beta)))

    def normalized(self) -> Star:
        n = self.norm()
        return Star(self.alpha / n, self.beta / n)

    def scaled(self, factor: complex) -> Star:
        return Star(self.alpha * factor, self.beta * factor)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


@dataclass(frozen=True)
class StarSet:
    """The decomposable tensor prefactor * (v_1 • ... • v_{d-1}).

    ``stars`` is semantically a multiset; the stored order only matters for
    serialization.
    """

    stars: tuple[Star, ...]
    prefactor: complex = 1 + 0j

    def __post_init__(self):
        stars = tuple(s if isinstance(s, Star) else Star(*s) for s in self.stars)
        if len(stars) < 1:
            raise ValidationError("a star set needs at least one star")
        if len(stars) + 1 > MAX_DIM:
            raise SizeError(f"{len(stars)} stars exceed dimension cap {MAX_DIM}")
        object.__setattr__(self, "stars", stars)
        object.__setattr__(self, "prefactor", complex(self.prefactor))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[complex]], prefactor: complex = 1) -> StarSet:
        return cls(tuple(Star(a, b) for a, b in pairs), prefactor)

    @property
    def dim(self) -> int:
        """Dimension d of the represented state (number of stars + 1)."""
        return len(self.stars) + 1

    def matrix(self) -> np.ndarray:
        """2 x (d-1) matrix whose columns are the stars."""
        return np.array([[s.alpha for s in self.stars], [s.beta for s in self.stars]], dtype=complex)

    def with_prefactor(self, prefactor: complex) -> StarSet:
        return StarSet(self.stars, prefactor)

    def permuted(self, order: Sequence[int]) -> StarSet:
        return StarSet(tuple(self.stars[i] for i in order), self.prefactor)


@dataclass(frozen=True)
class SelectorMatrix:
    """C_j: d-1-j columns e_0 followed by j columns e_1."""

    d: int
    j: int
    columns: np.ndarray = field(repr=False)


def selector_matrix(d: int, j: int) -> SelectorMatrix:
    if d < 2 or d > MAX_DIM:
        raise ValueError(f"dimension d={d} outside [2, {MAX_DIM}]")
    if not 0 <= j <= d - 1:
        raise ValueError(f"selector index j={j} outside [0, {d - 1}]")
    cols = np.zeros((2, d - 1), dtype=complex)
    cols[0, : d - 1 - j] = 1
    cols[1, d - 1 - j :] = 1
    return SelectorMatrix(d, j, _frozen(cols))
