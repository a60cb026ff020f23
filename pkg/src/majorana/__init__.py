"""Majorana stellar representation of finite-dimensional quantum states.

A nonzero state (a_0, ..., a_{d-1}) corresponds to d-1 qubits ("stars"),
found from the roots of its Majorana polynomial; inner products of states
become permanents of the stars' Gram matrices.

>>> import numpy as np
>>> from majorana import StateVector, state_to_stars
>>> res = state_to_stars(StateVector([1, 3, 13 / np.sqrt(6), 6, 4]))
>>> len(res.stars.stars)
4
"""

from .core import (
    BlochPoint,
    ConvergenceError,
    MajoranaError,
    NumericalConsistencyError,
    SelectorMatrix,
    SizeError,
    Star,
    StarSet,
    StateVector,
    ValidationError,
    binomial,
    selector_matrix,
)
from .mixed import (
    DensityMatrix,
    MixedStarModel,
    decompose_mixed,
    density_entry_from_stars,
    hermitian_eigh,
    partial_trace_ancilla,
    purification_error,
    purify_and_represent,
    pure_density_from_stars,
    reconstruct_mixed,
)
from .permanent import decomposable_inner, decomposable_norm, gram_matrix, permanent_naive, permanent_ryser
from .poly import (
    MajoranaPolynomial,
    RootMultiset,
    build_polynomial,
    coefficients_from_roots,
    elementary_symmetric,
    find_roots,
)
from .representation import (
    CorrespondenceResult,
    MatchReport,
    bloch_to_star,
    normalize_star_set,
    roundtrip_check,
    star_sets_match,
    star_to_bloch,
    state_inner_via_stars,
    state_to_stars,
    stars_to_state,
)

__version__ = "0.1.0"
