"""
Purity-based entanglement of bipartite pure states:
E(psi) = 1 - Pi(Tr_B |psi><psi|) for any registered purity measure Pi.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from src.purimetrics.core import DensityMatrix, Subsystem, Tolerances, frozen_array
from src.purimetrics.errors import DimensionMismatch, NotNormalized, WrongDimension
from src.purimetrics.measures import MEASURE_IDS, get_measure
from src.purimetrics.measures.base import clamp_unit
from src.purimetrics.processing import DensityProcessor

NORM_TOL = 1e-10
# Schmidt coefficients below this are reported as exact zeros
SCHMIDT_ZERO = 1e-12


@dataclass(frozen=True, eq=False)
class BipartitePureState:
    """
    |psi> = sum_{i,j} amplitudes[i, j] |i>_A |j>_B, amplitude grid of shape (d_A, d_B).
    Flattening the grid row-major gives the composite index a = i_A * d_B + i_B.
    """

    amplitudes: np.ndarray

    @property
    def dims(self) -> Tuple[int, int]:
        return int(self.amplitudes.shape[0]), int(self.amplitudes.shape[1])

    @property
    def vector(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)

    @classmethod
    def from_amplitudes(cls, grid, tol: float = NORM_TOL) -> "BipartitePureState":
        arr = np.asarray(grid, dtype=complex)
        if arr.ndim != 2 or 0 in arr.shape:
            raise DimensionMismatch(f"Amplitude grid must be 2D and non-empty, got shape {arr.shape}")
        norm_sq = float(np.sum(np.abs(arr) ** 2))
        if abs(norm_sq - 1.0) > tol:
            raise NotNormalized("State is not normalized", bound=tol, magnitude=abs(norm_sq - 1.0))
        return cls(amplitudes=frozen_array(arr))

    @classmethod
    def from_vector(cls, vector, dims: Tuple[int, int], tol: float = NORM_TOL) -> "BipartitePureState":
        vec = np.asarray(vector, dtype=complex).ravel()
        d_a, d_b = dims
        if vec.size != d_a * d_b:
            raise DimensionMismatch(f"Vector of length {vec.size} does not factor as {d_a}x{d_b}")
        return cls.from_amplitudes(vec.reshape(d_a, d_b), tol)


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    coefficients: np.ndarray  # descending, length min(d_A, d_B)
    left: np.ndarray  # columns u_k in H_A
    right: np.ndarray  # columns v_k in H_B

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.coefficients))

    def reconstruct(self) -> np.ndarray:
        """sum_k c_k u_k (x) v_k as a (d_A, d_B) grid."""
        return (self.left * self.coefficients) @ self.right.T


# ---------------------------------------------------------------------------
# State builders
# ---------------------------------------------------------------------------


def product_state(a, b) -> BipartitePureState:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return BipartitePureState.from_amplitudes(np.outer(a, b))


def maximally_entangled(d: int) -> BipartitePureState:
    """sum_i |ii> / sqrt(d)."""
    return BipartitePureState.from_amplitudes(np.eye(d, dtype=complex) / np.sqrt(d))


def bell_state() -> BipartitePureState:
    return maximally_entangled(2)


def embed(state: BipartitePureState, d_a: int, d_b: int) -> BipartitePureState:
    """Zero-pad the amplitude grid into larger local dimensions."""
    s_a, s_b = state.dims
    if d_a < s_a or d_b < s_b:
        raise DimensionMismatch(f"Cannot embed a {s_a}x{s_b} state into {d_a}x{d_b}")
    grid = np.zeros((d_a, d_b), dtype=complex)
    grid[:s_a, :s_b] = state.amplitudes
    return BipartitePureState.from_amplitudes(grid)


def apply_local(state: BipartitePureState, u_a: np.ndarray, u_b: np.ndarray) -> BipartitePureState:
    """(U_A (x) U_B)|psi>  ->  U_A psi U_B^T on the amplitude grid."""
    return BipartitePureState.from_amplitudes(u_a @ state.amplitudes @ u_b.T)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def schmidt(state: BipartitePureState) -> SchmidtForm:
    """Schmidt decomposition via the SVD of the amplitude grid."""
    u, s, vh = linalg.svd(state.amplitudes, full_matrices=False)
    s = np.where(s < SCHMIDT_ZERO, 0.0, s)
    return SchmidtForm(
        coefficients=frozen_array(s, dtype=float),
        left=frozen_array(u),
        right=frozen_array(vh.T),
    )


def schmidt_rank(state: BipartitePureState) -> int:
    return schmidt(state).rank


def reduced_density(
    state: BipartitePureState,
    keep: Union[Subsystem, str] = Subsystem.A,
    tolerances: Optional[Tolerances] = None,
) -> DensityMatrix:
    """rho_A = psi psi^dagger, rho_B = psi^T conj(psi) (psi is the amplitude grid)."""
    psi = state.amplitudes
    if Subsystem(keep) is Subsystem.A:
        reduced = psi @ psi.conj().T
    else:
        reduced = psi.T @ psi.conj()
    return DensityProcessor.validate_density(reduced, tolerances)


def entanglement(
    state: BipartitePureState,
    measure_id: str = "von_neumann",
    keep: Union[Subsystem, str] = Subsystem.A,
) -> float:
    """1 - Pi(rho_keep). keep=A matches tracing out B; both sides share their spectrum."""
    measure = get_measure(measure_id)
    rho = reduced_density(state, keep)
    if rho.dim < 2:
        raise WrongDimension(f"Kept subsystem must have dimension >= 2, got {rho.dim}")
    return clamp_unit(1.0 - measure.calculate(rho.spectrum))


def entanglement_profile(
    state: BipartitePureState, keep: Union[Subsystem, str] = Subsystem.A
) -> Dict[str, float]:
    return {measure_id: entanglement(state, measure_id, keep) for measure_id in MEASURE_IDS}
