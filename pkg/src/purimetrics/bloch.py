"""
Stokes vectors, Gell-Mann / SU(N) bases and generalized Bloch vectors.

Sign convention for N=2 follows the polarization-optics ordering
    sigma^1 = sigma_z, sigma^2 = sigma_x, sigma^3 = sigma_y
so that S_mu = Tr[Phi sigma^mu] and (S_1, S_2, S_3) / S_0 is the Bloch vector of
Phi / Tr[Phi] in su_n_basis(2). This differs from the usual (x, y, z) ordering.

The general-N basis nests the 2x2 blocks: for k = 1..N-1 the symmetric and
antisymmetric pairs (j, k) for j < k, then the k-th diagonal matrix. At N=3 this is
exactly G_1..G_8 in the standard Gell-Mann order.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
from loguru import logger

from src.purimetrics.core import DensityMatrix, Tolerances, frozen_array
from src.purimetrics.errors import DimensionMismatch, NotHermitian, PoincareViolation, ZeroPower
from src.purimetrics.processing import DensityProcessor, MatrixLike

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

# sigma^mu, mu = 0..3
STOKES_SIGMAS = (SIGMA_0, SIGMA_Z, SIGMA_X, SIGMA_Y)


@dataclass(frozen=True)
class StokesVector:
    s0: float  # total power
    s1: float
    s2: float
    s3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.s0, self.s1, self.s2, self.s3], dtype=float)

    @property
    def radius(self) -> float:
        """Length of the 3D Stokes vector."""
        return float(np.sqrt(self.s1**2 + self.s2**2 + self.s3**2))

    @property
    def degree_of_polarization(self) -> float:
        """|(S_1, S_2, S_3)| / S_0, the relative radius in the Poincare sphere."""
        return self.radius / self.s0


@dataclass(frozen=True, eq=False)
class BlochVector:
    n_dim: int
    r: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.r))

    @classmethod
    def of(cls, r, n_dim: Optional[int] = None) -> "BlochVector":
        arr = np.asarray(r, dtype=float).ravel()
        if n_dim is None:
            n_dim = int(round(np.sqrt(arr.size + 1)))
        if arr.size != n_dim**2 - 1:
            raise DimensionMismatch(
                f"Bloch vector for N={n_dim} needs {n_dim**2 - 1} entries, got {arr.size}"
            )
        return cls(n_dim=n_dim, r=frozen_array(arr))


@dataclass(frozen=True, eq=False)
class BasisSet:
    n_dim: int
    matrices: np.ndarray  # (N^2 - 1, N, N), Hermitian and traceless
    norm_constant: float  # Tr[Q_i Q_j] = norm_constant * delta_ij

    def __len__(self) -> int:
        return int(self.matrices.shape[0])

    def gram(self) -> np.ndarray:
        return np.einsum("aij,bji->ab", self.matrices, self.matrices).real


class Physicality(str, Enum):
    PURE = "PurePhysical"
    BOUNDARY = "BoundaryPhysical"
    INTERIOR = "InteriorPhysical"
    UNPHYSICAL = "Unphysical"


@dataclass(frozen=True)
class PhysicalityClass:
    kind: Physicality
    min_eigenvalue: float
    bloch_norm: float


# ---------------------------------------------------------------------------
# Stokes <-> polarization matrix (N = 2)
# ---------------------------------------------------------------------------


def stokes_from_matrix(phi: MatrixLike, tolerances: Optional[Tolerances] = None) -> StokesVector:
    """S_mu = Tr[Phi sigma^mu]."""
    tol = tolerances or Tolerances.current()
    arr = DensityProcessor.as_complex_matrix(phi)
    if arr.shape != (2, 2):
        raise DimensionMismatch(f"Stokes vectors need a 2x2 matrix, got {arr.shape}")
    herm_err = float(np.max(np.abs(arr - arr.conj().T)))
    scale = max(1.0, float(np.max(np.abs(arr))))
    if herm_err > tol.hermiticity * scale:
        raise NotHermitian(
            "Polarization matrix is not Hermitian", bound=tol.hermiticity * scale, magnitude=herm_err
        )
    s = [float(np.trace(arr @ sigma).real) for sigma in STOKES_SIGMAS]
    return StokesVector(*s)


def matrix_from_stokes(stokes: StokesVector, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """Phi = 1/2 S_mu sigma^mu. Rejects points outside the Poincare sphere beyond the psd tolerance."""
    tol = tolerances or Tolerances.current()
    if stokes.s0 <= 0:
        raise PoincareViolation("S_0 (total power) must be positive", bound=0.0, magnitude=stokes.s0)
    if stokes.radius**2 > stokes.s0**2 * (1.0 + tol.psd):
        raise PoincareViolation(
            "Stokes vector lies outside the Poincare sphere",
            bound=stokes.s0**2,
            magnitude=stokes.radius**2,
        )
    return 0.5 * sum(s * sigma for s, sigma in zip(stokes.as_array(), STOKES_SIGMAS))


def degree_of_polarization_phi(phi: MatrixLike, tolerances: Optional[Tolerances] = None) -> float:
    """sqrt(1 - 4 det(Phi) / Tr[Phi]^2) for an unnormalized 2x2 polarization matrix."""
    tol = tolerances or Tolerances.current()
    arr = DensityProcessor.as_complex_matrix(phi)
    if arr.shape != (2, 2):
        raise DimensionMismatch(f"Expected a 2x2 matrix, got {arr.shape}")
    power = float(np.trace(arr).real)
    if power <= tol.power:
        raise ZeroPower("Total power Tr[Phi] is not positive", bound=tol.power, magnitude=power)
    det = float(np.linalg.det(arr).real)
    return float(np.sqrt(max(0.0, 1.0 - 4.0 * det / power**2)))


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------


def _symmetric(j: int, k: int, n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    m[j, k] = m[k, j] = 1.0
    return m


def _antisymmetric(j: int, k: int, n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    m[j, k] = -1j
    m[k, j] = 1j
    return m


def _diagonal(k: int, n: int) -> np.ndarray:
    """k-th diagonal generator, k = 1..n-1: sqrt(2/(k(k+1))) diag(1,..,1,-k,0,..)."""
    d = np.zeros(n, dtype=complex)
    d[:k] = 1.0
    d[k] = -k
    return np.sqrt(2.0 / (k * (k + 1))) * np.diag(d)


def _basis(n: int, matrices) -> BasisSet:
    stack = np.stack(matrices)
    return BasisSet(n_dim=n, matrices=frozen_array(stack), norm_constant=float(n - 1))


@lru_cache(maxsize=None)
def pauli() -> BasisSet:
    """(sigma^1, sigma^2, sigma^3) = (sigma_z, sigma_x, sigma_y) / sqrt(2), kappa = 1."""
    return _basis(2, [s / np.sqrt(2.0) for s in STOKES_SIGMAS[1:]])


@lru_cache(maxsize=None)
def gell_mann() -> BasisSet:
    G = [
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
        [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
        np.diag([1, 1, -2]) / np.sqrt(3.0),
    ]
    return _basis(3, [np.asarray(g, dtype=complex) for g in G])


@lru_cache(maxsize=None)
def su_n_basis(n: int) -> BasisSet:
    """
    Generalized Gell-Mann basis rescaled so that Tr[Q_i Q_j] = (N-1) delta_ij.
    """
    if n < 2:
        raise DimensionMismatch(f"SU(N) basis needs N >= 2, got {n}")
    if n == 2:
        return pauli()
    if n == 3:
        return gell_mann()

    matrices = []
    for k in range(1, n):
        for j in range(k):
            matrices.append(_symmetric(j, k, n))
            matrices.append(_antisymmetric(j, k, n))
        matrices.append(_diagonal(k, n))
    scale = np.sqrt((n - 1) / 2.0)
    return _basis(n, [scale * m for m in matrices])


# ---------------------------------------------------------------------------
# Bloch vectors
# ---------------------------------------------------------------------------


def _entries(state: Union[DensityMatrix, MatrixLike]) -> np.ndarray:
    if isinstance(state, DensityMatrix):
        return state.entries
    return DensityProcessor.as_complex_matrix(state)


def bloch_from_density(
    rho: Union[DensityMatrix, MatrixLike], basis: Optional[BasisSet] = None
) -> BlochVector:
    """r_j = sqrt(N) Tr[rho Q_j] / (N - 1)."""
    entries = _entries(rho)
    n = entries.shape[0]
    basis = basis or su_n_basis(n)
    if basis.n_dim != n:
        raise DimensionMismatch(f"Basis is for N={basis.n_dim}, matrix is {n}x{n}")
    overlaps = np.einsum("ij,aji->a", entries, basis.matrices).real
    return BlochVector(n_dim=n, r=frozen_array(np.sqrt(n) * overlaps / basis.norm_constant))


def density_from_bloch(r: BlochVector, basis: Optional[BasisSet] = None) -> np.ndarray:
    """
    rho = I/N + (1/sqrt(N)) sum_i r_i Q_i.
    The result is Hermitian with unit trace but may be unphysical.
    """
    n = r.n_dim
    basis = basis or su_n_basis(n)
    if basis.n_dim != n or len(basis) != r.r.size:
        raise DimensionMismatch(
            f"Bloch vector of length {r.r.size} does not match basis for N={basis.n_dim}"
        )
    return np.eye(n, dtype=complex) / n + np.tensordot(r.r, basis.matrices, axes=1) / np.sqrt(n)


def classify_bloch(
    r: BlochVector,
    basis: Optional[BasisSet] = None,
    tolerances: Optional[Tolerances] = None,
) -> PhysicalityClass:
    tol = tolerances or Tolerances.current()
    rho = density_from_bloch(r, basis)
    values, _ = DensityProcessor.hermitian_eigh(0.5 * (rho + rho.conj().T))
    min_eig = float(values[-1])
    norm = r.norm

    if min_eig < -tol.psd:
        kind = Physicality.UNPHYSICAL
    elif abs(norm - 1.0) <= tol.pure_norm:
        kind = Physicality.PURE
    elif min_eig <= tol.psd:
        kind = Physicality.BOUNDARY
    else:
        kind = Physicality.INTERIOR
    logger.debug(f"Bloch vector |r|={norm:.6f}, min eigenvalue {min_eig:.3e} -> {kind.value}")
    return PhysicalityClass(kind=kind, min_eigenvalue=min_eig, bloch_norm=norm)
