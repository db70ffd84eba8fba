"""
Core data structures for purity analysis.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.purimetrics.errors import InvalidSpectrum


def frozen_array(values, dtype=None) -> np.ndarray:
    """읽기 전용 복사본. 값 객체들이 생성 후 변경되지 않도록 한다."""
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Tolerances:
    """Validation thresholds shared by density-core and bloch-basis."""

    hermiticity: float = 1e-10  # max |M - M^dagger|
    trace: float = 1e-10  # |Tr M - 1|
    psd: float = 1e-10  # eigenvalues in [-psd, 0) are clamped
    power: float = 1e-12  # minimum Tr[Phi] for normalization
    pure_norm: float = 1e-8  # | |r| - 1 | for pure-state classification

    @classmethod
    def current(cls) -> "Tolerances":
        """config.settings 기준 기본값 (PURIMETRICS_TOL 반영)."""
        from config import settings

        return settings.tolerances()


class Subsystem(str, Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    밀도 행렬의 고유값 (내림차순, 합 = 1).
    모든 purity 측정값은 이 객체 하나로 계산 가능합니다.
    """

    values: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    def __iter__(self):
        return iter(self.values.tolist())

    def __len__(self) -> int:
        return self.dim

    @classmethod
    def from_values(
        cls,
        values: Sequence[float],
        tolerances: Optional[Tolerances] = None,
        sum_tolerance: Optional[float] = None,
    ) -> "Spectrum":
        """
        Sorts descending, clamps [-psd, 0) to zero and renormalizes.

        :param sum_tolerance: allowed |sum - 1| before rejection; defaults to the
                              trace tolerance. The CLI passes a looser value for
                              decimal-truncated user input.
        """
        tol = tolerances or Tolerances.current()
        lam = np.asarray(values, dtype=float).ravel()
        if lam.size == 0:
            raise InvalidSpectrum("Spectrum must contain at least one eigenvalue")
        if not np.all(np.isfinite(lam)):
            raise InvalidSpectrum("Spectrum contains NaN or Inf")

        lam = np.sort(lam)[::-1]
        if lam[-1] < -tol.psd:
            raise InvalidSpectrum(
                "Negative eigenvalue below psd tolerance",
                bound=-tol.psd,
                magnitude=float(lam[-1]),
            )
        if lam[0] > 1.0 + tol.trace:
            raise InvalidSpectrum(
                "Eigenvalue above one", bound=1.0, magnitude=float(lam[0])
            )

        allowed = tol.trace if sum_tolerance is None else sum_tolerance
        total = float(lam.sum())
        if abs(total - 1.0) > allowed:
            raise InvalidSpectrum(
                "Eigenvalues do not sum to one", bound=allowed, magnitude=abs(total - 1.0)
            )

        lam = np.clip(lam, 0.0, None)
        lam = lam / lam.sum()
        if abs(total - 1.0) > tol.trace:
            logger.warning(f"Spectrum renormalized from sum {total:.9f} to 1")
        return cls(values=frozen_array(lam))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Validated N x N density matrix. Build it with DensityProcessor.validate_density;
    the eigendecomposition is computed once there and shared by every measure.
    """

    entries: np.ndarray  # complex (N, N)
    eigenvalues: np.ndarray  # descending, clamped, sums to 1
    eigenvectors: np.ndarray  # columns match eigenvalues

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def spectrum(self) -> Spectrum:
        return Spectrum(values=self.eigenvalues)

    @property
    def determinant(self) -> float:
        """det(rho) as the product of eigenvalues."""
        return float(np.prod(self.eigenvalues))


@dataclass(frozen=True, eq=False)
class RankDecomposition:
    """rho = sum_k c_k P_k, P_k projector onto the top-k eigenspace."""

    coefficients: np.ndarray
    projectors: Tuple[np.ndarray, ...]

    @property
    def polarized_fraction(self) -> float:
        """Coefficient of the rank-1 (fully polarized) component."""
        return float(self.coefficients[0])

    def reconstruct(self) -> np.ndarray:
        return sum(c * p for c, p in zip(self.coefficients, self.projectors))
