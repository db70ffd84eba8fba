"""
Density matrix processing engine.
Validation, normalization, spectra, traces of powers, partial trace and the
pyramid rank decomposition. Every validated matrix carries one Hermitian
eigendecomposition that all measures reuse.
"""

from typing import Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from scipy import linalg
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from src.purimetrics.core import (
    DensityMatrix,
    RankDecomposition,
    Spectrum,
    Subsystem,
    Tolerances,
    frozen_array,
)
from src.purimetrics.errors import (
    DimensionMismatch,
    EigenFailure,
    InvalidMatrix,
    NotHermitian,
    NotPositive,
    NotUnitTrace,
    ZeroPower,
)

# LAPACK drivers tried in order when the eigensolver does not converge
EIGH_DRIVERS = ("evr", "evd", "ev")

MatrixLike = Union[np.ndarray, Sequence[Sequence[complex]]]


class DensityProcessor:
    """
    Density Processor
    1. 입력 행렬 검증 (정방/유한값 -> Hermitian -> 단위 trace -> PSD)
    2. psd 허용오차 이내의 음수 고유값은 0으로 clamp 후 재정규화
    3. 고유분해 결과(내림차순)를 DensityMatrix에 저장
    """

    @staticmethod
    def as_complex_matrix(M: MatrixLike) -> np.ndarray:
        arr = np.asarray(M, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise DimensionMismatch(f"Expected a non-empty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidMatrix("Matrix contains NaN or Inf entries")
        return arr

    @staticmethod
    def hermitian_eigh(M: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Eigendecomposition of a Hermitian matrix, sorted descending.
        Retries with a different LAPACK driver when the solver fails to converge.
        """
        try:
            for attempt in Retrying(
                stop=stop_after_attempt(len(EIGH_DRIVERS)),
                retry=retry_if_exception_type(linalg.LinAlgError),
            ):
                with attempt:
                    driver = EIGH_DRIVERS[attempt.retry_state.attempt_number - 1]
                    if attempt.retry_state.attempt_number > 1:
                        logger.info(f"eigh retry with driver '{driver}'")
                    values, vectors = linalg.eigh(M, driver=driver)
        except RetryError as e:
            raise EigenFailure(f"Hermitian eigensolver did not converge: {e}") from e

        order = np.argsort(values)[::-1]
        return values[order], vectors[:, order]

    @staticmethod
    def validate_density(
        M: MatrixLike, tolerances: Optional[Tolerances] = None
    ) -> DensityMatrix:
        tol = tolerances or Tolerances.current()
        arr = DensityProcessor.as_complex_matrix(M)

        # 1. Hermiticity
        herm_err = float(np.max(np.abs(arr - arr.conj().T)))
        if herm_err > tol.hermiticity:
            raise NotHermitian(
                "Matrix is not Hermitian", bound=tol.hermiticity, magnitude=herm_err
            )
        # 대칭화: 허용오차 이내의 비대칭 잡음 제거
        herm = 0.5 * (arr + arr.conj().T)

        # 2. Unit trace
        trace = float(np.trace(herm).real)
        if abs(trace - 1.0) > tol.trace:
            raise NotUnitTrace(
                "Trace is not one", bound=tol.trace, magnitude=abs(trace - 1.0)
            )

        # 3. Positivity
        values, vectors = DensityProcessor.hermitian_eigh(herm)
        min_eig = float(values[-1])
        if min_eig < -tol.psd:
            raise NotPositive(
                "Matrix has a negative eigenvalue", bound=-tol.psd, magnitude=min_eig
            )

        # entries와 spectrum은 항상 같은 정규화 행렬을 나타내야 함
        if min_eig < 0.0:
            logger.debug(f"Clamping eigenvalue {min_eig:.3e} to zero")
            values = np.clip(values, 0.0, None)
            values = values / values.sum()
            entries = (vectors * values) @ vectors.conj().T
        else:
            values = values / trace
            entries = herm / trace

        return DensityMatrix(
            entries=frozen_array(entries, dtype=complex),
            eigenvalues=frozen_array(values, dtype=float),
            eigenvectors=frozen_array(vectors, dtype=complex),
        )

    @staticmethod
    def normalize_polarization(
        phi: MatrixLike, tolerances: Optional[Tolerances] = None
    ) -> DensityMatrix:
        """rho = Phi / Tr[Phi] (power normalization of a polarization matrix)."""
        tol = tolerances or Tolerances.current()
        arr = DensityProcessor.as_complex_matrix(phi)

        herm_err = float(np.max(np.abs(arr - arr.conj().T)))
        scale = max(1.0, float(np.max(np.abs(arr))))
        if herm_err > tol.hermiticity * scale:
            raise NotHermitian(
                "Polarization matrix is not Hermitian",
                bound=tol.hermiticity * scale,
                magnitude=herm_err,
            )

        power = float(np.trace(arr).real)
        if power <= tol.power:
            raise ZeroPower("Total power Tr[Phi] is not positive", bound=tol.power, magnitude=power)

        return DensityProcessor.validate_density(arr / power, tol)

    @staticmethod
    def spectrum(rho: DensityMatrix) -> Spectrum:
        return rho.spectrum

    @staticmethod
    def trace_power(rho: DensityMatrix, m: int) -> float:
        """Tr[rho^m] from the matrix itself (independent of the stored spectrum)."""
        if int(m) != m or m < 1:
            raise ValueError(f"Power must be an integer >= 1, got {m}")
        return float(np.trace(np.linalg.matrix_power(rho.entries, int(m))).real)

    @staticmethod
    def partial_trace(
        rho_ab: DensityMatrix,
        keep: Union[Subsystem, str],
        dims: Tuple[int, int],
        tolerances: Optional[Tolerances] = None,
    ) -> DensityMatrix:
        """
        Composite basis index a = i_A * d_B + i_B (A is the slow index).
        """
        d_a, d_b = (int(d) for d in dims)
        if d_a < 1 or d_b < 1 or d_a * d_b != rho_ab.dim:
            raise DimensionMismatch(
                f"dims {dims} do not factor a {rho_ab.dim}x{rho_ab.dim} matrix"
            )
        keep = Subsystem(keep)
        tensor = rho_ab.entries.reshape(d_a, d_b, d_a, d_b)
        if keep is Subsystem.A:
            reduced = np.einsum("ijkj->ik", tensor)
        else:
            reduced = np.einsum("ijik->jk", tensor)
        return DensityProcessor.validate_density(reduced, tolerances)

    @staticmethod
    def tensor(
        rho_a: DensityMatrix, rho_b: DensityMatrix, tolerances: Optional[Tolerances] = None
    ) -> DensityMatrix:
        return DensityProcessor.validate_density(np.kron(rho_a.entries, rho_b.entries), tolerances)

    @staticmethod
    def diagonal_state(spectrum: Spectrum) -> DensityMatrix:
        """diag(lambda_1, ..., lambda_N)."""
        n = spectrum.dim
        return DensityMatrix(
            entries=frozen_array(np.diag(spectrum.values).astype(complex)),
            eigenvalues=frozen_array(spectrum.values, dtype=float),
            eigenvectors=frozen_array(np.eye(n, dtype=complex)),
        )

    @staticmethod
    def rank_decomposition(rho: DensityMatrix) -> RankDecomposition:
        """
        rho = sum_k (lambda_k - lambda_{k+1}) P_k + lambda_N * I,
        P_k = U diag(1,..,1,0,..,0) U^dagger with k ones.
        """
        lam = rho.eigenvalues
        n = rho.dim
        coefficients = np.append(lam[:-1] - lam[1:], lam[-1])
        # 정렬된 고유값이므로 음수는 반올림 잡음뿐
        coefficients = np.clip(coefficients, 0.0, None)

        U = rho.eigenvectors
        projectors = tuple(
            frozen_array(U[:, :k] @ U[:, :k].conj().T) for k in range(1, n + 1)
        )
        return RankDecomposition(
            coefficients=frozen_array(coefficients, dtype=float), projectors=projectors
        )
