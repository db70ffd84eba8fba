"""
Barakat hierarchy: characteristic-polynomial coefficients C_k and the measures
B_k^(N) = sqrt(1 - N^k C_k / binom(N, k)), k = 2..N.
"""

from dataclasses import dataclass
from typing import List

import numpy as np
from scipy import special

from config import settings
from src.purimetrics.core import Spectrum, frozen_array
from src.purimetrics.errors import KOutOfRange

from .base import PurityMeasure, clamp_unit, require_dim


@dataclass(frozen=True, eq=False)
class CharacteristicCoefficients:
    """C_1..C_N: elementary symmetric polynomials of the eigenvalues."""

    C: np.ndarray

    def __getitem__(self, k: int) -> float:
        """1-based access, C[1] == 1."""
        if not 1 <= k <= self.C.size:
            raise KOutOfRange(f"k must be in 1..{self.C.size}, got {k}")
        return float(self.C[k - 1])

    def as_list(self) -> List[float]:
        return self.C.tolist()


def _elementary_symmetric(values: np.ndarray) -> np.ndarray:
    """e_0..e_N via iterative product expansion (np.poly multiplies out (x - v_i))."""
    coeffs = np.real(np.poly(values))
    signs = (-1.0) ** np.arange(coeffs.size)
    return coeffs * signs


def characteristic_coefficients(spectrum: Spectrum) -> CharacteristicCoefficients:
    e = _elementary_symmetric(spectrum.values)
    return CharacteristicCoefficients(C=frozen_array(e[1:], dtype=float))


def barakat(spectrum: Spectrum, k: int) -> float:
    """
    B_k^(N). The radicand is expanded around the maximally mixed state
    (mu_i = lambda_i - 1/N, sum mu_i = 0):

        1 - N^k C_k / binom(N,k) = -1/binom(N,k) * sum_{j=2..k} binom(N-j, k-j) N^j e_j(mu)

    so that it vanishes exactly at lambda = 1/N instead of cancelling two O(1) terms.
    """
    n = require_dim(spectrum)
    if not 2 <= k <= n:
        raise KOutOfRange(f"Barakat order k must be in 2..{n}, got {k}")

    e_mu = _elementary_symmetric(spectrum.values - 1.0 / n)
    radicand = 0.0
    for j in range(2, k + 1):
        radicand += special.comb(n - j, k - j, exact=True) * float(n) ** j * e_mu[j]
    radicand = -radicand / special.comb(n, k, exact=True)
    return clamp_unit(np.sqrt(max(0.0, radicand)))


def barakat_hierarchy(spectrum: Spectrum) -> List[float]:
    """[B_2, ..., B_N]."""
    n = require_dim(spectrum)
    return [barakat(spectrum, k) for k in range(2, n + 1)]


def purity_barakat_last(spectrum: Spectrum) -> float:
    """
    Pi_b = B_N^(N) = sqrt(1 - N^N det(rho)).
    Any zero eigenvalue makes det vanish, so Pi_b = 1 there regardless of the rest
    of the spectrum.
    """
    n = require_dim(spectrum)
    if spectrum.values[-1] <= settings.ZERO_EIGENVALUE:
        return 1.0
    return barakat(spectrum, n)


class BarakatPurity(PurityMeasure):
    """B_k^(N) for a fixed order k (params: k)."""

    measure_id = "barakat"
    label = "B_k"

    def calculate(self, spectrum: Spectrum) -> float:
        return barakat(spectrum, int(self.params.get("k", 2)))


class BarakatLastPurity(PurityMeasure):
    measure_id = "barakat_last"
    label = "Pi_b"

    def calculate(self, spectrum: Spectrum) -> float:
        return purity_barakat_last(spectrum)
