"""
Trace- and entropy-based purities (standard and von Neumann).
"""

import numpy as np
from scipy import special

from src.purimetrics.core import Spectrum

from .base import PurityMeasure, clamp_unit, require_dim

# lambda * log(lambda) is taken as 0 at or below this value
ZERO_LOG_CUTOFF = 1e-300


def purity_standard(spectrum: Spectrum) -> float:
    """
    (N sum lambda_i^2 - 1) / (N - 1).
    Evaluated as N/(N-1) * sum (lambda_i - 1/N)^2, which is the same quantity for a
    normalized spectrum and is exactly zero at the maximally mixed state.
    """
    n = require_dim(spectrum)
    centred = spectrum.values - 1.0 / n
    return clamp_unit(n * float(np.dot(centred, centred)) / (n - 1))


def purity_von_neumann(spectrum: Spectrum) -> float:
    """1 + sum lambda_i log2(lambda_i) / log2(N), with 0 log 0 = 0."""
    n = require_dim(spectrum)
    lam = spectrum.values
    terms = np.where(lam > ZERO_LOG_CUTOFF, special.xlogy(lam, lam), 0.0)
    # xlogy는 자연로그 -> log2 로 변환
    return clamp_unit(1.0 + float(terms.sum()) / np.log(2.0) / np.log2(n))


def von_neumann_linearized(spectrum: Spectrum) -> float:
    """
    First-order Taylor form of the von Neumann purity (ln x ~ x - 1):
    1 + (Tr[rho^2] - 1) / ln N. Affine in the standard purity.
    """
    n = require_dim(spectrum)
    tr_sq = float(np.dot(spectrum.values, spectrum.values))
    return float(1.0 + (tr_sq - 1.0) / np.log(n))


class StandardPurity(PurityMeasure):
    measure_id = "standard"
    label = "Pi_s"

    def calculate(self, spectrum: Spectrum) -> float:
        return purity_standard(spectrum)


class VonNeumannPurity(PurityMeasure):
    measure_id = "von_neumann"
    label = "Pi_v"

    def calculate(self, spectrum: Spectrum) -> float:
        return purity_von_neumann(spectrum)
