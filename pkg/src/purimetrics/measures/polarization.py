"""
Polarization-style purities: EDPW (fully polarized fraction), SSKF (Bloch radius),
the N=2 degree of polarization and the N=3 (x, y) parametrization.
"""

from enum import Enum
from typing import Tuple, Union

import numpy as np

from src.purimetrics.bloch import BlochVector, bloch_from_density, pauli
from src.purimetrics.core import DensityMatrix, Spectrum, Tolerances
from src.purimetrics.errors import DimensionMismatch, InvalidXY, WrongDimension

from .base import PurityMeasure, clamp_unit, require_dim
from .standard import purity_standard

# slack for x <= y and the [0, 1] range checks
XY_TOL = 1e-12


class SskfForm(str, Enum):
    FROM_BLOCH = "from_bloch"
    FROM_TRACE = "from_trace"
    FROM_SPECTRUM = "from_spectrum"


class PolarizationForm(str, Enum):
    DET = "det_form"
    EIG = "eig_form"
    RADIUS = "radius_form"


def _spectrum_of(state: Union[DensityMatrix, Spectrum]) -> Spectrum:
    if isinstance(state, DensityMatrix):
        return state.spectrum
    if isinstance(state, Spectrum):
        return state
    raise TypeError(f"Expected DensityMatrix or Spectrum, got {type(state).__name__}")


def purity_edpw(spectrum: Spectrum) -> float:
    """lambda_1 - lambda_2: weight of the rank-1 term in the rank decomposition."""
    require_dim(spectrum)
    return clamp_unit(spectrum.values[0] - spectrum.values[1])


def purity_sskf(
    state: Union[BlochVector, DensityMatrix, Spectrum],
    form: Union[SskfForm, str] = SskfForm.FROM_SPECTRUM,
) -> float:
    """
    Length of the generalized Bloch vector, in one of three equivalent forms:
      from_bloch    |r|
      from_trace    sqrt((N Tr[rho^2] - 1) / (N - 1)) = sqrt(N Tr[(rho - I/N)^2] / (N - 1))
      from_spectrum sqrt(Pi_s)
    """
    form = SskfForm(form)

    if form is SskfForm.FROM_BLOCH:
        if isinstance(state, DensityMatrix):
            state = bloch_from_density(state)
        if not isinstance(state, BlochVector):
            raise TypeError(f"from_bloch needs a BlochVector, got {type(state).__name__}")
        if state.r.size != state.n_dim**2 - 1:
            raise DimensionMismatch(
                f"Bloch vector length {state.r.size} does not match N={state.n_dim}"
            )
        return clamp_unit(state.norm)

    if form is SskfForm.FROM_TRACE:
        if not isinstance(state, DensityMatrix):
            raise TypeError(f"from_trace needs a DensityMatrix, got {type(state).__name__}")
        n = state.dim
        if n < 2:
            raise WrongDimension(f"Purity measures need N >= 2, got N={n}")
        # Tr[rho^2] - 1/N, centred so the maximally mixed state gives exactly 0
        deviation = state.entries - np.eye(n) / n
        centred = float(np.sum(np.abs(deviation) ** 2))
        return clamp_unit(np.sqrt(n * centred / (n - 1)))

    return clamp_unit(np.sqrt(purity_standard(_spectrum_of(state))))


def degree_of_polarization_2d(
    state: Union[BlochVector, DensityMatrix, Spectrum],
    form: Union[PolarizationForm, str] = PolarizationForm.EIG,
) -> float:
    """
    P^(2), the N=2 degree of polarization:
      det_form    sqrt(1 - 4 det(rho))
      eig_form    lambda_1 - lambda_2
      radius_form |r|
    """
    form = PolarizationForm(form)
    n = state.n_dim if isinstance(state, BlochVector) else _spectrum_of(state).dim
    if n != 2:
        raise WrongDimension(f"P^(2) is defined for N=2 only, got N={n}")

    if form is PolarizationForm.RADIUS:
        r = state if isinstance(state, BlochVector) else None
        if r is None:
            if not isinstance(state, DensityMatrix):
                raise TypeError("radius_form needs a DensityMatrix or BlochVector")
            r = bloch_from_density(state, pauli())
        return clamp_unit(r.norm)

    if isinstance(state, BlochVector):
        raise TypeError(f"{form.value} needs a DensityMatrix or Spectrum")
    lam = _spectrum_of(state).values
    if form is PolarizationForm.DET:
        det = float(np.prod(lam))
        return clamp_unit(np.sqrt(max(0.0, 1.0 - 4.0 * det)))
    return clamp_unit(lam[0] - lam[1])


def xy_coordinates(spectrum: Spectrum) -> Tuple[float, float]:
    """
    N=3 only. x = lambda_1 - lambda_2 (rank-1 power), y = 1 - 3 lambda_3
    (power outside the rank-3 component). Always y >= x.
    """
    if spectrum.dim != 3:
        raise WrongDimension(f"(x, y) coordinates are defined for N=3, got N={spectrum.dim}")
    l1, l2, l3 = spectrum.values
    return clamp_unit(l1 - l2), clamp_unit(1.0 - 3.0 * l3)


def _check_xy(x: float, y: float) -> None:
    if not (-XY_TOL <= x <= 1 + XY_TOL and -XY_TOL <= y <= 1 + XY_TOL):
        raise InvalidXY(f"x and y must lie in [0, 1], got ({x}, {y})")
    if x > y + XY_TOL:
        raise InvalidXY(f"x must not exceed y, got x={x}, y={y}", bound=y, magnitude=x)


def sskf_from_xy(x: float, y: float) -> float:
    """Pi_sskf = 1/2 sqrt(3 x^2 + y^2)."""
    _check_xy(x, y)
    return clamp_unit(0.5 * np.sqrt(3.0 * x * x + y * y))


def spectrum_from_xy(x: float, y: float) -> Spectrum:
    _check_xy(x, y)
    values = (
        1.0 / 3.0 + 0.5 * (y / 3.0 + x),
        1.0 / 3.0 + 0.5 * (y / 3.0 - x),
        1.0 / 3.0 - y / 3.0,
    )
    return Spectrum.from_values(values, Tolerances.current())


class EdpwPurity(PurityMeasure):
    measure_id = "edpw"
    label = "Pi_edpw"

    def calculate(self, spectrum: Spectrum) -> float:
        return purity_edpw(spectrum)


class SskfPurity(PurityMeasure):
    measure_id = "sskf"
    label = "Pi_sskf"

    def calculate(self, spectrum: Spectrum) -> float:
        return purity_sskf(spectrum, SskfForm.FROM_SPECTRUM)
