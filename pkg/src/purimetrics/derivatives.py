"""
Partial derivatives of the purity measures with respect to one eigenvalue, with
lambda_N carrying the normalization (d lambda_N / d lambda_i = -1), and the
ordering comparisons built on top of them.

Pi_b is differentiated as Pi_b^2; squaring does not change the sign.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from config import settings
from src.purimetrics.core import Spectrum, frozen_array
from src.purimetrics.errors import ZeroEigenvalue
from src.purimetrics.measures import get_measure
from src.purimetrics.measures.hierarchy import purity_barakat_last
from src.purimetrics.measures.standard import purity_standard, purity_von_neumann

DERIVATIVE_MEASURES = ("standard", "von_neumann", "barakat_sq")
# formulas with a log or a product of eigenvalues blow up (or lose meaning) at lambda = 0
SINGULAR_MEASURES = ("von_neumann", "barakat_sq")
FD_STEP = 1e-6


def _sign(value: float, dead_zone: float) -> int:
    if abs(value) <= dead_zone:
        return 0
    return 1 if value > 0 else -1


@dataclass(frozen=True)
class DerivativeSigns:
    """d Pi / d lambda_i for Pi in (Pi_s, Pi_v, Pi_b^2)."""

    index: int  # 1-based i
    partials: Dict[str, float]
    dead_zone: float = field(default=1e-12)

    @property
    def signs(self) -> Dict[str, int]:
        return {name: _sign(value, self.dead_zone) for name, value in self.partials.items()}

    def agree(self) -> bool:
        """Zero signs (inside the dead zone) match anything."""
        nonzero = {s for s in self.signs.values() if s != 0}
        return len(nonzero) <= 1


def _check_index(spectrum: Spectrum, i: int) -> int:
    n = spectrum.dim
    if n < 2:
        raise ValueError(f"Derivatives need N >= 2, got N={n}")
    if not 1 <= i <= n - 1:
        raise ValueError(f"Eigenvalue index i must be in 1..{n - 1}, got {i}")
    return n


def analytic_partials(
    spectrum: Spectrum,
    i: int,
    measures: Sequence[str] = DERIVATIVE_MEASURES,
    dead_zone: Optional[float] = None,
) -> DerivativeSigns:
    """
    Closed forms (lambda_N dependent):
      Pi_s    2N (lambda_i - lambda_N) / (N - 1)
      Pi_v    (log2 lambda_i - log2 lambda_N) / log2 N
      Pi_b^2  N^N prod_{j != i, N} lambda_j (lambda_i - lambda_N)
    """
    n = _check_index(spectrum, i)
    dead_zone = settings.DEAD_ZONE if dead_zone is None else dead_zone
    lam = spectrum.values
    li, ln = float(lam[i - 1]), float(lam[-1])

    if any(m in SINGULAR_MEASURES for m in measures) and lam.min() <= dead_zone:
        raise ZeroEigenvalue(
            "Derivative formula is singular at a zero eigenvalue",
            bound=dead_zone,
            magnitude=float(lam.min()),
        )

    partials: Dict[str, float] = {}
    for name in measures:
        if name == "standard":
            partials[name] = 2.0 * n * (li - ln) / (n - 1)
        elif name == "von_neumann":
            partials[name] = float((np.log2(li) - np.log2(ln)) / np.log2(n))
        elif name == "barakat_sq":
            others = np.delete(lam[:-1], i - 1)
            partials[name] = float(n**n * np.prod(others) * (li - ln))
        else:
            raise ValueError(f"No derivative formula for '{name}', expected one of {DERIVATIVE_MEASURES}")

    return DerivativeSigns(index=i, partials=partials, dead_zone=dead_zone)


def _evaluate(name: str, values: np.ndarray) -> float:
    # perturbed spectra are neither re-sorted nor renormalized; all three are symmetric
    spectrum = Spectrum(values=frozen_array(values))
    if name == "standard":
        return purity_standard(spectrum)
    if name == "von_neumann":
        return purity_von_neumann(spectrum)
    if name == "barakat_sq":
        return purity_barakat_last(spectrum) ** 2
    raise ValueError(f"No derivative formula for '{name}', expected one of {DERIVATIVE_MEASURES}")


def finite_difference_partials(
    spectrum: Spectrum,
    i: int,
    step: float = FD_STEP,
    measures: Sequence[str] = DERIVATIVE_MEASURES,
) -> Dict[str, float]:
    """Central differences: lambda_i +/- step with lambda_N -/+ step."""
    _check_index(spectrum, i)
    lam = np.asarray(spectrum.values, dtype=float)
    if lam[-1] <= step:
        raise ZeroEigenvalue(
            "lambda_N is too small for a central difference", bound=step, magnitude=float(lam[-1])
        )

    direction = np.zeros_like(lam)
    direction[i - 1] = 1.0
    direction[-1] = -1.0
    plus = lam + step * direction
    minus = lam - step * direction
    return {name: (_evaluate(name, plus) - _evaluate(name, minus)) / (2.0 * step) for name in measures}


def sign_agreement(spectrum: Spectrum, i: int, dead_zone: Optional[float] = None) -> bool:
    result = analytic_partials(spectrum, i, dead_zone=dead_zone)
    if not result.agree():
        logger.warning(f"Derivative signs disagree at i={i}: {result.signs}")
    return result.agree()


# ---------------------------------------------------------------------------
# Orderings
# ---------------------------------------------------------------------------

_WITNESSES = {
    "sskf_edpw": ((1 / 2, 1 / 2, 0.0), (1 / 2, 1 / 4, 1 / 4)),
    "sskf_barakat": ((3 / 4, 1 / 8, 1 / 8), (1 / 2, 1 / 2, 0.0)),
}


def ordering_disagreement_witness(pair: str = "sskf_edpw") -> Tuple[Spectrum, Spectrum]:
    """
    Two N=3 spectra that the named measures rank in opposite order:
      sskf_edpw     (1/2, 1/2, 0)   vs (1/2, 1/4, 1/4)
      sskf_barakat  (3/4, 1/8, 1/8) vs (1/2, 1/2, 0)
    """
    try:
        first, second = _WITNESSES[pair]
    except KeyError:
        raise ValueError(f"Unknown witness pair '{pair}', expected one of {', '.join(_WITNESSES)}") from None
    return Spectrum.from_values(first), Spectrum.from_values(second)


def purity_ordering(
    spectra: Mapping[str, Spectrum], measure_id: str, tol: float = 5e-4
) -> List[List[str]]:
    """
    Weak ordering, purest first. Labels whose values differ by at most tol share a
    group (consecutive after sorting).
    """
    measure = get_measure(measure_id)
    values = sorted(
        ((measure.calculate(spec), label) for label, spec in spectra.items()),
        key=lambda item: (-item[0], item[1]),
    )

    groups: List[List[str]] = []
    anchor = None
    for value, label in values:
        if anchor is not None and anchor - value <= tol:
            groups[-1].append(label)
        else:
            groups.append([label])
            anchor = value
    return [sorted(group) for group in groups]


def orderings_agree(
    spectra: Mapping[str, Spectrum], first: str, second: str, tol: float = 5e-4
) -> bool:
    """Weak orderings must match group for group; a tie in one and not the other is a disagreement."""
    return purity_ordering(spectra, first, tol) == purity_ordering(spectra, second, tol)
