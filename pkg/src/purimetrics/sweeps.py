"""
Fixed-lambda_1 sweeps over N=3 spectra (lambda_3 = 1 - lambda_1 - lambda_2).
"""

from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict

from src.purimetrics.core import Spectrum, Tolerances
from src.purimetrics.errors import EmptyRange, InvalidSpectrum
from src.purimetrics.measures.hierarchy import purity_barakat_last
from src.purimetrics.measures.polarization import purity_edpw, purity_sskf
from src.purimetrics.measures.standard import purity_von_neumann

SWEEP_COLUMNS = ["lambda1", "lambda2", "lambda3", "pi_b", "pi_sskf", "pi_v", "pi_edpw"]
DEFAULT_POINTS = 201
# ordering slack so that grid points like lambda_2 = 1/3 survive float rounding
ORDER_TOL = 1e-14


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    lambda1: float
    lambda2: float
    lambda3: float
    pi_b: float
    pi_sskf: float
    pi_v: float
    pi_edpw: float


def admissible_interval(lambda1: float) -> tuple:
    """lambda_2 in [(1 - lambda_1)/2, min(lambda_1, 1 - lambda_1)] keeps lambda_1 >= lambda_2 >= lambda_3 >= 0."""
    return (1.0 - lambda1) / 2.0, min(lambda1, 1.0 - lambda1)


def default_grid(lambda1: float, points: int = DEFAULT_POINTS) -> np.ndarray:
    if points < 1:
        raise EmptyRange(f"Sweep needs at least one point, got {points}")
    lo, hi = admissible_interval(lambda1)
    return np.unique(np.linspace(lo, hi, points))


def sweep(lambda1: float, grid: Optional[Sequence[float]] = None, points: int = DEFAULT_POINTS) -> List[SweepRow]:
    if not (1.0 / 3.0 - ORDER_TOL <= lambda1 <= 1.0 + ORDER_TOL):
        raise InvalidSpectrum(f"lambda1 must lie in [1/3, 1], got {lambda1}")
    if grid is None:
        grid = default_grid(lambda1, points)

    tol = Tolerances.current()
    rows = []
    for lambda2 in grid:
        lambda2 = float(lambda2)
        lambda3 = 1.0 - lambda1 - lambda2
        if not (lambda1 + ORDER_TOL >= lambda2 and lambda2 + ORDER_TOL >= lambda3 and lambda3 >= -ORDER_TOL):
            continue
        spectrum = Spectrum.from_values((lambda1, lambda2, max(lambda3, 0.0)), tol)
        rows.append(
            SweepRow(
                lambda1=lambda1,
                lambda2=lambda2,
                lambda3=lambda3,
                pi_b=purity_barakat_last(spectrum),
                pi_sskf=purity_sskf(spectrum),
                pi_v=purity_von_neumann(spectrum),
                pi_edpw=purity_edpw(spectrum),
            )
        )

    if not rows:
        raise EmptyRange(f"No admissible lambda2 in the grid for lambda1={lambda1}")
    logger.debug(f"Sweep lambda1={lambda1}: {len(rows)} admissible rows")
    return rows


def sweep_frame(rows: Sequence[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows], columns=SWEEP_COLUMNS)


def sweep_signs_agree(rows: Sequence[SweepRow], dead_zone: float = 1e-9) -> bool:
    """
    Discrete differences of pi_b, pi_sskf and pi_v between neighbouring rows share
    their sign wherever all three exceed the dead zone.
    """
    frame = sweep_frame(rows)
    diffs = frame[["pi_b", "pi_sskf", "pi_v"]].diff().iloc[1:].to_numpy()
    significant = np.all(np.abs(diffs) > dead_zone, axis=1)
    signs = np.sign(diffs[significant])
    return bool(np.all(signs == signs[:, :1]))


def edpw_slopes(rows: Sequence[SweepRow]) -> np.ndarray:
    """d pi_edpw / d lambda_2 between neighbouring rows (expected: -1)."""
    frame = sweep_frame(rows)
    return (frame["pi_edpw"].diff() / frame["lambda2"].diff()).iloc[1:].to_numpy()
