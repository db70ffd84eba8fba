"""
Depolarizing channel E_p(rho) = (1 - p) I/N + p rho and the SSKF scaling law
Pi_sskf(E_p(rho)) = p Pi_sskf(rho).
"""

from typing import Iterable, Optional

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from src.purimetrics.core import DensityMatrix, Tolerances
from src.purimetrics.errors import DimensionMismatch, ZeroPurity
from src.purimetrics.measures import get_measure
from src.purimetrics.measures.polarization import SskfForm, purity_sskf
from src.purimetrics.processing import DensityProcessor

PROFILE_COLUMNS = ["p", "measure", "value", "ratio"]

# Pi(rho) at or below this makes the ratio column undefined
ZERO_PURITY = 1e-12


class DepolarizingChannel(BaseModel):
    """
    p는 생존 확률 (p=1: 항등 채널, p=0: 완전 탈편광).
    """

    model_config = ConfigDict(frozen=True)

    p: float = Field(..., ge=0.0, le=1.0, description="Survival probability")
    n_dim: int = Field(..., ge=1, description="System dimension N")

    def apply(self, rho: DensityMatrix, tolerances: Optional[Tolerances] = None) -> DensityMatrix:
        if rho.dim != self.n_dim:
            raise DimensionMismatch(f"Channel acts on N={self.n_dim}, state has N={rho.dim}")
        n = self.n_dim
        out = (1.0 - self.p) * np.eye(n, dtype=complex) / n + self.p * rho.entries
        return DensityProcessor.validate_density(out, tolerances)

    def compose(self, other: "DepolarizingChannel") -> "DepolarizingChannel":
        """E_p o E_q = E_{pq}."""
        if other.n_dim != self.n_dim:
            raise DimensionMismatch(f"Cannot compose channels on N={self.n_dim} and N={other.n_dim}")
        return DepolarizingChannel(p=self.p * other.p, n_dim=self.n_dim)


def apply(channel: DepolarizingChannel, rho: DensityMatrix) -> DensityMatrix:
    return channel.apply(rho)


def trace_square_after(rho: DensityMatrix, p: float) -> float:
    """Closed form Tr[E_p(rho)^2] = (1 - p^2)/N + p^2 Tr[rho^2]."""
    n = rho.dim
    return (1.0 - p * p) / n + p * p * DensityProcessor.trace_power(rho, 2)


def sskf_scaling_residual(rho: DensityMatrix, p: float) -> float:
    """|Pi_sskf(E_p(rho)) - p Pi_sskf(rho)|."""
    out = DepolarizingChannel(p=p, n_dim=rho.dim).apply(rho)
    before = purity_sskf(rho, SskfForm.FROM_SPECTRUM)
    after = purity_sskf(out, SskfForm.FROM_SPECTRUM)
    return abs(after - p * before)


def measure_scaling_profile(
    rho: DensityMatrix, measure_id: str, p_grid: Iterable[float]
) -> pd.DataFrame:
    """
    Table of (p, measure, value, ratio) with ratio = Pi(E_p(rho)) / Pi(rho).
    For sskf the ratio column equals p; other measures are reported as computed.
    """
    measure = get_measure(measure_id)
    base = measure.calculate(rho.spectrum)
    if base <= ZERO_PURITY:
        raise ZeroPurity(
            f"{measure_id} purity of the input state is zero; ratio is undefined",
            bound=ZERO_PURITY,
            magnitude=base,
        )

    rows = []
    for p in p_grid:
        out = DepolarizingChannel(p=float(p), n_dim=rho.dim).apply(rho)
        value = measure.calculate(out.spectrum)
        rows.append({"p": float(p), "measure": measure_id, "value": value, "ratio": value / base})

    frame = pd.DataFrame(rows, columns=PROFILE_COLUMNS)
    logger.debug(f"Scaling profile for {measure_id}: {len(frame)} points, base purity {base:.6f}")
    return frame
