"""
Purity Report Pipeline.
Runs registered purity measures on one validated state and assembles a PurityReport.
"""

from typing import Dict, List, Optional, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from src.purimetrics.core import DensityMatrix, Spectrum
from src.purimetrics.measures import MEASURE_IDS, PurityMeasure, get_measure
from src.purimetrics.measures.hierarchy import barakat_hierarchy
from src.purimetrics.measures.polarization import xy_coordinates


class PurityReport(BaseModel):
    """
    모든 purity 측정값을 한 상태에 대해 모은 결과.
    """

    model_config = ConfigDict(frozen=True)

    dim: int = Field(..., ge=2)
    pi_s: float
    pi_v: float
    barakat: List[float] = Field(..., description="B_k for k = 2..N")
    pi_b: float
    pi_edpw: float
    pi_sskf: float
    xy: Optional[Tuple[float, float]] = Field(None, description="(x, y), N=3 only")

    def table_row(self) -> Dict[str, float]:
        """Reference table row order: Pi_sskf, Pi_edpw, Pi_b, Pi_v."""
        return {
            "Pi_sskf": self.pi_sskf,
            "Pi_edpw": self.pi_edpw,
            "Pi_b": self.pi_b,
            "Pi_v": self.pi_v,
        }


class PurityPipeline:
    def __init__(self):
        self.metrics: List[PurityMeasure] = []

    def add_metric(self, metric: PurityMeasure):
        self.metrics.append(metric)

    def run(self, state: Union[DensityMatrix, Spectrum]) -> Dict[str, float]:
        """
        등록된 측정을 순서대로 계산합니다. 예외는 잡지 않고 그대로 전파합니다.
        """
        spectrum = state.spectrum if isinstance(state, DensityMatrix) else state
        results: Dict[str, float] = {}
        for metric in self.metrics:
            try:
                results[metric.measure_id] = metric.calculate(spectrum)
            except Exception as e:
                logger.error(f"{metric.__class__.__name__} failed on N={spectrum.dim}: {e}")
                raise
        return results

    @classmethod
    def default(cls) -> "PurityPipeline":
        pipeline = cls()
        for measure_id in MEASURE_IDS:
            pipeline.add_metric(get_measure(measure_id))
        return pipeline


def purity_report(state: Union[DensityMatrix, Spectrum]) -> PurityReport:
    spectrum = state.spectrum if isinstance(state, DensityMatrix) else state
    values = PurityPipeline.default().run(spectrum)

    return PurityReport(
        dim=spectrum.dim,
        pi_s=values["standard"],
        pi_v=values["von_neumann"],
        barakat=barakat_hierarchy(spectrum),
        pi_b=values["barakat_last"],
        pi_edpw=values["edpw"],
        pi_sskf=values["sskf"],
        xy=xy_coordinates(spectrum) if spectrum.dim == 3 else None,
    )
