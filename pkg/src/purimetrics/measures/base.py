"""
Base interface for all purity measures.
Strategy Pattern implementation.
"""

from abc import ABC, abstractmethod
from typing import ClassVar

from src.purimetrics.core import Spectrum
from src.purimetrics.errors import WrongDimension


class PurityMeasure(ABC):
    """모든 purity 측정의 부모 클래스"""

    measure_id: ClassVar[str]
    label: ClassVar[str]

    # 일부 측정은 추가 파라미터(예: Barakat 차수 k)가 필요할 수 있음
    def __init__(self, **kwargs):
        self.params = kwargs

    @abstractmethod
    def calculate(self, spectrum: Spectrum) -> float:
        """고유값 스펙트럼을 받아 [0, 1] 범위의 purity를 반환"""
        pass

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.params})"


def require_dim(spectrum: Spectrum, minimum: int = 2) -> int:
    n = spectrum.dim
    if n < minimum:
        raise WrongDimension(f"Purity measures need N >= {minimum}, got N={n}")
    return n


def clamp_unit(value: float) -> float:
    return float(min(1.0, max(0.0, value)))
