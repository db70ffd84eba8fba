"""
Purity measure registry. Measure ids are the public names used by the CLI,
channels and entanglement modules.
"""

from typing import Dict, Type

from src.purimetrics.errors import UnknownMeasure

from .base import PurityMeasure
from .hierarchy import BarakatLastPurity, BarakatPurity
from .polarization import EdpwPurity, SskfPurity
from .standard import StandardPurity, VonNeumannPurity

MEASURES: Dict[str, Type[PurityMeasure]] = {
    cls.measure_id: cls
    for cls in (StandardPurity, VonNeumannPurity, BarakatLastPurity, EdpwPurity, SskfPurity)
}

MEASURE_IDS = tuple(MEASURES)


def get_measure(measure_id: str, **params) -> PurityMeasure:
    try:
        cls = MEASURES[measure_id]
    except KeyError:
        raise UnknownMeasure(
            f"Unknown measure '{measure_id}', expected one of {', '.join(MEASURE_IDS)}"
        ) from None
    return cls(**params)


__all__ = [
    "MEASURES",
    "MEASURE_IDS",
    "BarakatPurity",
    "PurityMeasure",
    "get_measure",
]
