import os
import sys

import numpy as np
import pytest

# repo root on the path so `config`, `src.purimetrics` and `reference_states` import
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from reference_states.parser import table1_spectra  # noqa: E402
from src.purimetrics.core import Spectrum, Tolerances  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def tolerances():
    return Tolerances()


@pytest.fixture(scope="session")
def table1():
    """{column label: Spectrum} for P, E, F, C, D, M."""
    return {label: Spectrum.from_values(values) for label, values in table1_spectra().items()}
