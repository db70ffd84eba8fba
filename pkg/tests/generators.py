"""
Random states for property tests: Dirichlet spectra, Haar unitaries (scipy.stats.unitary_group)
and hypothesis strategies over normalized spectra.
"""

import numpy as np
from hypothesis import strategies as st
from scipy.stats import unitary_group

from src.purimetrics.core import DensityMatrix, Spectrum
from src.purimetrics.entanglement import BipartitePureState
from src.purimetrics.processing import DensityProcessor


def random_spectrum(rng, n, floor=0.0):
    """Uniform on the simplex; floor > 0 keeps every eigenvalue >= floor."""
    lam = floor + (1.0 - n * floor) * rng.dirichlet(np.ones(n))
    return Spectrum.from_values(lam)


def random_unitary(rng, n):
    return unitary_group.rvs(n, random_state=rng)


def random_density(rng, n, floor=0.0) -> DensityMatrix:
    lam = random_spectrum(rng, n, floor).values
    u = random_unitary(rng, n)
    rho = (u * lam) @ u.conj().T
    return DensityProcessor.validate_density(0.5 * (rho + rho.conj().T))


def random_pure_state(rng, d_a, d_b) -> BipartitePureState:
    grid = rng.normal(size=(d_a, d_b)) + 1j * rng.normal(size=(d_a, d_b))
    return BipartitePureState.from_amplitudes(grid / np.linalg.norm(grid))


@st.composite
def spectra(draw, min_dim=2, max_dim=6, floor=0.0):
    n = draw(st.integers(min_value=min_dim, max_value=max_dim))
    weights = draw(
        st.lists(st.floats(min_value=1e-3, max_value=1.0), min_size=n, max_size=n)
    )
    lam = np.asarray(weights) / np.sum(weights)
    lam = floor + (1.0 - n * floor) * lam
    return Spectrum.from_values(lam)


@st.composite
def densities(draw, min_dim=2, max_dim=6, floor=0.0):
    """Haar-rotated random density matrices; hypothesis draws the dimension and the seed."""
    n = draw(st.integers(min_value=min_dim, max_value=max_dim))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_density(np.random.default_rng(seed), n, floor)


@st.composite
def seeds(draw):
    return np.random.default_rng(draw(st.integers(min_value=0, max_value=2**32 - 1)))
