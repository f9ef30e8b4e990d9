"""Shared fixtures for the quadrature-heavy kernel tests.

Each adaptive propagator build costs seconds, and several modules interrogate
the same spectra, so the grids are session scoped.  The independent Matsubara
oracle for the propagator lives in `_oracles`.
"""
import pytest

from collective_transport import kernel
from collective_transport.model import BathParams


@pytest.fixture(scope="session")
def marcus_series():
    """alpha=0.5, omega_c=10 propagators and spectra at T in {4, 10, 50}."""
    out = {}
    for T in (4.0, 10.0, 50.0):
        bath = BathParams(label="source", alpha=0.5, omega_c=10.0, T=T)
        grid = kernel.propagator(bath)
        out[T] = (bath, grid, kernel.spectrum(grid))
    return out


@pytest.fixture(scope="session")
def drain_pair(marcus_series):
    """Asymmetric-temperature pair: the T=10 series bath plus a T=6 drain."""
    src_bath, src_grid, src_spec = marcus_series[10.0]
    drn_bath = BathParams(label="drain", alpha=0.5, omega_c=10.0, T=6.0)
    drn_grid = kernel.propagator(drn_bath)
    return ([src_bath, drn_bath], [src_grid, drn_grid],
            [src_spec, kernel.spectrum(drn_grid)])
