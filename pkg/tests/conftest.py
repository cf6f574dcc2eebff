import pytest

from hsosc.model import OscillatorModel
from hsosc.oracle import OracleConfig, exact_energies


@pytest.fixture(scope="session")
def quartic_exact():
    """Oracle energies A_0(0..5) for the pure quartic oscillator."""
    return exact_energies(OscillatorModel(0.0), 5, OracleConfig(rel_tol=1e-10)).energies
