import numpy as np
import pytest

from nulljam import HelperSpec, SystemConfig, db_to_linear

RHO0 = db_to_linear(5.0)
RHO_K = db_to_linear(2.0)


def reference_system(n_helpers, eps=0.01, nk=2, rho0=RHO0, rho_k=RHO_K, sigma2=1.0, nt=3):
    helpers = [HelperSpec(nk, rho_k) for _ in range(n_helpers)]
    return SystemConfig(nt, rho0, sigma2, helpers, eps)


def random_psd(rng, n, rank=None):
    rank = n if rank is None else rank
    a = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    return a @ a.conj().T / rank


def random_unitary(rng, n):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_system(rng, max_helpers=4, eps=0.01):
    """Mixed N_k in {2, 3}, random PSD covariances and helper channels."""
    helpers = []
    for _ in range(rng.integers(1, max_helpers + 1)):
        nk = int(rng.integers(2, 4))
        h = rng.standard_normal(nk) + 1j * rng.standard_normal(nk)
        helpers.append(HelperSpec(nk, float(rng.uniform(0.5, 3.0)), random_psd(rng, nk), h))
    return SystemConfig(int(rng.integers(1, 5)), float(rng.uniform(1.0, 5.0)),
                        float(rng.uniform(0.5, 2.0)), helpers, eps)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LOG = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LOG, key=lambda s: int(s.split()[0][1:])):
        terminalreporter.write_line(line)
