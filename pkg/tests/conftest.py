import time

import pytest

from arnfit import experiments


@pytest.fixture(scope="session")
def exp1_run():
    """Full even-degree sweep of the Chebyshev/Runge study, with wall time."""
    t0 = time.perf_counter()
    table = experiments.chebyshev_runge()
    return table, time.perf_counter() - t0


@pytest.fixture(scope="session")
def exp2_table():
    return experiments.two_interval_sign()


@pytest.fixture(scope="session")
def exp3_table():
    return experiments.fourier_extension()
