import numpy as np
import pytest

from nhskin import Family, make_model

# Parameter sets from the three measured dynamic phases (rad/s, 10 cells).
PHASE_A = dict(t1=2.1, t2=14.9, t3=11.2, t4=3.7, omega0=86.5, gamma=2.8)
PHASE_B = dict(t1=3.2, t2=6.7, t3=22.6, t4=8.4, omega0=80.9, gamma=4.4)
PHASE_C = dict(t1=2.1, t2=14.9, t3=12.6, t4=8.9, omega0=89.8, gamma=2.5)


@pytest.fixture(scope="session")
def model_a():
    return make_model(Family.GT, **PHASE_A, n_cells=10)


@pytest.fixture(scope="session")
def model_b():
    return make_model(Family.GT, **PHASE_B, n_cells=10)


@pytest.fixture(scope="session")
def model_c():
    return make_model(Family.GT, **PHASE_C, n_cells=10)


@pytest.fixture(scope="session")
def model_hermitian():
    return make_model(Family.GT, t1=1.0, t2=2.0, t3=3.0, t4=3.0, n_cells=10)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(12345)
