import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import focalframe as ff

settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


@pytest.fixture(scope="session")
def helix():
    return ff.make_helix(2.0, 1.0)


@pytest.fixture(scope="session")
def unit_helix(helix):
    return ff.reparam_to_arclength(helix)


@pytest.fixture(scope="session")
def salkowski():
    return ff.make_salkowski(0.3)


@pytest.fixture(scope="session")
def unit_salkowski(salkowski):
    return ff.reparam_to_arclength(salkowski)


@pytest.fixture(scope="session")
def wcurve4():
    return ff.make_wcurve([1.0, 0.6], [1.0, 2.0], dim=4)


@pytest.fixture(scope="session")
def wcurve5():
    return ff.make_wcurve([1.0, 1.0], [1.0, 2.0], pitch=1.0, dim=5)


@pytest.fixture(scope="session")
def ellipse_arc():
    # vertex-free arc strictly inside one quadrant
    return ff.make_ellipse(2.0, 1.2, domain=(0.25, 1.35))


def unit_rows(n, dim, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(n, dim))
    return v / np.linalg.norm(v, axis=1)[:, None]
