import numpy as np
import pytest

from sonigrid.config import EngineConfig
from sonigrid.dataset import AxisMeta, SurfaceDataset, generate_synthetic
from sonigrid.engine import Engine


@pytest.fixture(scope="session")
def gaussian_dataset():
    return generate_synthetic("gaussian")


@pytest.fixture(scope="session")
def benzene_dataset():
    return generate_synthetic("benzene_like")


@pytest.fixture(scope="session")
def sinusoidal_dataset():
    return generate_synthetic("sinusoidal")


@pytest.fixture
def gaussian_engine(gaussian_dataset):
    return Engine(gaussian_dataset, EngineConfig())


def random_dataset(seed: int, n: int = 1000) -> SurfaceDataset:
    rng = np.random.default_rng(seed)
    pts = tuple(
        (float(x), float(y), float(z))
        for x, y, z in zip(
            rng.uniform(-10, 10, n), rng.normal(0, 5, n), rng.uniform(0, 4, n)
        )
    )
    meta = (AxisMeta("x"), AxisMeta("y"), AxisMeta("z"))
    return SurfaceDataset(pts, meta, f"random-{seed}")


def engine_for(dataset, **config_kwargs) -> Engine:
    return Engine(dataset, EngineConfig(**config_kwargs))
