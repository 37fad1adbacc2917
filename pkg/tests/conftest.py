import numpy as np
import pytest

from geophase.grassmann import ManifoldSpec, random_point

SHAPES = [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 3)]
CONFIGS = [(n, m, eps) for (n, m) in SHAPES for eps in (1, -1)]


def random_hermitian(rng, size, psd=False):
    G = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    return G @ G.conj().T if psd else 0.5 * (G + G.conj().T)


def random_pair(n, m, eps, seed, max_norm=0.7):
    rng = np.random.default_rng(seed)
    spec = ManifoldSpec(n, m, eps)
    return random_point(spec, rng, max_norm), random_point(spec, rng, max_norm)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
