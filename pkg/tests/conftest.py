"""
Fixtures compartidas: mallas, estados aleatorios sembrados y el marcador `slow`.

Las pruebas de aceptación largas (tiempo de vida, decaimiento, conservación a
T=10) sólo se ejecutan con --runslow.
"""

import numpy as np
import pytest

from src.experiments.initial_data import random_state, single_mode
from src.spectral.grid import Grid


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="Ejecuta pruebas lentas")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: prueba de aceptación lenta (requiere --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="usar --runslow para ejecutar")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def grid64():
    return Grid(64)


@pytest.fixture
def grid256():
    return Grid(256)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def random_wave(grid64):
    """Estado aleatorio de banda limitada en N=64."""
    return random_state(grid64, np.random.default_rng([7, 0]))


@pytest.fixture
def random_waves(grid256):
    """Pequeño conjunto de estados aleatorios en N=256."""
    return [random_state(grid256, np.random.default_rng([11, i])) for i in range(5)]


@pytest.fixture
def linear_wave(grid64):
    return single_mode(grid64, 0.05, -1)
