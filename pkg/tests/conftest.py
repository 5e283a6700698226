"""Shared fixtures for the observer test-suite."""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.geometry.so3 import angle_axis  # noqa: E402


def unit_vector(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    return angle_axis(rng.uniform(0.0, np.pi), unit_vector(rng))


def observable_pair(rng: np.random.Generator, min_margin: float = 0.3):
    """(r_m, r_a) with |r_m x r_a| >= min_margin |r_m| |r_a| and norms in [0.5, 10]."""
    while True:
        r_m = unit_vector(rng) * rng.uniform(0.5, 2.0)
        r_a = unit_vector(rng) * rng.uniform(0.5, 10.0)
        margin = np.linalg.norm(np.cross(r_m, r_a)) / (np.linalg.norm(r_m) * np.linalg.norm(r_a))
        if margin >= min_margin:
            return r_m, r_a


@pytest.fixture
def rng():
    return np.random.default_rng(20161212)
