import random

import pytest

from cubecolor.algebra import Cochain, coboundary
from cubecolor.cubical import Box, faces_of


def random_cochain(rng, region, k, size=6, lo=-3, hi=3):
    faces = faces_of(region, k)
    picked = rng.sample(faces, min(len(faces), size))
    return Cochain({f: rng.randint(lo, hi) for f in picked})


def random_cocycle(rng, region, k, size=6):
    """delta of a random (k-1)-cochain, guaranteed closed."""
    return coboundary(random_cochain(rng, region, k - 1, size), region)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def square():
    return Box.cube(2, 1)
