from pathlib import Path

import pytest

from ncpoint.freealg import parse_algebra
from ncpoint.colorlie import parse_colorlie

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "ncpoint" / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_algebra(name: str):
    return parse_algebra(fixture_path(name).read_text())


def load_colorlie(name: str):
    return parse_colorlie(fixture_path(name).read_text())


@pytest.fixture
def downup_4_4():
    return load_algebra("downup_4_-4.alg")


@pytest.fixture
def downup_2_1():
    return load_algebra("downup_2_-1.alg")


@pytest.fixture
def quantum_plane():
    return load_algebra("quantum_plane_2.alg")


@pytest.fixture
def commutative_plane():
    return load_algebra("commutative_plane.alg")


@pytest.fixture
def free_2():
    return load_algebra("free_2.alg")


@pytest.fixture
def d_2_1():
    return load_algebra("d_2_1.alg")
