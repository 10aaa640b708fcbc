import io
import pathlib

import numpy as np
import pytest

from cplattice.cli import run_command
from cplattice.gen import fixtures
from cplattice.gen.instances import random_correspondence

DATA_DIR = pathlib.Path(__file__).parent / "data"
GOLDEN_DIR = DATA_DIR / "golden"


@pytest.fixture
def ex1():
    return fixtures.example_one()


@pytest.fixture
def ex2():
    return fixtures.example_two()


@pytest.fixture
def graph():
    return fixtures.three_vertex_graph()


@pytest.fixture(scope="session")
def random_instances():
    """
    Five hundred seeded correspondences with at most five blocks.
    """
    rng = np.random.default_rng(2024)
    return [random_correspondence(rng, max_blocks=5) for _ in range(500)]


@pytest.fixture
def data_dir() -> pathlib.Path:
    return DATA_DIR


@pytest.fixture
def cli():
    """
    Runs the command-line interface in-process; returns (exit code, stdout, stderr).
    """

    def run(*argv):
        out = io.StringIO()
        err = io.StringIO()
        code = run_command([str(a) for a in argv], stdout=out, stderr=err)
        return code, out.getvalue(), err.getvalue()

    return run
