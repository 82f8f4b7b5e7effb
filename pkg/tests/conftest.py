import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import helpers  # noqa: E402


@pytest.fixture
def demo_graph():
    return helpers.demo_graph()


@pytest.fixture
def demo_matrices():
    return helpers.demo_matrices()


@pytest.fixture
def toggle_graph():
    return helpers.toggle_graph()


@pytest.fixture
def memory_one_graph():
    return helpers.memory_one_graph()
