import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from unnet.graph import Graph  # noqa: E402


@pytest.fixture
def line4():
    return Graph.path(4)


@pytest.fixture
def k4():
    return Graph.complete(4)


@pytest.fixture
def k22():
    """K_{2,2} with parts {0, 1} and {2, 3}."""
    return Graph.complete_bipartite(2, 2)


@pytest.fixture
def rng():
    return random.Random(20261018)


@pytest.fixture
def write_graph(tmp_path):
    def _write(text, name="g.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write
