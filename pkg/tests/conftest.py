import json
import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from spinnet.graph import build_network  # noqa: E402


@pytest.fixture(scope="session")
def frozen():
    return json.loads((HERE / "frozen_values.json").read_text())


def frozen_network(frozen, name, values):
    g = frozen["graphs"][name]
    rot = {int(v): tuple(h) for v, h in g["rotation"].items()}
    edges = {int(e): tuple(p) for e, p in g["edges"].items()}
    return build_network(rot, edges, dict(enumerate(values)))
