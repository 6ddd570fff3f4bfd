import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

REPO_ROOT = Path(__file__).resolve().parent.parent
LASTFM_EDGES = REPO_ROOT / "data" / "lastfm_asia.edges"


def lastfm_path_or_skip() -> Path:
    if not LASTFM_EDGES.is_file():
        pytest.skip(
            "LastFM-Asia dataset not present; run scripts/fetch_lastfm_asia.py"
        )
    return LASTFM_EDGES


@pytest.fixture
def lastfm_edges() -> Path:
    return lastfm_path_or_skip()


@pytest.fixture
def tiny_path_graph():
    from diva.graph import build_graph

    return build_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
