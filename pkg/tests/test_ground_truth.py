import json

import pytest

from diva.diffusion import ingest_ground_truth
from diva.errors import NodeCountMismatch, SchemaError, UnknownNode
from diva.graph import build_graph

# Published example document: 4 named nodes over 2 iterations. Its second
# entry under-reports the status delta (the census says three infected but
# the listed changes only produce two), so the verbatim form must be
# rejected and the repaired form accepted.
VERBATIM_DOC = [
    {"iteration": 0,
     "status": {"A": 1, "B": 0, "C": 0, "D": 0},
     "node_count": {"0": 4, "1": 1, "2": 0}},
    {"iteration": 1,
     "status": {"A": 2, "B": 1, "D": 1},
     "node_count": {"0": 1, "1": 3, "2": 1}},
]

REPAIRED_DOC = [
    {"iteration": 0,
     "status": {"A": 1, "B": 0, "C": 0, "D": 0},
     "node_count": {"0": 4, "1": 1, "2": 0}},
    {"iteration": 1,
     "status": {"A": 2, "B": 1, "C": 1, "D": 1},
     "node_count": {"0": 1, "1": 3, "2": 1}},
]


def five_node_graph():
    return build_graph(["A", "B", "C", "D", "E"], [("A", "B"), ("C", "D")])


def test_verbatim_listing_rejected_for_census_drift():
    with pytest.raises(NodeCountMismatch) as exc:
        ingest_ground_truth(json.dumps(VERBATIM_DOC), five_node_graph())
    assert exc.value.context["iteration"] == 1


def test_repaired_listing_accepted():
    trace = ingest_ground_truth(json.dumps(REPAIRED_DOC), five_node_graph())
    assert len(trace) == 2
    assert trace.model_kind == "GroundTruth"
    frames = dict(trace.replay())
    assert frames[1] == {"A": 2, "B": 1, "C": 1, "D": 1}
    assert trace.class_counts()[1] == [1, 3]


def test_unknown_node_rejected():
    graph = build_graph(["A", "B", "C", "X", "Y"], [("A", "B")])
    with pytest.raises(UnknownNode) as exc:
        ingest_ground_truth(json.dumps(REPAIRED_DOC), graph)
    assert exc.value.context["node"] == "D"


def test_empty_list_rejected():
    with pytest.raises(SchemaError):
        ingest_ground_truth(b"[]", five_node_graph())


def test_census_total_must_equal_node_count():
    doc = [{"iteration": 0, "status": {"A": 1},
            "node_count": {"0": 5, "1": 1}}]  # sums to 6 on a 5-node graph
    with pytest.raises(NodeCountMismatch) as exc:
        ingest_ground_truth(json.dumps(doc), five_node_graph())
    assert exc.value.context["total"] == 6


def test_not_json():
    with pytest.raises(SchemaError):
        ingest_ground_truth(b"status: infected", five_node_graph())


def test_not_utf8():
    with pytest.raises(SchemaError):
        ingest_ground_truth(b"\xff\xfe\x00", five_node_graph())


def test_bytes_and_str_equivalent():
    text = json.dumps(REPAIRED_DOC)
    a = ingest_ground_truth(text, five_node_graph())
    b = ingest_ground_truth(text.encode(), five_node_graph())
    assert a.serialize() == b.serialize()


def test_zero_valued_census_entries_allowed():
    doc = [{"iteration": 0, "status": {"A": 1},
            "node_count": {"0": 4, "1": 1, "2": 0, "7": 0}}]
    trace = ingest_ground_truth(json.dumps(doc), five_node_graph())
    assert trace.entries[0].node_count[7] == 0
