import json

import pytest

from scimap.communities import Partition
from scimap.enrich import ClusterInfo
from scimap.export import ExportError, serialize, to_vosviewer, validate
from scimap.layout import LayoutResult
from helpers import make_graph


def small_doc():
    g = make_graph([("Q1###a", "Q2###b", 17.0)])
    layout = LayoutResult(positions={"Q1###a": (0.0, 1.0), "Q2###b": (1.0, 0.0)})
    partition = Partition(assignment={"Q1###a": 1, "Q2###b": 1}, cluster_count=1)
    infos = [ClusterInfo(cluster_id=1, name="Pair", citation_score=2.5, publication_count=4)]
    return to_vosviewer(g, layout, partition, infos)


def test_two_node_document():
    doc = small_doc()
    net = doc["network"]
    assert len(net["items"]) == 2
    assert len(net["links"]) == 1
    assert net["links"][0] == {"source_id": "Q1###a", "target_id": "Q2###b", "strength": 17.0}
    item = net["items"][0]
    assert item["weights"] == {"Links": 1, "Total link strength": 17.0}
    assert item["scores"] == {"Citation score": 2.5}


def test_cluster_label_propagated():
    g = make_graph([("a###a", "b###b", 1.0), ("c###c", "d###d", 1.0)])
    layout = LayoutResult(positions={n: (0.0, 0.0) for n in g.nodes})
    partition = Partition(
        assignment={"a###a": 1, "b###b": 1, "c###c": 2, "d###d": 2}, cluster_count=2
    )
    infos = [
        ClusterInfo(1, name="First"),
        ClusterInfo(2, name="Soil Carbon and Climate Change"),
    ]
    doc = to_vosviewer(g, layout, partition, infos)
    assert doc["network"]["clusters"][1] == {
        "cluster": 2,
        "label": "Soil Carbon and Climate Change",
    }


def test_serialize_roundtrip():
    doc = small_doc()
    assert json.loads(serialize(doc)) == doc


def test_missing_coverage_rejected():
    g = make_graph([("a###a", "b###b", 1.0)])
    layout = LayoutResult(positions={"a###a": (0.0, 0.0)})
    partition = Partition(assignment={"a###a": 1, "b###b": 1}, cluster_count=1)
    with pytest.raises(ExportError, match="b###b"):
        to_vosviewer(g, layout, partition, [])


def test_validate_accepts_engine_output():
    assert validate(small_doc()) == []
    assert validate(serialize(small_doc())) == []


def test_validate_unknown_link_endpoint():
    doc = small_doc()
    doc["network"]["links"].append({"source_id": "ghost", "target_id": "Q1###a", "strength": 1})
    violations = validate(doc)
    assert any("ghost" in v for v in violations)


def test_validate_cluster_contiguity():
    doc = small_doc()
    doc["network"]["items"][0]["cluster"] = 3
    violations = validate(doc)
    assert any("contiguous" in v for v in violations)


def test_validate_non_finite_coordinate():
    doc = small_doc()
    doc["network"]["items"][0]["x"] = float("nan")
    assert any("non-finite" in v for v in validate(doc))


def test_validate_not_json():
    assert validate("{{") != []
