import json

import pytest

from replhom.quiver import (CycleFound, Disconnected, Quiver, QuiverError,
                            ReplicationSpec, dynkin_type, grothendieck_rank,
                            load_quiver, replicated_vertex_set,
                            validate_hereditary)


def test_tree_quiver_ok(a2):
    validate_hereditary(a2)


def test_loop_rejected():
    with pytest.raises(CycleFound):
        Quiver(["a"], [("l", "a", "a")])


def test_two_cycle_rejected():
    with pytest.raises(CycleFound) as err:
        Quiver(["a", "b"], [("f", "a", "b"), ("g", "b", "a")])
    assert set(err.value.arrows) == {"f", "g"}


def test_kronecker_ok(kronecker):
    validate_hereditary(kronecker)


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        Quiver(["a", "b", "c"], [("f", "a", "b")])


def test_duplicate_ids_rejected():
    with pytest.raises(QuiverError):
        Quiver(["a", "a"], [])
    with pytest.raises(QuiverError):
        Quiver(["a", "b"], [("f", "b", "a"), ("f", "b", "a")])


def test_validation_order_independent():
    q1 = Quiver(["a", "b", "c"], [("x", "b", "a"), ("y", "c", "b")])
    q2 = Quiver(["c", "a", "b"], [("y", "c", "b"), ("x", "b", "a")])
    assert q1.vertices == q2.vertices
    assert q1.arrows == q2.arrows


def test_grothendieck_rank(a2, a3, a4):
    assert grothendieck_rank(ReplicationSpec(a2, 1)) == 4
    assert grothendieck_rank(ReplicationSpec(a4, 2)) == 12
    assert grothendieck_rank(ReplicationSpec(a3, 3)) == 12


def test_replicated_vertices_a2(a2):
    vs = replicated_vertex_set(ReplicationSpec(a2, 1))
    assert [v.label for v in vs] == ["a_0", "b_0", "a_1", "b_1"]


def test_replicated_vertices_three_vertex(two_sinks):
    vs = replicated_vertex_set(ReplicationSpec(two_sinks, 2))
    assert len(vs) == 9
    assert vs[0].label == "a_0" and vs[-1].label == "c_2"


def test_replicated_vertices_a1(a1):
    vs = replicated_vertex_set(ReplicationSpec(a1, 1))
    assert [v.label for v in vs] == ["a_0", "a_1"]


def test_vertex_count_equals_rank(a1, a2, a3, a4, d4):
    for q in (a1, a2, a3, a4, d4):
        for m in (1, 2, 3):
            spec = ReplicationSpec(q, m)
            assert len(replicated_vertex_set(spec)) == grothendieck_rank(spec)


def test_m_must_be_positive(a2):
    with pytest.raises(ValueError):
        ReplicationSpec(a2, 0)


def test_dynkin_classifier(a2, a3, a4, d4, two_sinks, kronecker):
    assert dynkin_type(a2) == ("A", 2)
    assert dynkin_type(a3) == ("A", 3)
    assert dynkin_type(a4) == ("A", 4)
    assert dynkin_type(d4) == ("D", 4)
    assert dynkin_type(two_sinks) == ("A", 3)
    assert dynkin_type(kronecker) == "kronecker"
    wild = Quiver(["a", "b"], [("x", "b", "a"), ("y", "b", "a"),
                               ("z", "b", "a")])
    assert dynkin_type(wild) is None
    e6 = Quiver(["1", "2", "3", "4", "5", "6"],
                [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"),
                 ("d", "4", "5"), ("e", "6", "3")])
    assert dynkin_type(e6) == ("E", 6)


def test_paths_deterministic(a3):
    p = a3.paths()
    assert p[("c", "a")] == (("y", "x"),)
    assert p[("a", "a")] == ((),)
    assert p[("a", "c")] == ()


def test_json_loading(tmp_path, a2):
    path = tmp_path / "q.json"
    path.write_text(json.dumps(a2.to_dict()))
    q = load_quiver(path)
    assert q.vertices == a2.vertices and q.arrows == a2.arrows
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(QuiverError):
        load_quiver(bad)
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"vertices": ["a"]}))
    with pytest.raises(QuiverError):
        load_quiver(missing)
