import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import diagrams
from skeincross import catalog
from skeincross import diagram as dg
from skeincross.diagram import (
    UNKNOT,
    DiagramError,
    LongDiagram,
    NotACrossing,
    NotADoublePoint,
    Vertex,
    add_kink,
    canonical_form,
    change_crossing,
    connected_sum,
    diagram_from_json,
    diagram_to_json,
    faces,
    framing,
    from_closed_pd,
    from_pd,
    make_singular,
    mirror,
    resolve,
    reverse,
    validate,
    whitney_index,
    writhe,
)

# [TRIVIAL] validation


def test_unknot_is_valid():
    assert validate(UNKNOT).ok
    assert len(UNKNOT) == 0


def test_catalog_entries_are_valid():
    for name in catalog.names():
        assert validate(catalog.get(name).diagram).ok, name


def test_trefoil_is_valid(trefoil):
    # [DERIVED: hand-checked PD code]
    assert validate(trefoil).ok
    assert len(trefoil) == 3


@pytest.mark.parametrize(
    "d, reason",
    [
        (LongDiagram(3, (Vertex("crossing", (0, 1, 2, 1)),)), "slot 2"),
        (LongDiagram(3, (Vertex("crossing", (0, 2, 1, 2)),)), "multiplicity"),
        (LongDiagram(5, (Vertex("crossing", (0, 1, 1, 2)),)), "edge count"),
        (LongDiagram(3, (Vertex("triple", (0, 2, 1, 1)),)), "unknown kind"),
        (LongDiagram(0, ()), "at least 1"),
    ],
)
def test_invalid_diagrams_are_rejected(d, reason):
    rep = validate(d)
    assert not rep.ok
    assert reason in rep.reason


def test_non_planar_rotation_is_rejected():
    # a valid 3_1 with two slots of one vertex swapped loses planarity
    t = catalog.get("3_1").diagram
    v = t.vertices[1]
    e = v.ends
    bad = t.replace_vertex(1, Vertex("crossing", (e[0], e[3], e[2], e[1])))
    assert not validate(bad).ok


def test_faces_satisfy_euler(trefoil, fig8):
    for d in (UNKNOT, trefoil, fig8, catalog.get("4_1#6_3").diagram):
        assert len(d) + 1 - d.n_edges + len(faces(d)) == 2


# writhe and Whitney index


def test_writhe_anchors(trefoil, fig8):
    # [PAPER: "3_1, w=3" and "4_1, w= 0"]
    assert writhe(trefoil) == 3
    assert writhe(fig8) == 0


def test_whitney_anchors(trefoil, fig8):
    # [PAPER: "n=1" for 3_1 and "n=0" for 4_1]
    assert whitney_index(trefoil) == 1
    assert whitney_index(fig8) == 0


def test_kink_framings():
    # [TRIVIAL] one curl: writhe is its sign, Whitney index its turn
    for sign in (1, -1):
        for turn in (1, -1):
            k = add_kink(UNKNOT, 0, sign, turn)
            assert framing(k) == dg.FramingData(sign, turn)


@given(diagrams(), st.integers(0, 30), st.sampled_from([1, -1]), st.sampled_from([1, -1]))
def test_add_kink_shifts_framing(d, e, sign, turn):
    # [DERIVED: a curl adds its own sign and turn]
    e = e % d.n_edges
    k = add_kink(d, e, sign, turn)
    assert validate(k).ok
    assert framing(k) == dg.FramingData(writhe(d) + sign, whitney_index(d) + turn)


@given(diagrams())
def test_writhe_matches_oracle(d):
    # [DERIVED: signs recomputed from slot geometry]
    assert writhe(d) == oracle.writhe(d)


@given(diagrams())
def test_whitney_ignores_crossing_data(d):
    # the index belongs to the plane curve: mirror and crossing changes keep it
    n = whitney_index(d)
    assert whitney_index(mirror(d)) == n
    for c in d.crossing_ids():
        assert whitney_index(change_crossing(d, c)) == n
        assert whitney_index(make_singular(d, c)) == n


@given(diagrams(), diagrams())
def test_connected_sum_is_additive(d1, d2):
    s = connected_sum(d1, d2)
    assert validate(s).ok
    assert framing(s) == dg.FramingData(writhe(d1) + writhe(d2), whitney_index(d1) + whitney_index(d2))


# operations


def test_mirror_negates_writhe(trefoil):
    m = mirror(trefoil)
    assert writhe(m) == -3
    assert mirror(m).key() == trefoil.key()


def test_reverse_is_an_involution(trefoil, fig8):
    for d in (trefoil, fig8):
        r = reverse(d)
        assert validate(r).ok
        assert writhe(r) == writhe(d)
        assert reverse(r).key() == d.key()


def test_make_singular_and_resolve(trefoil):
    s = make_singular(trefoil, 0)
    assert s.n_double == 1 and validate(s).ok
    # [DERIVED: catalog construction] resolving positively gives 3_1 back
    assert resolve(s, 0, 1).key() == trefoil.key()
    assert writhe(resolve(s, 0, -1)) == 1


def test_resolve_and_make_singular_errors(trefoil):
    with pytest.raises(NotADoublePoint):
        resolve(trefoil, 0, 1)
    s = make_singular(trefoil, 0)
    with pytest.raises(NotACrossing):
        make_singular(s, 0)
    with pytest.raises(ValueError):
        resolve(s, 0, 0)


def test_change_crossing_twice_is_identity(fig8):
    for c in fig8.crossing_ids():
        once = change_crossing(fig8, c)
        assert writhe(once) == writhe(fig8) - 2 * fig8.vertices[c].sign
        assert change_crossing(once, c).key() == fig8.key()


def test_canonical_form_of_relabelled_copy(fig8):
    # [TRIVIAL] relabelled 4_1 has the catalog canonical form
    relabel = {e: 100 + 7 * e for e in range(fig8.n_edges)}
    pd = [(v.kind, [relabel[e] for e in v.ends]) for v in reversed(fig8.vertices)]
    again = from_pd(pd)
    assert canonical_form(again).key() == canonical_form(fig8).key()


def test_from_closed_pd_cut_changes_whitney_not_writhe():
    pd = [(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)]
    ws = {writhe(from_closed_pd(pd, cut)) for cut in range(1, 9)}
    assert ws == {0}


def test_from_pd_errors():
    with pytest.raises(DiagramError, match="4 ends"):
        from_pd([("crossing", [1, 2, 3])])
    with pytest.raises(DiagramError, match="multiplicity"):
        from_pd([("crossing", [1, 2, 3, 4])])


# json


@given(diagrams())
def test_json_round_trip(d):
    text = json.dumps(diagram_to_json(d))
    assert diagram_from_json(json.loads(text)) == d


def test_json_errors_name_the_vertex():
    with pytest.raises(DiagramError, match="vertex 0"):
        diagram_from_json({"schema": 1, "edges": 3, "vertices": [{"kind": "crossing", "ends": [0, 1, 2]}]})
    with pytest.raises(DiagramError, match="schema"):
        diagram_from_json({"schema": 99, "edges": 1, "vertices": []})
    with pytest.raises(DiagramError):
        diagram_from_json({"schema": 1, "edges": 3, "vertices": [{"kind": "crossing", "ends": [0, 2, 1, 2]}]})


def test_json_relabel_option(fig8):
    obj = {
        "schema": 1,
        "relabel": True,
        "vertices": [{"kind": v.kind, "ends": [e + 10 for e in v.ends]} for v in fig8.vertices],
    }
    assert diagram_from_json(obj).key() == fig8.key()
