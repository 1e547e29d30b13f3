import itertools
import json

import pytest
from hypothesis import given, settings

from arcshift.gauss import canonical_code, parse, render
from arcshift.moves import MoveInstance, MoveKind, NotApplicable, forbidden, forbidden_detour
from arcshift.oracle import enumerate_diagrams
from arcshift.planar import (
    Crossing,
    DegenerateRegion,
    PlanarDiagram,
    PlanarError,
    apply_ras,
    boundary_arcs,
    ras_for_forbidden,
    ras_moves,
    ras_orders_agree,
    ras_representative,
    read_gauss,
    realize,
    region_arc_shift,
    region_arc_shift_steps,
    regions,
)

from test_gauss import diagrams

TREFOIL = "O1-,O2-,U1-,U2-"


def test_trefoil_realization():
    p = realize(parse(TREFOIL))
    p.validate()
    kinds = sorted(v.kind for v in p.vertices)
    assert kinds == ["classical", "classical", "virtual"]
    assert p.counts() == (3, 6, 5)
    assert len(regions(p)) == 5
    assert read_gauss(p) == parse(TREFOIL)


def test_empty_diagram_is_a_circle():
    p = realize(parse(""))
    assert p.counts() == (0, 0, 2)
    assert len(regions(p)) == 2
    assert read_gauss(p) == parse("")
    assert region_arc_shift(p, regions(p)[0]) == (parse(""), 0)


def _figure_eight_curve():
    # one virtual self-crossing: leave through slot 2, come back in at slot 1,
    # leave through slot 3, close up at slot 0
    return PlanarDiagram([Crossing("virtual")], [(0, 1, 2, 3)], {2: 1, 1: 2, 3: 0, 0: 3}, 0)


def test_virtual_only_diagram():
    p = _figure_eight_curve()
    p.validate()
    assert p.counts() == (1, 2, 3)
    assert read_gauss(p) == parse("")
    for r in regions(p):
        try:
            assert region_arc_shift(p, r) == (parse(""), 0)
        except DegenerateRegion:
            pass


def test_validate_rejects_broken_maps():
    with pytest.raises(PlanarError):
        PlanarDiagram([Crossing("virtual")], [(0, 1, 2, 3)], {0: 0, 1: 2, 2: 1, 3: 3}, 0).validate()
    # two disjoint circles through their own virtual crossings
    two = PlanarDiagram(
        [Crossing("virtual"), Crossing("virtual")],
        [(0, 1, 2, 3), (4, 5, 6, 7)],
        {2: 1, 1: 2, 3: 0, 0: 3, 6: 5, 5: 6, 7: 4, 4: 7},
        0,
    )
    with pytest.raises(PlanarError):
        two.validate()
    p = realize(parse(TREFOIL)).to_json()
    v = next(v for v in p["vertices"] if v["kind"] == "classical")
    v["sign"] = -v["sign"]
    with pytest.raises(PlanarError):
        PlanarDiagram.from_json(p).validate()


def test_json_roundtrip():
    p = realize(parse("O1+,U2-,O3+,U1+,O2-,U3+"))
    data = json.loads(json.dumps(p.to_json()))
    assert set(data) >= {"vertices", "edges", "basepoint"}
    assert all(len(v["darts"]) == 4 for v in data["vertices"])
    assert sorted(d for e in data["edges"] for d in e) == list(range(4 * len(data["vertices"])))
    q = PlanarDiagram.from_json(data)
    assert q == p
    assert read_gauss(q) == read_gauss(p)


def test_roundtrip_and_euler_three_chord():
    for d in enumerate_diagrams(3):
        p = realize(d)
        p.validate()
        v, e, f = p.counts()
        assert e == 2 * v and v - e + f == 2
        assert read_gauss(p) == d


@settings(max_examples=60, deadline=None)
@given(diagrams(max_n=6))
def test_roundtrip_random(d):
    p = realize(d)
    p.validate()
    assert read_gauss(p) == d


def test_region_boundaries_cover_each_dart_once():
    for d in enumerate_diagrams(2):
        p = realize(d)
        darts = [x for r in regions(p) for x in r.boundary]
        assert sorted(darts) == p.darts()


def test_boundary_arcs_match_edges_three_chord():
    for d in enumerate_diagrams(3, canonical_only=True):
        p = realize(d)
        for r in regions(p):
            try:
                arcs = boundary_arcs(p, r)
            except DegenerateRegion:
                continue
            assert len(arcs) == len(r.boundary)
            for a in arcs:
                assert a.ends == (p.vertex_of(a.edge[0]), p.vertex_of(a.edge[1]))
                assert p.pairing[a.edge[0]] == a.edge[1]


def test_bigon_has_two_arcs():
    p = realize(parse("O1+,O2-,U2-,U1+"))
    bigons = [r for r in regions(p) if len(r.boundary) == 2]
    assert bigons
    assert all(len(boundary_arcs(p, r)) == 2 for r in bigons)


def test_triangle_gadget_matches_forbidden_move():
    d = parse("O1+,O2+,U1+,U2+")
    p, r = ras_representative(d, 2)
    out, steps = region_arc_shift_steps(p, r)
    kinds = sorted(k.value for _, k in steps)
    assert kinds == ["ArcShiftHH", "ArcShiftSign", "ArcShiftSign"]
    assert out == forbidden(d, 2)[0]
    assert ras_for_forbidden(d, 2) == (forbidden(d, 2)[0], 1)


def test_ras_reproduces_forbidden_moves_three_chord():
    for d in enumerate_diagrams(3):
        for i in range(len(d.word)):
            a, b = d.word[i], d.word[(i + 1) % len(d.word)]
            if a.chord == b.chord:
                with pytest.raises(NotApplicable):
                    ras_for_forbidden(d, i)
                continue
            want = forbidden(d, i)[0] if a.role is b.role else forbidden_detour(d, i)[0]
            assert ras_for_forbidden(d, i) == (want, 1)


def test_ras_twice_returns_the_diagram():
    for d in enumerate_diagrams(2):
        for m in ras_moves(d):
            if m.kind is MoveKind.RAS_ADJACENT:
                assert apply_ras(apply_ras(d, m), m) == d


def test_ras_orders_agree_three_chord():
    checked = 0
    for d in enumerate_diagrams(3, canonical_only=True):
        p = realize(d)
        for r in regions(p):
            try:
                ok = ras_orders_agree(p, r)
            except DegenerateRegion:
                continue
            if ok is not None:
                assert ok
                checked += 1
    assert checked > 1000


def test_region_moves_apply():
    d = parse("O1+,U2-,O3+,U1+,O2-,U3+")
    for m in ras_moves(d):
        out = apply_ras(d, m)
        assert parse(render(out)) == out
    with pytest.raises(NotApplicable):
        apply_ras(d, MoveInstance(MoveKind.RAS_REGION, (99,)))


def test_order_must_be_a_permutation():
    p, r = ras_representative(parse(TREFOIL), 0)
    with pytest.raises(ValueError):
        region_arc_shift_steps(p, r, order=[0, 0, 1])
