import pytest
from hypothesis import given, settings

from arcshift.gauss import is_parallel, parse
from arcshift.invariants import odd_writhe
from arcshift.moves import MoveFamily, MoveInstance, MoveKind, apply, enumerate_moves, move_cost, parse_move
from arcshift.oracle import enumerate_diagrams
from arcshift.search import (
    InvalidWitness,
    SearchConfig,
    SearchStatus,
    Verdict,
    constructive_unknot,
    forbidden_to_ras,
    is_trivial_bounded,
    lower_bound,
    replay,
    unknotting_search,
)

from test_gauss import diagrams

TREFOIL = "O1-,O2-,U1-,U2-"


def test_trefoil_arc_shift_number():
    r = unknotting_search(parse(TREFOIL), SearchConfig(MoveFamily.ARC_SHIFT, 4))
    assert r.status is SearchStatus.EXACT
    assert (r.lower_bound, r.upper_bound) == (1, 1)
    assert [m.kind for m in r.witness] == [MoveKind.ARC_SHIFT_HH]
    assert is_parallel(replay(parse(TREFOIL), r.witness))


def test_trefoil_forbidden_number():
    r = unknotting_search(parse(TREFOIL), SearchConfig(MoveFamily.FORBIDDEN, 4))
    assert r.status is SearchStatus.EXACT and r.upper_bound == 1
    assert [m.kind for m in r.witness] == [MoveKind.FH]


def test_trefoil_ras_number():
    r = unknotting_search(parse(TREFOIL), SearchConfig(MoveFamily.REGION_ARC_SHIFT))
    assert r.upper_bound == 1 and r.status is SearchStatus.EXACT
    assert is_parallel(replay(parse(TREFOIL), r.witness))


@pytest.mark.parametrize("family", [MoveFamily.ARC_SHIFT, MoveFamily.FORBIDDEN, MoveFamily.REGION_ARC_SHIFT])
def test_parallel_input_costs_nothing(family):
    for code in ("", "O1+,U1-".replace("-", "+"), "O1+,O2-,U2-,U1+"):
        r = unknotting_search(parse(code), SearchConfig(family))
        assert r.status is SearchStatus.EXACT and r.upper_bound == 0 and r.witness == []


def test_report_json_keys():
    r = unknotting_search(parse(TREFOIL), SearchConfig(MoveFamily.ARC_SHIFT, 4))
    assert r.to_json() == {
        "family": "arcshift",
        "status": "exact",
        "lower_bound": 1,
        "upper_bound": 1,
        "witness": ["as:2"] if r.witness[0].locus == (2,) else [r.witness[0].spec],
        "states_explored": r.states_explored,
        "max_chords": 4,
    }


def test_budget_exhaustion_is_inconclusive():
    d = parse("O1+,U2+,O3+,U1+,O2+,U3+")
    r = unknotting_search(d, SearchConfig(MoveFamily.ARC_SHIFT, max_states=1))
    assert r.status is SearchStatus.INCONCLUSIVE and r.upper_bound is None
    assert r.states_explored == 1


def test_max_cost_cuts_search():
    d = parse("O1+,O2+,O3+,O4+,U1+,U2+,U3+,U4+")
    r = unknotting_search(d, SearchConfig(MoveFamily.ARC_SHIFT, max_cost=1))
    assert r.upper_bound is None and r.lower_bound == 2


def test_config_validation():
    d = parse(TREFOIL)
    with pytest.raises(ValueError):
        SearchConfig(max_chords=1).resolve(d)
    with pytest.raises(ValueError):
        SearchConfig(max_states=0).resolve(d)
    with pytest.raises(ValueError):
        SearchConfig(max_cost=-1).resolve(d)
    assert SearchConfig().resolve(d).max_chords == 4


def test_lower_bounds():
    d = parse("O1+,O2+,O3+,O4+,U1+,U2+,U3+,U4+")
    assert lower_bound(d, MoveFamily.ARC_SHIFT) == 2
    assert lower_bound(d, MoveFamily.FORBIDDEN) == 2
    assert lower_bound(d, MoveFamily.REGION_ARC_SHIFT) == 1
    assert lower_bound(parse("O1+,U2+,O3+,U1+,O2+,U3+"), MoveFamily.REGION_ARC_SHIFT) == 0


def test_paid_moves_change_j_by_at_most_two_four_chord():
    # admissibility of the heuristic; free moves leave J alone
    for d in enumerate_diagrams(4, canonical_only=True):
        j = odd_writhe(d)
        for fam in (MoveFamily.ARC_SHIFT, MoveFamily.FORBIDDEN):
            for m in enumerate_moves(d, fam, include_detour=True):
                assert abs(odd_writhe(apply(d, m)) - j) <= 2 * move_cost(m)


def test_triviality_verdicts():
    assert is_trivial_bounded(parse("")).verdict is Verdict.TRIVIAL
    v = is_trivial_bounded(parse(TREFOIL))
    assert v.verdict is Verdict.NONTRIVIAL and v.odd_writhe == -2
    v = is_trivial_bounded(parse("O1+,O2-,U2-,U1+"))
    assert v.verdict is Verdict.TRIVIAL
    v = is_trivial_bounded(parse("O1+,U2-,O2-,U1+"))
    assert v.verdict is Verdict.TRIVIAL and v.witness == ()
    v = is_trivial_bounded(parse("O2+,O1-,U2+,U1-"))
    assert v.verdict is Verdict.TRIVIAL
    assert is_parallel(replay(parse("O2+,O1-,U2+,U1-"), v.witness))


def test_triviality_unknown_for_classical_trefoil():
    v = is_trivial_bounded(parse("O1+,U2+,O3+,U1+,O2+,U3+"), SearchConfig(max_states=500))
    assert v.verdict is Verdict.UNKNOWN


def test_constructive_examples():
    w, count = constructive_unknot(parse(TREFOIL))
    assert count == 1 and is_parallel(replay(parse(TREFOIL), w))
    assert constructive_unknot(parse("O1+,O2+,U2+,U1+")) == ([], 0)


@settings(max_examples=60, deadline=None)
@given(diagrams(max_n=6))
def test_constructive_always_unknots(d):
    w, count = constructive_unknot(d)
    assert count == len(w) <= d.n * (d.n - 1)
    assert is_parallel(replay(d, w))


def test_search_no_worse_than_constructive_three_chord():
    for d in enumerate_diagrams(3, canonical_only=True):
        _, count = constructive_unknot(d)
        r = unknotting_search(d, SearchConfig(MoveFamily.ARC_SHIFT, d.n + 1))
        assert r.upper_bound is not None and r.upper_bound <= count
        assert is_parallel(replay(d, r.witness))


def test_forbidden_to_ras_examples():
    d = parse(TREFOIL)
    r = unknotting_search(d, SearchConfig(MoveFamily.FORBIDDEN, 4))
    ras = forbidden_to_ras(d, r.witness)
    assert [m.kind for m in ras] == [MoveKind.RAS_ADJACENT]
    assert is_parallel(replay(d, ras))
    assert forbidden_to_ras(parse(""), []) == []


def test_forbidden_to_ras_rejects_bad_witnesses():
    d = parse(TREFOIL)
    with pytest.raises(InvalidWitness):
        forbidden_to_ras(d, [MoveInstance(MoveKind.FT, (1,))])
    with pytest.raises(InvalidWitness):
        forbidden_to_ras(d, [MoveInstance(MoveKind.ARC_SHIFT_HH, (2,))])
    with pytest.raises(InvalidWitness):
        forbidden_to_ras(d, [])
    with pytest.raises(InvalidWitness):
        replay(d, [MoveInstance(MoveKind.R1_DELETE, (1,))])


def test_search_is_deterministic():
    d = parse("O1-,O2+,U1-,O3+,U2+,U3+")
    a = unknotting_search(d, SearchConfig(MoveFamily.FORBIDDEN))
    b = unknotting_search(d, SearchConfig(MoveFamily.FORBIDDEN))
    assert a.to_json() == b.to_json()


def test_connected_sum_of_virtual_trefoils_has_ras_below_forbidden():
    # one region arc shift on a realized region unknots it, while every forbidden
    # move moves J by at most 2 and J = 4
    d = parse("O1+,O2+,U1+,U2+,O3+,O4+,U3+,U4+")
    specs = ["r1i:1:-:OU", "r1i:7:-:OU", "rasr:1", "r2d:1:5", "r2d:3:6"]
    state = d
    for s in specs:
        state = apply(state, parse_move(s, state))
    assert is_parallel(state)
    assert lower_bound(d, MoveFamily.FORBIDDEN) == 2
    assert lower_bound(d, MoveFamily.REGION_ARC_SHIFT) == 1
    f = unknotting_search(d, SearchConfig(MoveFamily.FORBIDDEN))
    assert f.status is SearchStatus.EXACT and f.upper_bound == 2
