import pytest
from hypothesis import given, settings, strategies as st

from arcshift.gauss import (
    HEAD,
    TAIL,
    BadToken,
    Endpoint,
    GaussDiagram,
    GaussError,
    OddOccurrence,
    Parity,
    SignMismatch,
    UnknownChord,
    canonical_code,
    canonicalize,
    interleaves,
    is_parallel,
    parity,
    parity_table,
    parse,
    render,
)
from arcshift.oracle import enumerate_diagrams

TREFOIL = "O1-,O2-,U1-,U2-"


@st.composite
def diagrams(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    slots = draw(st.permutations(list(range(2 * n))))
    word = [None] * (2 * n)
    for c in range(1, n + 1):
        a, b = slots[2 * c - 2], slots[2 * c - 1]
        word[a] = Endpoint(c, TAIL)
        word[b] = Endpoint(c, HEAD)
    signs = {c: draw(st.sampled_from((1, -1))) for c in range(1, n + 1)}
    return GaussDiagram(word, signs)


def test_parse_empty():
    d = parse("")
    assert d.n == 0 and d.word == ()


def test_parse_trefoil():
    d = parse(TREFOIL)
    assert [str(e) for e in d.word] == ["T1", "T2", "H1", "H2"]
    assert d.signs == {1: -1, 2: -1}


@pytest.mark.parametrize(
    "code,exc,index",
    [
        ("O1+,U1-", SignMismatch, 2),
        ("O1+,O1+", OddOccurrence, 2),
        ("O1+", OddOccurrence, None),
        ("O1+,X1+", BadToken, 2),
        ("o1+,U1+", BadToken, 1),
        ("O01+,U1+", BadToken, 1),
        ("O0+,U0+", BadToken, 1),
        ("O1+,,U1+", BadToken, 2),
        ("O1 +,U1+", BadToken, 1),
    ],
)
def test_parse_errors(code, exc, index):
    with pytest.raises(exc) as info:
        parse(code)
    assert isinstance(info.value, GaussError)
    assert getattr(info.value, "index", None) == index


def test_parse_tolerates_space_after_comma_and_newline():
    assert parse("O1-, O2-,\tU1-,U2-\n") == parse(TREFOIL)


def test_render_examples():
    assert render(parse("")) == ""
    assert render(GaussDiagram([(1, TAIL), (2, TAIL), (1, HEAD), (2, HEAD)], {1: -1, 2: -1})) == TREFOIL


def test_constructor_validates():
    with pytest.raises(OddOccurrence):
        GaussDiagram([(1, TAIL), (1, TAIL)], {1: 1})
    with pytest.raises(GaussError):
        GaussDiagram([(1, TAIL), (1, HEAD)], {1: 1, 2: 1})
    with pytest.raises(GaussError):
        GaussDiagram([(1, TAIL), (1, HEAD)], {1: 0})


@given(diagrams())
def test_render_parse_roundtrip(d):
    assert parse(render(d)) == d
    assert render(parse(render(d))) == render(d)


def test_roundtrip_all_three_chord():
    for d in enumerate_diagrams(3):
        assert parse(render(d)) == d


def test_canonical_rotation_examples():
    assert canonicalize(parse("U2-,O1-,O2-,U1-")) == canonicalize(parse(TREFOIL))
    assert canonicalize(parse("")) == parse("")


def test_canonical_constant_on_rotations_three_chord():
    for d in enumerate_diagrams(3):
        code = canonical_code(d)
        for r in range(len(d.word)):
            assert canonical_code(d.rotate(r)) == code


@given(diagrams(), st.integers(0, 20))
def test_canonical_idempotent_and_rotation_invariant(d, r):
    c = canonicalize(d)
    assert canonicalize(c) == c
    assert canonicalize(d.rotate(r)) == c
    assert render(c) == canonical_code(d)


@given(diagrams(max_n=4))
def test_canonical_is_least_rotation(d):
    # brute force over every rotation, relabelling by first appearance
    best = None
    for r in range(max(1, len(d.word))):
        w = d.rotate(r)
        order = {c: k for k, c in enumerate(w.chords(), start=1)}
        code = render(w.relabel(order))
        best = code if best is None or code < best else best
    assert canonical_code(d) == best


def test_interleaves_examples():
    d = parse("O1+,O2+,U1+,U2+")
    assert interleaves(d, 1, 2)
    assert not interleaves(parse("O1+,O2+,U2+,U1+"), 1, 2)
    with pytest.raises(UnknownChord):
        interleaves(d, 1, 7)
    with pytest.raises(ValueError):
        interleaves(d, 1, 1)


def test_interleaves_symmetric_four_chord():
    for d in enumerate_diagrams(4, include_signs=False):
        for a in range(1, 5):
            for b in range(a + 1, 5):
                assert interleaves(d, a, b) == interleaves(d, b, a)


def test_parity_examples():
    d = parse(TREFOIL)
    assert parity(d, 1) is Parity.ODD and parity(d, 2) is Parity.ODD
    nested = parse("O1+,O2+,U2+,U1+")
    assert parity(nested, 1) is Parity.EVEN and parity(nested, 2) is Parity.EVEN
    assert parity(parse("O1+,U1+"), 1) is Parity.EVEN
    with pytest.raises(UnknownChord):
        parity(d, 3)


@given(diagrams())
def test_parity_table_matches_parity(d):
    table = parity_table(d)
    assert table == {c: parity(d, c) for c in d.chords()}


@given(diagrams())
def test_is_parallel_matches_pairwise_check(d):
    cs = d.chords()
    expect = not any(interleaves(d, a, b) for i, a in enumerate(cs) for b in cs[i + 1:])
    assert is_parallel(d) == expect


def test_is_parallel_examples():
    assert is_parallel(parse(""))
    assert not is_parallel(parse(TREFOIL))
    assert is_parallel(parse("O1+,O2+,U2+,U1+"))


@given(diagrams())
@settings(max_examples=50)
def test_each_chord_has_one_head_and_one_tail(d):
    for c in d.chords():
        t, h = d.positions(c)
        assert d.word[t] == Endpoint(c, TAIL) and d.word[h] == Endpoint(c, HEAD)


def test_diagrams_are_hashable_values():
    a, b = parse(TREFOIL), parse(TREFOIL)
    assert a == b and hash(a) == hash(b)
    assert len({a, b, parse("")}) == 2
