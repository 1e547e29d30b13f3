"""Local moves on Gauss diagrams.

Every move here is a pure rewrite of a :class:`GaussDiagram`.  Positions are
indices into the word; an adjacent pair at position ``i`` is ``(i, i+1 mod 2n)``.

Arc shifts come in five shapes.  Four of them (HH, TT, HT, TH, named by the
roles read at ``(i, i+1)``) transpose two adjacent endpoints of distinct
chords and negate both signs; the fifth (``ArcShiftSign``) negates one sign
and leaves the word alone.  Forbidden moves transpose same-role neighbours
without touching signs, and the forbidden detour does the same for a
head/tail pair.

Move spec mini-language (used by the CLI and in search witnesses)::

    as:<i>  ass:<chord>  f:<i>  fd:<i>  r1d:<chord>  r1i:<pos>:<sign>:<OU|UO>
    r2d:<a>:<b>  r2i:<posA>:<posB>:<variant>  r3:<i>:<j>:<k>[:<orient>]
    delta:<i>:<j>:<k>  ras:<i>  rasr:<region>

``r2i`` variants are three characters: ``T``/``H`` (which pair lands at
posA), ``s``/``o`` (same or opposite chord order at posB), and the sign of
the first inserted chord.  ``<orient>`` for ``r3`` is the triangle
orientation ``+``/``-`` reported by :func:`triangle_orientation`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .gauss import (
    HEAD,
    TAIL,
    Endpoint,
    GaussDiagram,
    Role,
    UnknownChord,
)

__all__ = [
    "MoveKind",
    "MoveFamily",
    "MoveInstance",
    "NotApplicable",
    "SameChord",
    "RoleMismatch",
    "OutOfRange",
    "arc_shift_adjacent",
    "arc_shift_sign",
    "forbidden",
    "forbidden_detour",
    "reidemeister",
    "delta_move",
    "delta_via_arcshifts",
    "r3_via_arcshifts",
    "triangle_orientation",
    "enumerate_moves",
    "apply",
    "move_cost",
    "parse_move",
    "R2_VARIANTS",
]


class NotApplicable(ValueError):
    """The move's precondition fails on this diagram."""


class SameChord(NotApplicable):
    pass


class RoleMismatch(NotApplicable):
    pass


class OutOfRange(NotApplicable, IndexError):
    pass


class MoveKind(Enum):
    R1_INSERT = "R1Insert"
    R1_DELETE = "R1Delete"
    R2_INSERT = "R2Insert"
    R2_DELETE = "R2Delete"
    R3 = "R3"
    FH = "Fh"
    FT = "Ft"
    ARC_SHIFT_HH = "ArcShiftHH"
    ARC_SHIFT_TT = "ArcShiftTT"
    ARC_SHIFT_HT = "ArcShiftHT"
    ARC_SHIFT_TH = "ArcShiftTH"
    ARC_SHIFT_SIGN = "ArcShiftSign"
    FORBIDDEN_DETOUR = "ForbiddenDetour"
    DELTA_MOVE = "DeltaMove"
    RAS_ADJACENT = "RegionArcShift"
    RAS_REGION = "RegionArcShiftRealized"


_KIND_ORDER = {k: i for i, k in enumerate(MoveKind)}

ADJACENT_ARC_SHIFTS = frozenset(
    {MoveKind.ARC_SHIFT_HH, MoveKind.ARC_SHIFT_TT, MoveKind.ARC_SHIFT_HT, MoveKind.ARC_SHIFT_TH}
)
ARC_SHIFTS = ADJACENT_ARC_SHIFTS | {MoveKind.ARC_SHIFT_SIGN}
REIDEMEISTER_KINDS = frozenset(
    {MoveKind.R1_INSERT, MoveKind.R1_DELETE, MoveKind.R2_INSERT, MoveKind.R2_DELETE, MoveKind.R3}
)

_ARC_KIND = {
    (HEAD, HEAD): MoveKind.ARC_SHIFT_HH,
    (TAIL, TAIL): MoveKind.ARC_SHIFT_TT,
    (HEAD, TAIL): MoveKind.ARC_SHIFT_HT,
    (TAIL, HEAD): MoveKind.ARC_SHIFT_TH,
}


class MoveFamily(Enum):
    REIDEMEISTER = "reidemeister"
    FORBIDDEN = "forbidden"
    ARC_SHIFT = "arcshift"
    REGION_ARC_SHIFT = "ras"


R2_VARIANTS = tuple(f"{p}{o}{s}" for p in "TH" for o in "so" for s in "+-")


@dataclass(frozen=True)
class MoveInstance:
    kind: MoveKind
    locus: tuple

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.locus)

    @property
    def spec(self) -> str:
        k, loc = self.kind, self.locus
        if k in ADJACENT_ARC_SHIFTS:
            return f"as:{loc[0]}"
        if k is MoveKind.ARC_SHIFT_SIGN:
            return f"ass:{loc[0]}"
        if k in (MoveKind.FH, MoveKind.FT):
            return f"f:{loc[0]}"
        if k is MoveKind.FORBIDDEN_DETOUR:
            return f"fd:{loc[0]}"
        if k is MoveKind.R1_DELETE:
            return f"r1d:{loc[0]}"
        if k is MoveKind.R1_INSERT:
            pos, sign, order = loc
            return f"r1i:{pos}:{'+' if sign > 0 else '-'}:{order}"
        if k is MoveKind.R2_DELETE:
            return f"r2d:{loc[0]}:{loc[1]}"
        if k is MoveKind.R2_INSERT:
            return f"r2i:{loc[0]}:{loc[1]}:{loc[2]}"
        if k is MoveKind.R3:
            base = f"r3:{loc[0]}:{loc[1]}:{loc[2]}"
            return base + (f":{loc[3]}" if len(loc) > 3 else "")
        if k is MoveKind.DELTA_MOVE:
            return f"delta:{loc[0]}:{loc[1]}:{loc[2]}"
        if k is MoveKind.RAS_ADJACENT:
            return f"ras:{loc[0]}"
        if k is MoveKind.RAS_REGION:
            return f"rasr:{loc[0]}"
        raise AssertionError(k)

    def __str__(self) -> str:
        return self.spec


# ---------------------------------------------------------------------------
# primitives


def _check_pos(d: GaussDiagram, i: int) -> int:
    m = len(d.word)
    if m == 0 or not 0 <= i < m:
        raise OutOfRange(f"position {i} outside 0..{m - 1}")
    return (i + 1) % m


def _adjacent_pair(d: GaussDiagram, i: int) -> tuple[Endpoint, Endpoint, int]:
    j = _check_pos(d, i)
    a, b = d.word[i], d.word[j]
    if a.chord == b.chord:
        raise SameChord(f"positions {i} and {j} are both on chord {a.chord}")
    return a, b, j


def _swap(word: tuple[Endpoint, ...], i: int, j: int) -> tuple[Endpoint, ...]:
    w = list(word)
    w[i], w[j] = w[j], w[i]
    return tuple(w)


def arc_shift_adjacent(d: GaussDiagram, i: int) -> tuple[GaussDiagram, MoveKind]:
    """Transpose the endpoints at ``i`` and ``i+1`` and negate both chords' signs."""
    a, b, j = _adjacent_pair(d, i)
    signs = d.signs
    signs[a.chord] = -signs[a.chord]
    signs[b.chord] = -signs[b.chord]
    return GaussDiagram._trusted(_swap(d.word, i, j), signs), _ARC_KIND[a.role, b.role]


def arc_shift_sign(d: GaussDiagram, c: int) -> GaussDiagram:
    return d.with_signs({c: -d.sign(c)})


def forbidden(d: GaussDiagram, i: int) -> tuple[GaussDiagram, MoveKind]:
    a, b, j = _adjacent_pair(d, i)
    if a.role is not b.role:
        raise RoleMismatch(f"roles at {i},{j} differ; not a forbidden move")
    kind = MoveKind.FH if a.role is HEAD else MoveKind.FT
    return GaussDiagram._trusted(_swap(d.word, i, j), d.signs), kind


def forbidden_detour(d: GaussDiagram, i: int) -> tuple[GaussDiagram, int]:
    """Transpose an adjacent head/tail pair; worth two forbidden moves."""
    a, b, j = _adjacent_pair(d, i)
    if a.role is b.role:
        raise RoleMismatch(f"roles at {i},{j} agree; use forbidden()")
    return GaussDiagram._trusted(_swap(d.word, i, j), d.signs), 2


# ---------------------------------------------------------------------------
# Reidemeister moves


def _fresh(d: GaussDiagram, k: int) -> list[int]:
    top = max(d.signs, default=0)
    return [top + 1 + t for t in range(k)]


def _cyc_adjacent(p: int, q: int, m: int) -> bool:
    return (p - q) % m in (1, m - 1)


def _pair_start(p: int, q: int, m: int) -> int:
    # start index i of the adjacent pair {p, q} = {i, i+1 mod m}
    return p if (p + 1) % m == q else q


def _r1_insert(d: GaussDiagram, pos: int, sign: int, order: str) -> GaussDiagram:
    m = len(d.word)
    if not 0 <= pos <= m:
        raise NotApplicable(f"gap {pos} outside 0..{m}")
    if sign not in (1, -1) or order not in ("OU", "UO"):
        raise NotApplicable("R1 insertion needs sign +-1 and order OU or UO")
    (c,) = _fresh(d, 1)
    pair = (Endpoint(c, TAIL), Endpoint(c, HEAD))
    if order == "UO":
        pair = pair[::-1]
    signs = d.signs
    signs[c] = sign
    return GaussDiagram._trusted(d.word[:pos] + pair + d.word[pos:], signs)


def _r1_delete(d: GaussDiagram, c: int) -> GaussDiagram:
    t, h = d.positions(c)
    if not _cyc_adjacent(t, h, len(d.word)):
        raise NotApplicable(f"chord {c} is not a kink")
    signs = d.signs
    del signs[c]
    return GaussDiagram._trusted(tuple(e for e in d.word if e.chord != c), signs)


def _r2_delete(d: GaussDiagram, a: int, b: int) -> GaussDiagram:
    if a == b:
        raise NotApplicable("R2 needs two chords")
    if d.sign(a) == d.sign(b):
        raise NotApplicable("R2 chords must have opposite signs")
    m = len(d.word)
    ta, ha = d.positions(a)
    tb, hb = d.positions(b)
    if not (_cyc_adjacent(ta, tb, m) and _cyc_adjacent(ha, hb, m)):
        raise NotApplicable(f"chords {a},{b} do not form an R2 bigon")
    signs = d.signs
    del signs[a], signs[b]
    return GaussDiagram._trusted(tuple(e for e in d.word if e.chord not in (a, b)), signs)


def _r2_insert(d: GaussDiagram, ga: int, gb: int, variant: str) -> GaussDiagram:
    m = len(d.word)
    if variant not in R2_VARIANTS:
        raise NotApplicable(f"unknown R2 variant {variant!r}")
    if not 0 <= ga <= gb <= m:
        raise NotApplicable(f"gaps must satisfy 0 <= posA <= posB <= {m}")
    a, b = _fresh(d, 2)
    first = TAIL if variant[0] == "T" else HEAD
    second = HEAD if first is TAIL else TAIL
    pa = (Endpoint(a, first), Endpoint(b, first))
    pb = (Endpoint(a, second), Endpoint(b, second))
    if variant[1] == "o":
        pb = pb[::-1]
    s = 1 if variant[2] == "+" else -1
    signs = d.signs
    signs[a], signs[b] = s, -s
    w = d.word
    return GaussDiagram._trusted(w[:ga] + pa + w[ga:gb] + pb + w[gb:], signs)


@dataclass(frozen=True)
class _Triangle:
    starts: tuple[int, int, int]
    pairs: tuple[tuple[Endpoint, Endpoint], ...]
    orientation: int  # +1 / -1, or 0 when the sign side-condition fails
    cyclic: bool  # every strand is over one neighbour and under the other


def _triangle(d: GaussDiagram, locus: Sequence[int]) -> _Triangle:
    """Inspect three adjacent pairs that might bound an R3 / Delta triangle.

    Each pair is one strand segment.  For a chord X joining strands a and b,
    ``f = sign(X) * (-1)**(pos_a(X) + pos_b(X))`` and ``c = +1`` when the
    under strand follows the over strand in the cyclic order of the locus.
    The configuration is planar-realizable iff ``f * c`` is the same for all
    three chords; that common value is the orientation.
    """
    if len(locus) != 3:
        raise NotApplicable("a triangle needs three positions")
    m = len(d.word)
    for i in locus:
        _check_pos(d, i)
    occupied = [p for i in locus for p in (i, (i + 1) % m)]
    if len(set(occupied)) != 6:
        raise NotApplicable("triangle pairs overlap")
    pairs = tuple((d.word[i], d.word[(i + 1) % m]) for i in locus)
    where: dict[int, list[tuple[int, int, Role]]] = {}
    for s, pair in enumerate(pairs):
        if pair[0].chord == pair[1].chord:
            raise NotApplicable("a triangle pair lies on one chord")
        for k, e in enumerate(pair):
            where.setdefault(e.chord, []).append((s, k, e.role))
    if len(where) != 3 or any(len(v) != 2 for v in where.values()):
        raise NotApplicable("the three pairs do not share chords pairwise")
    values = set()
    for chord, ((sa, ka, ra), (sb, kb, rb)) in where.items():
        f = d.sign(chord) * (-1) ** (ka + kb)
        over, under = (sa, sb) if ra is TAIL else (sb, sa)
        c = 1 if under == (over + 1) % 3 else -1
        values.add(f * c)
    orientation = values.pop() if len(values) == 1 else 0
    cyclic = all(p[0].role is not p[1].role for p in pairs)
    return _Triangle(tuple(locus), pairs, orientation, cyclic)


def triangle_orientation(d: GaussDiagram, locus: Sequence[int]) -> int:
    """+1/-1 for a realizable triangle at ``locus``, 0 when the sign condition fails."""
    return _triangle(d, locus).orientation


def _transpose_pairs(d: GaussDiagram, starts: Sequence[int]) -> GaussDiagram:
    m = len(d.word)
    w = list(d.word)
    for i in starts:
        j = (i + 1) % m
        w[i], w[j] = w[j], w[i]
    return GaussDiagram._trusted(tuple(w), d.signs)


def _r3(d: GaussDiagram, locus: Sequence[int]) -> GaussDiagram:
    orient = None
    if len(locus) == 4:
        orient, locus = locus[3], locus[:3]
    tri = _triangle(d, locus)
    if tri.orientation == 0 or tri.cyclic:
        raise NotApplicable("not an R3 configuration")
    if orient is not None and orient != ("+" if tri.orientation > 0 else "-"):
        raise NotApplicable("R3 orientation tag does not match the diagram")
    return _transpose_pairs(d, tri.starts)


def reidemeister(d: GaussDiagram, m: MoveInstance) -> GaussDiagram:
    k, loc = m.kind, m.locus
    try:
        if k is MoveKind.R1_INSERT:
            return _r1_insert(d, *loc)
        if k is MoveKind.R1_DELETE:
            return _r1_delete(d, loc[0])
        if k is MoveKind.R2_INSERT:
            return _r2_insert(d, *loc)
        if k is MoveKind.R2_DELETE:
            return _r2_delete(d, *loc)
        if k is MoveKind.R3:
            return _r3(d, loc)
    except UnknownChord as exc:
        raise NotApplicable(str(exc)) from None
    raise NotApplicable(f"{k.value} is not a Reidemeister move")


def delta_move(d: GaussDiagram, m: MoveInstance) -> GaussDiagram:
    """Delta move: the three mixed-role pairs of a cyclic triangle are transposed, signs kept."""
    tri = _triangle(d, m.locus)
    if tri.orientation == 0 or not tri.cyclic:
        raise NotApplicable("not a Delta-move configuration")
    return _transpose_pairs(d, tri.starts)


def delta_via_arcshifts(d: GaussDiagram, m: MoveInstance) -> tuple[GaussDiagram, list[MoveKind]]:
    """The Delta move as three consecutive adjacent arc shifts."""
    tri = _triangle(d, m.locus)
    if tri.orientation == 0 or not tri.cyclic:
        raise NotApplicable("not a Delta-move configuration")
    kinds = []
    for i in tri.starts:
        d, kind = arc_shift_adjacent(d, i)
        kinds.append(kind)
    return d, kinds


def r3_via_arcshifts(d: GaussDiagram, m: MoveInstance) -> tuple[GaussDiagram, int]:
    """R3 as three arc shifts: the mixed pair first, then the head pair, then the tail pair."""
    loc = m.locus[:3]
    tri = _triangle(d, loc)
    if tri.orientation == 0 or tri.cyclic:
        raise NotApplicable("not an R3 configuration")

    def rank(k: int) -> int:
        a, b = tri.pairs[k]
        if a.role is not b.role:
            return 0
        return 1 if a.role is HEAD else 2

    count = 0
    for k in sorted(range(3), key=rank):
        d, _ = arc_shift_adjacent(d, tri.starts[k])
        count += 1
    return d, count


# ---------------------------------------------------------------------------
# enumeration and dispatch


def _gaps(d: GaussDiagram) -> range:
    m = len(d.word)
    return range(m) if m else range(1)


def _triangles(d: GaussDiagram):
    if d.n < 3:
        return
    m = len(d.word)
    # adjacent pairs indexed by the chords they join; a triangle uses one pair per side
    by_chords: dict[frozenset, list[int]] = {}
    for i in range(m):
        a, b = d.word[i].chord, d.word[(i + 1) % m].chord
        if a != b:
            by_chords.setdefault(frozenset((a, b)), []).append(i)
    loci = set()
    for side, starts in by_chords.items():
        a, b = sorted(side)
        for c in d.signs:
            if c <= b:
                continue
            ac = by_chords.get(frozenset((a, c)))
            bc = by_chords.get(frozenset((b, c)))
            if ac and bc:
                loci.update(tuple(sorted(t)) for t in itertools.product(starts, ac, bc))
    for locus in sorted(loci):
        try:
            tri = _triangle(d, locus)
        except NotApplicable:
            continue
        if tri.orientation:
            yield tri


def _reidemeister_moves(d: GaussDiagram, max_chords: int) -> list[MoveInstance]:
    out: list[MoveInstance] = []
    m = len(d.word)
    n = d.n
    if n + 1 <= max_chords:
        for g in _gaps(d):
            for sign in (1, -1):
                for order in ("OU", "UO"):
                    out.append(MoveInstance(MoveKind.R1_INSERT, (g, sign, order)))
    for c in sorted(d.signs):
        t, h = d.positions(c)
        if _cyc_adjacent(t, h, m):
            out.append(MoveInstance(MoveKind.R1_DELETE, (c,)))
    if n + 2 <= max_chords:
        gaps = _gaps(d)
        for ga in gaps:
            for gb in gaps:
                if gb < ga:
                    continue
                for v in R2_VARIANTS:
                    out.append(MoveInstance(MoveKind.R2_INSERT, (ga, gb, v)))
    chords = sorted(d.signs)
    for x, a in enumerate(chords):
        ta, ha = d.positions(a)
        for b in chords[x + 1:]:
            if d.sign(a) == d.sign(b):
                continue
            tb, hb = d.positions(b)
            if _cyc_adjacent(ta, tb, m) and _cyc_adjacent(ha, hb, m):
                out.append(MoveInstance(MoveKind.R2_DELETE, (a, b)))
    for tri in _triangles(d):
        if not tri.cyclic:
            tag = "+" if tri.orientation > 0 else "-"
            out.append(MoveInstance(MoveKind.R3, tri.starts + (tag,)))
    return out


def enumerate_moves(
    d: GaussDiagram,
    family: MoveFamily,
    max_chords: int | None = None,
    *,
    include_detour: bool = False,
    include_delta: bool = False,
) -> list[MoveInstance]:
    """Every applicable instance of ``family`` on ``d``, ordered by kind then locus.

    ``max_chords`` caps Reidemeister insertions (default: no growth).  The
    forbidden detour and the Delta move are composites and only listed on
    request.
    """
    if max_chords is None:
        max_chords = d.n
    m = len(d.word)
    out: list[MoveInstance] = []
    if family is MoveFamily.REIDEMEISTER:
        out = _reidemeister_moves(d, max_chords)
    elif family is MoveFamily.ARC_SHIFT:
        for i in range(m):
            a, b = d.word[i], d.word[(i + 1) % m]
            if a.chord != b.chord:
                out.append(MoveInstance(_ARC_KIND[a.role, b.role], (i,)))
        out.extend(MoveInstance(MoveKind.ARC_SHIFT_SIGN, (c,)) for c in sorted(d.signs))
        if include_delta:
            out.extend(
                MoveInstance(MoveKind.DELTA_MOVE, tri.starts) for tri in _triangles(d) if tri.cyclic
            )
    elif family is MoveFamily.FORBIDDEN:
        for i in range(m):
            a, b = d.word[i], d.word[(i + 1) % m]
            if a.chord == b.chord:
                continue
            if a.role is b.role:
                out.append(MoveInstance(MoveKind.FH if a.role is HEAD else MoveKind.FT, (i,)))
            elif include_detour:
                out.append(MoveInstance(MoveKind.FORBIDDEN_DETOUR, (i,)))
    elif family is MoveFamily.REGION_ARC_SHIFT:
        from .planar import ras_moves

        out = ras_moves(d)
    else:  # pragma: no cover
        raise ValueError(family)
    out.sort(key=MoveInstance.sort_key)
    return out


def move_cost(m: MoveInstance) -> int:
    """Cost in the move's own currency: arc shifts, forbidden moves or RAS operations."""
    if m.kind in REIDEMEISTER_KINDS:
        return 0
    if m.kind is MoveKind.FORBIDDEN_DETOUR:
        return 2
    if m.kind is MoveKind.DELTA_MOVE:
        return 3
    return 1


def apply(d: GaussDiagram, m: MoveInstance) -> GaussDiagram:
    k = m.kind
    if k in ADJACENT_ARC_SHIFTS:
        out, kind = arc_shift_adjacent(d, m.locus[0])
        if kind is not k:
            raise NotApplicable(f"position {m.locus[0]} is an {kind.value}, not {k.value}")
        return out
    if k is MoveKind.ARC_SHIFT_SIGN:
        try:
            return arc_shift_sign(d, m.locus[0])
        except UnknownChord as exc:
            raise NotApplicable(str(exc)) from None
    if k in (MoveKind.FH, MoveKind.FT):
        out, kind = forbidden(d, m.locus[0])
        if kind is not k:
            raise NotApplicable(f"position {m.locus[0]} is an {kind.value}, not {k.value}")
        return out
    if k is MoveKind.FORBIDDEN_DETOUR:
        return forbidden_detour(d, m.locus[0])[0]
    if k in REIDEMEISTER_KINDS:
        return reidemeister(d, m)
    if k is MoveKind.DELTA_MOVE:
        return delta_move(d, m)
    if k in (MoveKind.RAS_ADJACENT, MoveKind.RAS_REGION):
        from .planar import apply_ras

        return apply_ras(d, m)
    raise NotApplicable(f"unsupported move kind {k}")  # pragma: no cover


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"expected an integer, got {text!r}") from None


def parse_move(spec: str, d: GaussDiagram) -> MoveInstance:
    """Read one move spec against the diagram it will act on.

    Adjacent arc shifts and forbidden moves are classified from the roles in
    ``d``.  Raises ``ValueError`` for malformed text and ``NotApplicable``
    when the move does not fit ``d``.
    """
    head, _, rest = spec.strip().partition(":")
    args = rest.split(":") if rest else []

    def need(k: int) -> None:
        if len(args) != k:
            raise ValueError(f"move {head!r} takes {k} argument(s): {spec!r}")

    if head == "as":
        need(1)
        i = _int(args[0])
        a, b, _ = _adjacent_pair(d, i)
        return MoveInstance(_ARC_KIND[a.role, b.role], (i,))
    if head == "ass":
        need(1)
        return MoveInstance(MoveKind.ARC_SHIFT_SIGN, (_int(args[0]),))
    if head == "f":
        need(1)
        i = _int(args[0])
        a, b, _ = _adjacent_pair(d, i)
        if a.role is not b.role:
            raise RoleMismatch(f"roles at position {i} differ")
        return MoveInstance(MoveKind.FH if a.role is HEAD else MoveKind.FT, (i,))
    if head == "fd":
        need(1)
        return MoveInstance(MoveKind.FORBIDDEN_DETOUR, (_int(args[0]),))
    if head == "r1d":
        need(1)
        return MoveInstance(MoveKind.R1_DELETE, (_int(args[0]),))
    if head == "r1i":
        need(3)
        if args[1] not in ("+", "-"):
            raise ValueError(f"sign must be + or -: {spec!r}")
        return MoveInstance(MoveKind.R1_INSERT, (_int(args[0]), 1 if args[1] == "+" else -1, args[2]))
    if head == "r2d":
        need(2)
        return MoveInstance(MoveKind.R2_DELETE, (_int(args[0]), _int(args[1])))
    if head == "r2i":
        need(3)
        return MoveInstance(MoveKind.R2_INSERT, (_int(args[0]), _int(args[1]), args[2]))
    if head == "r3":
        if len(args) == 4:
            return MoveInstance(MoveKind.R3, tuple(_int(a) for a in args[:3]) + (args[3],))
        need(3)
        return MoveInstance(MoveKind.R3, tuple(_int(a) for a in args))
    if head == "delta":
        need(3)
        return MoveInstance(MoveKind.DELTA_MOVE, tuple(_int(a) for a in args))
    if head == "ras":
        need(1)
        return MoveInstance(MoveKind.RAS_ADJACENT, (_int(args[0]),))
    if head == "rasr":
        need(1)
        return MoveInstance(MoveKind.RAS_REGION, (_int(args[0]),))
    raise ValueError(f"unknown move {head!r}")
