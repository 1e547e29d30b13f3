"""Planar virtual knot diagrams as 4-valent combinatorial maps.

Each vertex owns four darts listed counterclockwise; opposite darts (slots
``s`` and ``s+2``) lie on the same strand.  At a classical vertex slots 0/2
carry the overpass.  Edges pair darts, and faces are the orbits of
``next_ccw . pair``.

:func:`realize` draws any Gauss diagram by parking the classical crossings
on a horizontal axis (each one just below it, with its four ports on the
axis) and joining consecutive passages by upper half-plane semicircles.
Two semicircles meet exactly when their endpoint intervals interleave, and
every such meeting becomes a virtual crossing.

Region arc shift (RAS) at a face shifts every arc on its boundary: an arc
between two classical crossings is an adjacent arc shift, an arc with one
classical end flips that crossing's sign, and a virtual-only arc does
nothing to the Gauss diagram.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .gauss import HEAD, TAIL, Endpoint, GaussDiagram, Role, canonical_code
from .moves import (
    MoveInstance,
    MoveKind,
    NotApplicable,
    SameChord,
    arc_shift_adjacent,
    arc_shift_sign,
)

__all__ = [
    "Crossing",
    "PlanarDiagram",
    "Region",
    "BoundaryArc",
    "DegenerateRegion",
    "PlanarError",
    "realize",
    "read_gauss",
    "regions",
    "boundary_arcs",
    "region_arc_shift",
    "region_arc_shift_steps",
    "ras_orders_agree",
    "ras_representative",
    "ras_for_forbidden",
    "ras_moves",
    "apply_ras",
]


class PlanarError(ValueError):
    pass


class DegenerateRegion(NotApplicable):
    """The boundary walk revisits a crossing, or an arc joins a crossing to itself."""


@dataclass(frozen=True)
class Crossing:
    kind: str  # "classical" or "virtual"
    sign: int | None = None
    chord: int | None = None

    @property
    def classical(self) -> bool:
        return self.kind == "classical"


@dataclass(frozen=True)
class Region:
    boundary: tuple[int, ...]  # darts leaving each corner, in walk order


@dataclass(frozen=True)
class BoundaryArc:
    edge: tuple[int, int]
    ends: tuple[int, int]
    roles: tuple[str | None, str | None]  # "over"/"under" at classical ends


class PlanarDiagram:
    """Immutable 4-valent map; see the module docstring for conventions."""

    def __init__(
        self,
        vertices: Sequence[Crossing],
        rotation: Sequence[Sequence[int]],
        pairing: dict[int, int],
        basepoint: int | None,
    ):
        self.vertices = tuple(vertices)
        self.rotation = tuple(tuple(r) for r in rotation)
        self.pairing = dict(pairing)
        self.basepoint = basepoint
        self._loc = {d: (v, s) for v, rot in enumerate(self.rotation) for s, d in enumerate(rot)}

    # local structure
    def vertex_of(self, d: int) -> int:
        return self._loc[d][0]

    def slot_of(self, d: int) -> int:
        return self._loc[d][1]

    def through(self, d: int) -> int:
        v, s = self._loc[d]
        return self.rotation[v][(s + 2) % 4]

    def next_ccw(self, d: int) -> int:
        v, s = self._loc[d]
        return self.rotation[v][(s + 1) % 4]

    def darts(self) -> list[int]:
        return sorted(self._loc)

    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def E(self) -> int:
        return len(self.pairing) // 2

    def counts(self) -> tuple[int, int, int]:
        return self.V, self.E, len(regions(self))

    def traversal(self) -> list[tuple[int, int]]:
        """(entry dart, exit dart) for each vertex passage, starting at the basepoint."""
        if self.basepoint is None:
            return []
        out = []
        d = self.basepoint
        for _ in range(len(self._loc)):
            out.append((d, self.through(d)))
            d = self.pairing[self.through(d)]
            if d == self.basepoint:
                return out
        raise PlanarError("strand traversal does not close up")

    def validate(self) -> None:
        darts = set(self._loc)
        if len(darts) != 4 * self.V or any(len(set(r)) != 4 for r in self.rotation):
            raise PlanarError("every vertex needs four distinct darts")
        if set(self.pairing) != darts:
            raise PlanarError("edge pairing must cover every dart")
        for a, b in self.pairing.items():
            if a == b or self.pairing.get(b) != a:
                raise PlanarError("edge pairing must be a fixed-point-free involution")
        if self.V == 0:
            return
        walk = self.traversal()
        if len(walk) != 2 * self.V:
            raise PlanarError("diagram has more than one component")
        v, e, f = self.counts()
        if v - e + f != 2:
            raise PlanarError(f"Euler check failed: V={v} E={e} F={f}")
        for v_, sign in _rotation_signs(self).items():
            if self.vertices[v_].sign != sign:
                raise PlanarError(f"stored sign at vertex {v_} disagrees with the embedding")

    def to_json(self) -> dict:
        return {
            "vertices": [
                {"kind": c.kind, "sign": c.sign, "darts": list(r), "chord": c.chord}
                for c, r in zip(self.vertices, self.rotation)
            ],
            "edges": sorted([a, b] for a, b in self.pairing.items() if a < b),
            "basepoint": self.basepoint,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PlanarDiagram":
        verts = []
        rot = []
        for item in data["vertices"]:
            verts.append(Crossing(item["kind"], item.get("sign"), item.get("chord")))
            rot.append(item["darts"])
        pairing = {}
        for a, b in data["edges"]:
            pairing[a] = b
            pairing[b] = a
        return cls(verts, rot, pairing, data.get("basepoint"))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlanarDiagram):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __repr__(self) -> str:
        nv = sum(1 for c in self.vertices if not c.classical)
        return f"PlanarDiagram(classical={self.V - nv}, virtual={nv})"


def _rotation_signs(p: PlanarDiagram) -> dict[int, int]:
    # positive crossing: the under strand enters one slot counterclockwise of the over strand
    entries: dict[int, dict[bool, int]] = {}
    for d, _ in p.traversal():
        v, s = p._loc[d]
        if p.vertices[v].classical:
            entries.setdefault(v, {})[s % 2 == 0] = s
    return {v: (1 if e[False] == (e[True] + 1) % 4 else -1) for v, e in entries.items()}


# ---------------------------------------------------------------------------
# realization

# port offset of each slot inside a crossing's block of four ports: p1 p2 p3 p4
_SLOT_OFFSET = (0, 3, 2, 1)


def _partner_entry(known_entry: int, known_over: bool, sign: int) -> int:
    if known_over:
        return (known_entry + 1) % 4 if sign > 0 else (known_entry + 3) % 4
    return (known_entry + 3) % 4 if sign > 0 else (known_entry + 1) % 4


@dataclass
class _Layout:
    order: list[int]  # chords left to right
    entry: dict[tuple[int, Role], int]  # passage -> geometric entry slot
    relays: dict[tuple[int, int], int]  # (chord, geometric slot) port -> relay x

    def dart_slot(self, c: int, geo: int) -> int:
        # map slots are geometric slots turned so that the overpass sits on 0/2
        return (geo - self.entry[c, TAIL] % 2) % 4


def _default_layout(g: GaussDiagram) -> _Layout:
    entry = {}
    for c in g.chords():
        entry[c, TAIL] = 0
        entry[c, HEAD] = _partner_entry(0, True, g.sign(c))
    return _Layout(g.chords(), entry, {})


def _gadget_layout(g: GaussDiagram, i: int) -> _Layout:
    """Layout in which the passages at ``i`` and ``i+1`` are joined by a bare arc
    that, together with a virtual crossing of the two transversal strands,
    bounds a triangular face."""
    m = len(g.word)
    a, b = g.word[i], g.word[(i + 1) % m]
    if a.chord == b.chord:
        raise SameChord(f"positions {i} and {(i + 1) % m} lie on one chord")
    order = [c for c in g.chords() if c != b.chord]
    order.insert(order.index(a.chord) + 1, b.chord)
    entry = {}
    for c in g.chords():
        entry[c, TAIL] = 0
        entry[c, HEAD] = _partner_entry(0, True, g.sign(c))
    # passage i runs p2 -> p4 at its crossing, passage i+1 runs p1 -> p3 at the next
    entry[a.chord, a.role] = 3
    other = HEAD if a.role is TAIL else TAIL
    entry[a.chord, other] = _partner_entry(3, a.role is TAIL, g.sign(a.chord))
    entry[b.chord, b.role] = 0
    other = HEAD if b.role is TAIL else TAIL
    entry[b.chord, other] = _partner_entry(0, b.role is TAIL, g.sign(b.chord))
    k = order.index(a.chord)
    relays = {
        (a.chord, 2): 4 * (4 * k + 5) + 2,  # just right of the next crossing's p2
        (b.chord, 3): 4 * (4 * k + 1) + 2,  # just left of this crossing's p3
    }
    return _Layout(order, entry, relays)


def _interleave(p: tuple, q: tuple) -> bool:
    a, b = p
    c, d = q
    return a < c < b < d or c < a < d < b


def _embed(g: GaussDiagram, layout: _Layout) -> PlanarDiagram:
    if not g.word:
        return PlanarDiagram((), (), {}, None)
    rng = random.Random(0)
    for attempt in range(50):
        jitter: dict[int, int] = {}

        def X(base: int) -> int:
            if attempt == 0:
                return base
            if base not in jitter:
                jitter[base] = base * 1000 + rng.randint(-400, 400)
            return jitter[base]

        result = _embed_once(g, layout, X)
        if result is not None:
            return result
    raise PlanarError("could not find a generic embedding")  # pragma: no cover


def _embed_once(g: GaussDiagram, layout: _Layout, X) -> PlanarDiagram | None:
    word = g.word
    m = len(word)
    index = {c: k for k, c in enumerate(layout.order)}
    nc = len(layout.order)

    def port(c: int, slot: int) -> int:
        return X(4 * (4 * index[c] + _SLOT_OFFSET[slot]))

    def dart(c: int, slot: int) -> int:
        return 4 * index[c] + layout.dart_slot(c, slot)

    # segment q runs from passage q's exit port to passage q+1's entry port
    chains: list[list[int]] = []
    ends: list[tuple[int, int]] = []
    for q in range(m):
        e0, e1 = word[q], word[(q + 1) % m]
        s0 = (layout.entry[e0.chord, e0.role] + 2) % 4
        s1 = layout.entry[e1.chord, e1.role]
        chain = [port(e0.chord, s0)]
        if (e0.chord, s0) in layout.relays:
            chain.append(X(layout.relays[e0.chord, s0]))
        tail = []
        if (e1.chord, s1) in layout.relays:
            tail.append(X(layout.relays[e1.chord, s1]))
        chain += tail + [port(e1.chord, s1)]
        chains.append(chain)
        ends.append((dart(e0.chord, s0), dart(e1.chord, s1)))

    pieces = []  # (segment, index, x_from, x_to)
    for s, chain in enumerate(chains):
        for k in range(len(chain) - 1):
            pieces.append((s, k, chain[k], chain[k + 1]))

    # virtual crossings
    hits: dict[int, list[tuple[Fraction, int, int, int]]] = {}  # piece -> (x, vertex, lo slot, hi slot)
    nv = 0
    spans = [tuple(sorted(p[2:])) for p in pieces]
    for u in range(len(pieces)):
        for w in range(u + 1, len(pieces)):
            su, sw = spans[u], spans[w]
            if not _interleave(su, sw):
                continue
            if su[0] > sw[0]:
                lo_piece, hi_piece = w, u
            else:
                lo_piece, hi_piece = u, w
            (a, b), (c, d) = spans[lo_piece], spans[hi_piece]
            x = Fraction(c * d - a * b, (c + d) - (a + b))
            v = nc + nv
            nv += 1
            # counterclockwise: S1->b, S2->d, S1->a, S2->c
            hits.setdefault(lo_piece, []).append((x, v, 2, 0))
            hits.setdefault(hi_piece, []).append((x, v, 3, 1))
    for lst in hits.values():
        xs = [h[0] for h in lst]
        if len(set(xs)) != len(xs):
            return None  # three curves through one point

    pairing: dict[int, int] = {}

    def join(x: int, y: int) -> None:
        pairing[x] = y
        pairing[y] = x

    pid = 0
    for s in range(m):
        prev = ends[s][0]
        for _ in range(len(chains[s]) - 1):
            _, _, x0, x1 = pieces[pid]
            lst = sorted(hits.get(pid, []), reverse=x0 > x1)
            for _x, v, lo_slot, hi_slot in lst:
                into, out = (lo_slot, hi_slot) if x0 < x1 else (hi_slot, lo_slot)
                join(prev, 4 * v + into)
                prev = 4 * v + out
            pid += 1
        join(prev, ends[s][1])

    vertices = [Crossing("classical", g.sign(c), c) for c in layout.order]
    vertices += [Crossing("virtual") for _ in range(nv)]
    rotation = [tuple(range(4 * v, 4 * v + 4)) for v in range(nc + nv)]
    first = word[0]
    basepoint = dart(first.chord, layout.entry[first.chord, first.role])
    return PlanarDiagram(vertices, rotation, pairing, basepoint)


@lru_cache(maxsize=4096)
def realize(g: GaussDiagram) -> PlanarDiagram:
    """A planar diagram whose Gauss diagram is ``g``; extra crossings are virtual."""
    return _embed(g, _default_layout(g))


def read_gauss(p: PlanarDiagram) -> GaussDiagram:
    """Gauss diagram read off from the basepoint; virtual crossings are skipped."""
    word: list[Endpoint] = []
    signs: dict[int, int] = {}
    labels: dict[int, int] = {}
    for d, _ in p.traversal():
        v, s = p._loc[d]
        cr = p.vertices[v]
        if not cr.classical:
            continue
        if v not in labels:
            labels[v] = cr.chord if cr.chord is not None else len(labels) + 1
        c = labels[v]
        signs[c] = cr.sign
        word.append(Endpoint(c, TAIL if s % 2 == 0 else HEAD))
    return GaussDiagram(word, signs)


# ---------------------------------------------------------------------------
# regions


def regions(p: PlanarDiagram) -> list[Region]:
    if p.V == 0:
        return [Region(()), Region(())]
    seen: set[int] = set()
    out = []
    for start in p.darts():
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = p.next_ccw(p.pairing[d])
        out.append(Region(tuple(walk)))
    return out


def _check_region(p: PlanarDiagram, r: Region) -> None:
    corners = [p.vertex_of(d) for d in r.boundary]
    if len(set(corners)) != len(corners):
        raise DegenerateRegion("region boundary visits a crossing twice")


def boundary_arcs(p: PlanarDiagram, r: Region) -> list[BoundaryArc]:
    _check_region(p, r)
    arcs = []
    for d in r.boundary:
        e = p.pairing[d]
        roles = []
        for x in (d, e):
            v, s = p._loc[x]
            roles.append(("over" if s % 2 == 0 else "under") if p.vertices[v].classical else None)
        arcs.append(BoundaryArc((d, e), (p.vertex_of(d), p.vertex_of(e)), tuple(roles)))
    return arcs


def region_arc_shift_steps(
    p: PlanarDiagram, r: Region, order: Sequence[int] | None = None
) -> tuple[GaussDiagram, list[tuple[BoundaryArc, MoveKind | None]]]:
    """Apply the arc shift of every boundary arc, in walk order unless ``order``
    (a permutation of arc indices) says otherwise.

    Arcs are followed by crossing identity: each classical end is a passage
    ``(chord, role)`` whose current word position is tracked as the
    transpositions happen.
    """
    arcs = boundary_arcs(p, r)
    if order is not None:
        if sorted(order) != list(range(len(arcs))):
            raise ValueError(f"order must permute 0..{len(arcs) - 1}")
        arcs = [arcs[k] for k in order]
    g = read_gauss(p)
    passage: dict[int, Endpoint] = {}
    for q, (din, dout) in enumerate(_classical_passages(p)):
        passage[din] = passage[dout] = g.word[q]
    where = {e: q for q, e in enumerate(g.word)}
    m = len(g.word)
    steps: list[tuple[BoundaryArc, MoveKind | None]] = []
    for arc in arcs:
        ends = [passage.get(x) for x in arc.edge]
        classical = [e for e in ends if e is not None]
        if len(classical) == 2:
            e0, e1 = classical
            if e0.chord == e1.chord:
                raise DegenerateRegion("boundary arc runs from a crossing back to itself")
            q0, q1 = where[e0], where[e1]
            if (q0 - q1) % m not in (1, m - 1):
                raise PlanarError("classical arc ends are not adjacent in the Gauss word")  # pragma: no cover
            i = q0 if (q0 + 1) % m == q1 else q1
            g, kind = arc_shift_adjacent(g, i)
            where[g.word[i]], where[g.word[(i + 1) % m]] = i, (i + 1) % m
            steps.append((arc, kind))
        elif len(classical) == 1:
            g = arc_shift_sign(g, classical[0].chord)
            steps.append((arc, MoveKind.ARC_SHIFT_SIGN))
        else:
            steps.append((arc, None))
    return g, steps


def _classical_passages(p: PlanarDiagram) -> list[tuple[int, int]]:
    return [(a, b) for a, b in p.traversal() if p.vertices[p.vertex_of(a)].classical]


def region_arc_shift(p: PlanarDiagram, r: Region) -> tuple[GaussDiagram, int]:
    """Gauss diagram after RAS at ``r`` and the number of arcs touching a classical crossing."""
    g, steps = region_arc_shift_steps(p, r)
    return g, sum(1 for _, k in steps if k is not None)


def ras_orders_agree(p: PlanarDiagram, r: Region, max_arcs: int = 6) -> bool | None:
    """Whether every ordering of the boundary arcs gives the same diagram.

    None when the region has more than ``max_arcs`` arcs and was not checked.
    """
    k = len(r.boundary)
    if k > max_arcs:
        return None
    base = canonical_code(region_arc_shift(p, r)[0])
    return all(
        canonical_code(region_arc_shift_steps(p, r, order)[0]) == base
        for order in itertools.permutations(range(k))
    )


def ras_representative(g: GaussDiagram, i: int) -> tuple[PlanarDiagram, Region]:
    """A diagram of ``g`` with a triangular face whose arcs are the bare arc between
    the passages at ``i``/``i+1`` and two arcs through one virtual crossing."""
    m = len(g.word)
    if m == 0 or not 0 <= i < m:
        raise NotApplicable(f"position {i} out of range")
    p = _embed(g, _gadget_layout(g, i))
    a, b = g.word[i], g.word[(i + 1) % m]
    want = {a.chord, b.chord}
    lay = _gadget_layout(g, i)
    k = lay.order.index(a.chord)
    bare = {4 * k + lay.dart_slot(a.chord, 1), 4 * (k + 1) + lay.dart_slot(b.chord, 0)}
    for r in regions(p):
        if len(r.boundary) != 3 or not bare & set(r.boundary):
            continue
        vs = [p.vertices[p.vertex_of(d)] for d in r.boundary]
        if {c.chord for c in vs if c.classical} == want and sum(not c.classical for c in vs) == 1:
            return p, r
    raise PlanarError("triangle region not found")  # pragma: no cover


def ras_for_forbidden(g: GaussDiagram, i: int) -> tuple[GaussDiagram, int]:
    """Forbidden move (or forbidden detour) at ``i`` carried out by one RAS."""
    p, r = ras_representative(g, i)
    out, _ = region_arc_shift(p, r)
    return out, 1


def _useful(p: PlanarDiagram, r: Region) -> bool:
    try:
        arcs = boundary_arcs(p, r)
    except DegenerateRegion:
        return False
    for a in arcs:
        v0, v1 = a.ends
        if v0 == v1 and p.vertices[v0].classical:
            return False
    return any(p.vertices[a.ends[0]].classical and p.vertices[a.ends[1]].classical for a in arcs)


def ras_moves(g: GaussDiagram) -> list[MoveInstance]:
    m = len(g.word)
    out = [
        MoveInstance(MoveKind.RAS_ADJACENT, (i,))
        for i in range(m)
        if g.word[i].chord != g.word[(i + 1) % m].chord
    ]
    if m:
        p = realize(g)
        out += [MoveInstance(MoveKind.RAS_REGION, (k,)) for k, r in enumerate(regions(p)) if _useful(p, r)]
    return out


def apply_ras(g: GaussDiagram, move: MoveInstance) -> GaussDiagram:
    if move.kind is MoveKind.RAS_ADJACENT:
        return ras_for_forbidden(g, move.locus[0])[0]
    if move.kind is MoveKind.RAS_REGION:
        p = realize(g)
        regs = regions(p)
        k = move.locus[0]
        if not 0 <= k < len(regs):
            raise NotApplicable(f"region {k} does not exist")
        return region_arc_shift(p, regs[k])[0]
    raise NotApplicable(f"{move.kind.value} is not a region arc shift")
