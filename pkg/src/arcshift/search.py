"""Bounded unknotting search.

States are Gauss diagrams deduplicated by canonical code.  Reidemeister
moves are free (insertions are capped by ``max_chords``); the chosen move
family costs 1 per move (the forbidden detour costs 2).  The search is A*
with ``ceil(|J| / 2)`` as heuristic for the arc shift and forbidden
families: each such move changes the odd writhe J by at most 2 and
Reidemeister moves leave it alone, so the heuristic is consistent.

Each state keeps the concrete diagram it was reached with, so a witness is a
list of moves that replays verbatim from the input diagram.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .gauss import GaussDiagram, canonical_code, is_parallel
from .invariants import arc_shift_lower_bound, odd_writhe
from .moves import (
    MoveFamily,
    MoveInstance,
    MoveKind,
    NotApplicable,
    REIDEMEISTER_KINDS,
    apply,
    arc_shift_adjacent,
    enumerate_moves,
    forbidden,
    forbidden_detour,
    move_cost,
)

__all__ = [
    "SearchConfig",
    "SearchStatus",
    "SearchResult",
    "TrivialityVerdict",
    "Verdict",
    "InvalidWitness",
    "is_trivial_bounded",
    "unknotting_search",
    "constructive_unknot",
    "forbidden_to_ras",
    "replay",
    "lower_bound",
    "DEFAULT_MAX_STATES",
]

DEFAULT_MAX_STATES = 200_000


class InvalidWitness(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    move_family: MoveFamily = MoveFamily.ARC_SHIFT
    max_chords: int | None = None  # None: starting chord count + 2
    max_states: int = DEFAULT_MAX_STATES
    max_cost: int | None = None

    def resolve(self, d: GaussDiagram) -> "SearchConfig":
        cap = d.n + 2 if self.max_chords is None else self.max_chords
        if cap < d.n:
            raise ValueError(f"max_chords={cap} is below the diagram's {d.n} chords")
        if self.max_states <= 0:
            raise ValueError("max_states must be positive")
        if self.max_cost is not None and self.max_cost < 0:
            raise ValueError("max_cost must be non-negative")
        return SearchConfig(self.move_family, cap, self.max_states, self.max_cost)


class Verdict(Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TrivialityVerdict:
    verdict: Verdict
    witness: tuple[MoveInstance, ...] = ()
    odd_writhe: int = 0


class SearchStatus(Enum):
    EXACT = "exact"
    UPPER = "upper"
    INCONCLUSIVE = "inconclusive"


@dataclass
class SearchResult:
    family: MoveFamily
    status: SearchStatus
    lower_bound: int
    upper_bound: int | None
    witness: list[MoveInstance] = field(default_factory=list)
    states_explored: int = 0
    max_chords: int = 0

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "status": self.status.value,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "witness": [m.spec for m in self.witness],
            "states_explored": self.states_explored,
            "max_chords": self.max_chords,
        }


def replay(d: GaussDiagram, witness) -> GaussDiagram:
    for k, m in enumerate(witness):
        try:
            d = apply(d, m)
        except NotApplicable as exc:
            raise InvalidWitness(f"step {k} ({m.spec}) does not apply: {exc}") from None
    return d


def lower_bound(d: GaussDiagram, family: MoveFamily) -> int:
    """Sound lower bound on the family's unknotting cost."""
    if family is MoveFamily.REGION_ARC_SHIFT:
        # one region arc shift may shift many arcs, so only nontriviality survives
        return 1 if odd_writhe(d) else 0
    # forbidden moves and the detour also move J by at most 2 per unit of cost
    return arc_shift_lower_bound(d)


def _heuristic(family: MoveFamily):
    if family is MoveFamily.REGION_ARC_SHIFT:
        return lambda d: 0
    return arc_shift_lower_bound


def _neighbours(d: GaussDiagram, cfg: SearchConfig):
    for m in enumerate_moves(d, MoveFamily.REIDEMEISTER, cfg.max_chords):
        yield m, 0
    family = cfg.move_family
    for m in enumerate_moves(d, family, include_detour=family is MoveFamily.FORBIDDEN):
        yield m, move_cost(m)


def _step(d: GaussDiagram, m: MoveInstance) -> GaussDiagram:
    # A RAS on the triangle built around an adjacent pair has the Gauss effect of
    # the forbidden move (or detour) there; skip re-embedding on the hot path.
    # Witness replay still goes through the planar construction.
    if m.kind is MoveKind.RAS_ADJACENT:
        i = m.locus[0]
        a, b = d.word[i], d.word[(i + 1) % len(d.word)]
        return forbidden(d, i)[0] if a.role is b.role else forbidden_detour(d, i)[0]
    return apply(d, m)


def _path(nodes: dict, key: str) -> list[MoveInstance]:
    out = []
    while True:
        _, parent, move = nodes[key]
        if parent is None:
            return out[::-1]
        out.append(move)
        key = parent


def unknotting_search(d: GaussDiagram, cfg: SearchConfig | None = None) -> SearchResult:
    cfg = (cfg or SearchConfig()).resolve(d)
    family = cfg.move_family
    lb = lower_bound(d, family)

    def result(status, ub, witness, explored):
        return SearchResult(family, status, lb, ub, witness, explored, cfg.max_chords)

    if is_parallel(d):
        return result(SearchStatus.EXACT, 0, [], 0)
    h = _heuristic(family)
    k0 = canonical_code(d)
    nodes: dict[str, tuple[GaussDiagram, str | None, MoveInstance | None]] = {k0: (d, None, None)}
    best = {k0: 0}
    closed: set[str] = set()
    heap = [(h(d), 0, k0)]
    if cfg.max_cost is not None and h(d) > cfg.max_cost:
        heap = []
    goal: str | None = None
    goal_cost: int | None = None
    explored = 0
    while heap:
        f, g, key = heapq.heappop(heap)
        if key in closed or g > best[key]:
            continue
        if goal_cost is not None and goal_cost <= f:
            break
        if explored >= cfg.max_states:
            break
        closed.add(key)
        explored += 1
        state = nodes[key][0]
        for m, cost in _neighbours(state, cfg):
            ng = g + cost
            if cfg.max_cost is not None and ng > cfg.max_cost:
                continue
            if goal_cost is not None and ng >= goal_cost:
                continue
            try:
                nd = _step(state, m)
            except NotApplicable:
                continue
            nk = canonical_code(nd)
            if nk in closed or ng >= best.get(nk, ng + 1):
                continue
            if is_parallel(nd):
                best[nk] = ng
                nodes[nk] = (nd, key, m)
                goal, goal_cost = nk, ng
                if ng == lb:
                    return result(SearchStatus.EXACT, ng, _path(nodes, nk), explored)
                continue
            f_new = ng + h(nd)
            if cfg.max_cost is not None and f_new > cfg.max_cost:
                continue
            best[nk] = ng
            nodes[nk] = (nd, key, m)
            heapq.heappush(heap, (f_new, ng, nk))
    if goal is None:
        return result(SearchStatus.INCONCLUSIVE, None, [], explored)
    # a goal found before the budget ran out is still a valid upper bound
    status = SearchStatus.EXACT if goal_cost == lb else SearchStatus.UPPER
    return result(status, goal_cost, _path(nodes, goal), explored)


def is_trivial_bounded(d: GaussDiagram, cfg: SearchConfig | None = None) -> TrivialityVerdict:
    """Trivial when free moves reach a parallel diagram; Nontrivial when J != 0."""
    cfg = (cfg or SearchConfig()).resolve(d)
    if is_parallel(d):
        return TrivialityVerdict(Verdict.TRIVIAL)
    j = odd_writhe(d)
    if j:
        return TrivialityVerdict(Verdict.NONTRIVIAL, (), j)
    k0 = canonical_code(d)
    nodes = {k0: (d, None, None)}
    queue = deque([k0])
    explored = 0
    while queue and explored < cfg.max_states:
        key = queue.popleft()
        explored += 1
        state = nodes[key][0]
        for m in enumerate_moves(state, MoveFamily.REIDEMEISTER, cfg.max_chords):
            try:
                nd = apply(state, m)
            except NotApplicable:
                continue
            nk = canonical_code(nd)
            if nk in nodes:
                continue
            nodes[nk] = (nd, key, m)
            if is_parallel(nd):
                return TrivialityVerdict(Verdict.TRIVIAL, tuple(_path(nodes, nk)))
            queue.append(nk)
    return TrivialityVerdict(Verdict.UNKNOWN)


def _crosses_any(d: GaussDiagram, c: int) -> bool:
    p, q = d.span(c)
    inside = {e.chord for e in d.word[p + 1:q]}
    return any(e.chord != c and e.chord in inside for e in d.word[q + 1:] + d.word[:p])


def constructive_unknot(d: GaussDiagram) -> tuple[list[MoveInstance], int]:
    """Clear the chords one at a time by walking each head next to its tail.

    The head walks over the shorter of the two sides (forward on a tie), one
    adjacent arc shift per endpoint passed.  Only the current chord's
    interleavings change, so cleared chords stay cleared.
    """
    witness: list[MoveInstance] = []
    m = len(d.word)
    for c in d.chords():
        if not _crosses_any(d, c):
            continue
        t, h = d.positions(c)
        forward = (t - h) % m - 1
        backward = (h - t) % m - 1
        step = 1 if forward <= backward else -1
        for _ in range(min(forward, backward)):
            i = h if step == 1 else (h - 1) % m
            d, kind = arc_shift_adjacent(d, i)
            witness.append(MoveInstance(kind, (i,)))
            h = (h + step) % m
    return witness, len(witness)


_FORBIDDEN_KINDS = {MoveKind.FH, MoveKind.FT, MoveKind.FORBIDDEN_DETOUR}


def forbidden_to_ras(d: GaussDiagram, witness) -> list[MoveInstance]:
    """Swap every forbidden move (or detour) for the single RAS that realizes it."""
    out = []
    for k, m in enumerate(witness):
        if m.kind in _FORBIDDEN_KINDS:
            ras = MoveInstance(MoveKind.RAS_ADJACENT, m.locus)
            try:
                want = apply(d, m)
                got = apply(d, ras)
            except NotApplicable as exc:
                raise InvalidWitness(f"step {k} ({m.spec}) does not apply: {exc}") from None
            if got != want:
                raise InvalidWitness(f"step {k}: RAS result differs from {m.spec}")
            out.append(ras)
            d = got
        elif m.kind in REIDEMEISTER_KINDS:
            try:
                d = apply(d, m)
            except NotApplicable as exc:
                raise InvalidWitness(f"step {k} ({m.spec}) does not apply: {exc}") from None
            out.append(m)
        else:
            raise InvalidWitness(f"step {k} ({m.spec}) is not a forbidden-family move")
    if not is_parallel(d):
        raise InvalidWitness("witness does not end at a parallel chord diagram")
    return out
