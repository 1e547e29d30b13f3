"""Brute-force reference machinery.

* :func:`enumerate_diagrams` streams every Gauss diagram with ``n`` chords.
* :func:`brute_min_cost` is a layered breadth-first search that does not
  share code with the A* search.
* :func:`line_arrangement_triangles` samples three oriented straight lines
  in the plane and records every triangle configuration (crossing order,
  roles and signs) that actually occurs; it is the geometric reference for
  the R3 and Delta-move rules.
* :func:`proposition_suite` runs the exhaustive property checks behind the
  ``selftest`` command.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .gauss import HEAD, TAIL, Endpoint, GaussDiagram, Parity, canonical_code, is_parallel, parity_table
from .invariants import odd_writhe
from .moves import (
    ADJACENT_ARC_SHIFTS,
    MoveFamily,
    MoveInstance,
    MoveKind,
    NotApplicable,
    apply,
    arc_shift_adjacent,
    arc_shift_sign,
    delta_move,
    delta_via_arcshifts,
    enumerate_moves,
    forbidden,
    forbidden_detour,
    r3_via_arcshifts,
    reidemeister,
)

__all__ = [
    "CapExceeded",
    "EnumerationSpec",
    "enumerate_diagrams",
    "raw_count",
    "brute_min_cost",
    "line_arrangement_triangles",
    "gauss_triangle_config",
    "classify_triangle",
    "PropositionResult",
    "proposition_suite",
]

HARD_CAP = 5


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationSpec:
    n: int
    include_signs: bool = True
    canonical_only: bool = False
    cap: int = HARD_CAP


def raw_count(n: int, include_signs: bool = True) -> int:
    pairings = 1
    for k in range(1, 2 * n, 2):
        pairings *= k
    return pairings * 2**n * (2**n if include_signs else 1)


def _matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    a = points[0]
    for k in range(1, len(points)):
        rest = points[1:k] + points[k + 1:]
        for m in _matchings(rest):
            yield [(a, points[k])] + m


def enumerate_diagrams(
    n: int | EnumerationSpec, include_signs: bool = True, canonical_only: bool = False
) -> Iterator[GaussDiagram]:
    """Every diagram with exactly ``n`` chords, chords labelled by their first end."""
    spec = n if isinstance(n, EnumerationSpec) else EnumerationSpec(n, include_signs, canonical_only)
    if spec.n < 0:
        raise ValueError("n must be non-negative")
    if spec.n > spec.cap:
        raise CapExceeded(f"n={spec.n} exceeds the enumeration cap {spec.cap}")
    seen: set[str] = set()
    sign_choices = list(itertools.product((1, -1), repeat=spec.n)) if spec.include_signs else [(1,) * spec.n]
    for pairing in _matchings(list(range(2 * spec.n))):
        for roles in itertools.product((TAIL, HEAD), repeat=spec.n):
            word: list[Endpoint] = [None] * (2 * spec.n)  # type: ignore[list-item]
            for c, ((a, b), r) in enumerate(zip(pairing, roles), start=1):
                word[a] = Endpoint(c, r)
                word[b] = Endpoint(c, HEAD if r is TAIL else TAIL)
            w = tuple(word)
            for signs in sign_choices:
                d = GaussDiagram._trusted(w, dict(enumerate(signs, start=1)))
                if spec.canonical_only:
                    code = canonical_code(d)
                    if code in seen:
                        continue
                    seen.add(code)
                yield d


# ---------------------------------------------------------------------------
# layered brute force


def _free_closure(seeds: dict[str, GaussDiagram], seen: set[str], max_chords: int) -> dict[str, GaussDiagram]:
    layer = dict(seeds)
    queue = deque(seeds.values())
    while queue:
        s = queue.popleft()
        for m in enumerate_moves(s, MoveFamily.REIDEMEISTER, max_chords):
            try:
                nd = apply(s, m)
            except NotApplicable:
                continue
            k = canonical_code(nd)
            if k not in seen:
                seen.add(k)
                layer[k] = nd
                queue.append(nd)
    return layer


def brute_min_cost(
    d: GaussDiagram, family: MoveFamily, depth: int, max_chords: int | None = None
) -> int | None:
    """Least number of paid moves to a parallel diagram, or None if above ``depth``.

    Layer k holds every state first reachable at cost k; free moves are closed
    over inside each layer.  For the forbidden family the detour joins two
    layers further on.
    """
    cap = d.n if max_chords is None else max_chords
    seen = {canonical_code(d)}
    layers = [_free_closure({canonical_code(d): d}, seen, cap)]
    if any(is_parallel(s) for s in layers[0].values()):
        return 0
    pending: dict[int, dict[str, GaussDiagram]] = {}
    for k in range(1, depth + 1):
        seeds = pending.pop(k, {})
        for s in layers[k - 1].values():
            for m in enumerate_moves(s, family, include_detour=family is MoveFamily.FORBIDDEN):
                nd = apply(s, m)
                key = canonical_code(nd)
                if m.kind is MoveKind.FORBIDDEN_DETOUR:
                    pending.setdefault(k + 1, {}).setdefault(key, nd)
                elif key not in seen:
                    seeds.setdefault(key, nd)
        seeds = {key: s for key, s in seeds.items() if key not in seen}
        seen.update(seeds)
        layer = _free_closure(seeds, seen, cap)
        if any(is_parallel(s) for s in layer.values()):
            return k
        layers.append(layer)
    return None


# ---------------------------------------------------------------------------
# three-line arrangements


def _cross(u, v) -> float:
    return u[0] * v[1] - u[1] * v[0]


def _arrangement(lines, over: Callable[[int, int], bool]):
    segs = []
    for i in range(3):
        p, d = lines[i]
        hits = []
        for j in range(3):
            if j == i:
                continue
            q, e = lines[j]
            t = _cross((q[0] - p[0], q[1] - p[1]), e) / _cross(d, e)
            hits.append((t, j))
        hits.sort()
        segs.append(tuple((j, "T" if over(i, j) else "H") for _, j in hits))
    signs = {}
    for i, j in itertools.combinations(range(3), 2):
        o, u = (i, j) if over(i, j) else (j, i)
        signs[i, j] = 1 if _cross(lines[o][1], lines[u][1]) > 0 else -1
    return segs, signs


def _normalize(segs, signs):
    best = None
    for perm in itertools.permutations(range(3)):
        ns = [None] * 3
        for i in range(3):
            ns[perm[i]] = tuple((perm[j], r) for j, r in segs[i])
        sg = tuple(sorted(((min(perm[i], perm[j]), max(perm[i], perm[j])), s) for (i, j), s in signs.items()))
        key = (tuple(ns), sg)
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=4)
def line_arrangement_triangles(samples: int = 3000, seed: int = 1) -> tuple[frozenset, frozenset]:
    """Normalized triangle configurations of three generic oriented lines.

    Returns (R3 configurations, Delta configurations): the first with a
    height order on the lines, the second with a cyclic over-relation.
    """
    rng = random.Random(seed)
    r3, delta = set(), set()
    for _ in range(samples):
        lines = [((rng.uniform(-1, 1), rng.uniform(-1, 1)), (rng.uniform(-1, 1), rng.uniform(-1, 1))) for _ in range(3)]
        for h in itertools.permutations(range(3)):
            r3.add(_normalize(*_arrangement(lines, lambda i, j: h[i] > h[j])))
        for cyc in ((0, 1, 2), (0, 2, 1)):
            succ = {cyc[0]: cyc[1], cyc[1]: cyc[2], cyc[2]: cyc[0]}
            delta.add(_normalize(*_arrangement(lines, lambda i, j: succ[i] == j)))
    return frozenset(r3), frozenset(delta)


def gauss_triangle_config(d: GaussDiagram, locus) -> tuple | None:
    """Normalized configuration of the three strands at ``locus``, or None if they
    do not pairwise share chords."""
    m = len(d.word)
    pairs = [(d.word[i], d.word[(i + 1) % m]) for i in locus]
    strand: dict[int, list[int]] = {}
    for s, pair in enumerate(pairs):
        for e in pair:
            strand.setdefault(e.chord, []).append(s)
    if len(strand) != 3 or any(len(v) != 2 or v[0] == v[1] for v in strand.values()):
        return None
    segs = []
    for s, pair in enumerate(pairs):
        segs.append(
            tuple((next(x for x in strand[e.chord] if x != s), "T" if e.role is TAIL else "H") for e in pair)
        )
    signs = {tuple(sorted(v)): d.sign(c) for c, v in strand.items()}
    return _normalize(segs, signs)


def classify_triangle(d: GaussDiagram, locus) -> str | None:
    """"R3", "delta" or None, decided purely by the line-arrangement samples."""
    cfg = gauss_triangle_config(d, locus)
    if cfg is None:
        return None
    r3, delta = line_arrangement_triangles()
    if cfg in r3:
        return "R3"
    if cfg in delta:
        return "delta"
    return None


# ---------------------------------------------------------------------------
# proposition suite


@dataclass
class PropositionResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    tally: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(msg)
        else:
            self.failures[-1] = f"... and more (last: {msg})"

    def line(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in sorted(self.tally.items()))
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.checked} checked{extra}"


def _all_upto(max_n: int, canonical_only: bool = False) -> Iterator[GaussDiagram]:
    for n in range(max_n + 1):
        yield from enumerate_diagrams(n, canonical_only=canonical_only)


def check_involution(max_n: int) -> PropositionResult:
    res = PropositionResult("arc shift twice is the identity")
    for d in _all_upto(max_n):
        for i in range(len(d.word)):
            try:
                once, _ = arc_shift_adjacent(d, i)
            except NotApplicable:
                continue
            res.checked += 1
            if arc_shift_adjacent(once, i)[0] != d:
                res.fail(f"{d} at {i}")
    return res


def check_odd_writhe_law(max_n: int) -> PropositionResult:
    res = PropositionResult("odd writhe change under arc shifts")
    tally: Counter[str] = Counter()
    for d in _all_upto(max_n):
        j = odd_writhe(d)
        table = parity_table(d)
        for i in range(len(d.word)):
            try:
                after, _ = arc_shift_adjacent(d, i)
            except NotApplicable:
                continue
            a, b = d.word[i].chord, d.word[(i + 1) % len(d.word)].chord
            pa, pb = table[a], table[b]
            case = "both_even" if pa is pb is Parity.EVEN else "both_odd" if pa is pb is Parity.ODD else "mixed"
            tally[case] += 1
            res.checked += 1
            if odd_writhe(after) != j - (d.sign(a) + d.sign(b)):
                res.fail(f"{d} at {i}")
        for c in d.chords():
            dj = odd_writhe(arc_shift_sign(d, c)) - j
            res.checked += 1
            if table[c] is Parity.EVEN:
                tally["sign_even"] += 1
                ok = dj == 0
            else:
                tally["sign_odd"] += 1
                ok = dj == -2 * d.sign(c)
            if not ok:
                res.fail(f"{d} sign flip of {c}: dJ={dj}")
    res.tally = dict(tally)
    return res


def check_reidemeister_invariance(max_n: int, growth: int = 2) -> PropositionResult:
    res = PropositionResult("odd writhe unchanged by Reidemeister moves")
    tally: Counter[str] = Counter()
    for d in _all_upto(max_n, canonical_only=True):
        j = odd_writhe(d)
        for m in enumerate_moves(d, MoveFamily.REIDEMEISTER, d.n + growth):
            res.checked += 1
            tally[m.kind.value] += 1
            if odd_writhe(reidemeister(d, m)) != j:
                res.fail(f"{d} {m.spec}")
    res.tally = dict(tally)
    return res


def check_composites(max_n: int) -> PropositionResult:
    res = PropositionResult("R3 and Delta moves equal three arc shifts")
    tally: Counter[str] = Counter()
    for d in _all_upto(max_n):
        if d.n < 3:
            continue
        for m in enumerate_moves(d, MoveFamily.REIDEMEISTER, d.n):
            if m.kind is MoveKind.R3:
                res.checked += 1
                tally["R3"] += 1
                if r3_via_arcshifts(d, m)[0] != reidemeister(d, m):
                    res.fail(f"{d} {m.spec}")
        for m in enumerate_moves(d, MoveFamily.ARC_SHIFT, include_delta=True):
            if m.kind is MoveKind.DELTA_MOVE:
                res.checked += 1
                tally["delta"] += 1
                out, kinds = delta_via_arcshifts(d, m)
                if out != delta_move(d, m) or any(k not in ADJACENT_ARC_SHIFTS for k in kinds):
                    res.fail(f"{d} {m.spec}")
    res.tally = dict(tally)
    return res


def check_triangle_geometry(max_n: int) -> PropositionResult:
    """The Gauss-level triangle rule agrees with sampled line arrangements."""
    from .moves import _triangle

    res = PropositionResult("triangle moves match line arrangements")
    tally: Counter[str] = Counter()
    for d in enumerate_diagrams(min(max_n, 3)) if max_n >= 3 else ():
        m = len(d.word)
        for locus in itertools.combinations(range(m), 3):
            try:
                tri = _triangle(d, locus)
            except NotApplicable:
                continue
            res.checked += 1
            want = classify_triangle(d, locus)
            got = None if tri.orientation == 0 else ("delta" if tri.cyclic else "R3")
            tally[str(got)] += 1
            if want != got:
                res.fail(f"{d} {locus}: rule={got} geometry={want}")
    res.tally = dict(tally)
    return res


def check_constructive(max_n: int) -> PropositionResult:
    from .search import constructive_unknot, replay

    res = PropositionResult("constructive unknotting reaches a parallel diagram")
    worst = 0
    for d in _all_upto(max_n):
        witness, count = constructive_unknot(d)
        res.checked += 1
        worst = max(worst, count)
        if not is_parallel(replay(d, witness)) or count > d.n * (d.n - 1):
            res.fail(f"{d}: count {count}")
    res.tally = {"max_count": worst}
    return res


def check_forbidden_via_ras(max_n: int) -> PropositionResult:
    from .planar import ras_for_forbidden

    res = PropositionResult("one region arc shift realizes a forbidden move")
    tally: Counter[str] = Counter()
    for d in _all_upto(max_n):
        m = len(d.word)
        for i in range(m):
            a, b = d.word[i], d.word[(i + 1) % m]
            if a.chord == b.chord:
                continue
            want = forbidden(d, i)[0] if a.role is b.role else forbidden_detour(d, i)[0]
            tally["same_role" if a.role is b.role else "detour"] += 1
            res.checked += 1
            if ras_for_forbidden(d, i)[0] != want:
                res.fail(f"{d} at {i}")
    res.tally = dict(tally)
    return res


def check_forbidden_to_ras(max_n: int, max_cost: int = 2) -> PropositionResult:
    from .search import SearchConfig, forbidden_to_ras, replay, unknotting_search

    res = PropositionResult("forbidden witnesses convert to RAS witnesses")
    for d in _all_upto(max_n, canonical_only=True):
        r = unknotting_search(d, SearchConfig(MoveFamily.FORBIDDEN, d.n, max_cost=max_cost))
        if r.upper_bound is None:
            continue
        res.checked += 1
        ras = forbidden_to_ras(d, r.witness)
        paid = sum(1 for m in ras if m.kind is MoveKind.RAS_ADJACENT)
        if paid > r.upper_bound or not is_parallel(replay(d, ras)):
            res.fail(f"{d}: {[m.spec for m in ras]}")
    return res


def check_planar(max_n: int) -> PropositionResult:
    from .planar import read_gauss, realize

    res = PropositionResult("planar realization round-trips and satisfies Euler")
    for d in _all_upto(max_n):
        p = realize(d)
        res.checked += 1
        try:
            p.validate()
        except ValueError as exc:
            res.fail(f"{d}: {exc}")
            continue
        if read_gauss(p) != d:
            res.fail(f"{d}: round trip")
    return res


SUITE = (
    check_involution,
    check_odd_writhe_law,
    check_reidemeister_invariance,
    check_composites,
    check_triangle_geometry,
    check_constructive,
    check_forbidden_via_ras,
    check_forbidden_to_ras,
    check_planar,
)


def proposition_suite(max_n: int) -> list[PropositionResult]:
    if max_n > HARD_CAP:
        raise CapExceeded(f"max_n={max_n} exceeds the enumeration cap {HARD_CAP}")
    return [check(max_n) for check in SUITE]
