"""Gauss diagrams of virtual knots and their text encoding.

A diagram is a basepointed cyclic word of chord endpoints.  Each chord is a
classical crossing; its Tail sits on the overpass and its Head on the
underpass.  Every chord carries a sign (the local writhe).

Gauss code grammar::

    code  := "" | token ("," token)*
    token := ("O" | "U") int sign      e.g. "O1-", "U12+"
"""

from __future__ import annotations

import re
from enum import Enum, IntEnum
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple

__all__ = [
    "Role",
    "Parity",
    "Endpoint",
    "GaussDiagram",
    "GaussError",
    "BadToken",
    "OddOccurrence",
    "SignMismatch",
    "UnknownChord",
    "parse",
    "render",
    "canonicalize",
    "canonical_code",
    "interleaves",
    "parity",
    "parity_table",
    "is_parallel",
]


class GaussError(ValueError):
    """Base class for malformed Gauss codes and diagrams."""


class BadToken(GaussError):
    def __init__(self, token: str, index: int):
        super().__init__(f"bad token {token!r} at token {index}")
        self.token = token
        self.index = index


class OddOccurrence(GaussError):
    def __init__(self, chord: int, index: int | None = None):
        where = f" at token {index}" if index is not None else ""
        super().__init__(f"chord {chord} does not occur exactly once as O and once as U{where}")
        self.chord = chord
        self.index = index


class SignMismatch(GaussError):
    def __init__(self, chord: int, index: int | None = None):
        where = f" at token {index}" if index is not None else ""
        super().__init__(f"the two tokens of chord {chord} disagree in sign{where}")
        self.chord = chord
        self.index = index


class UnknownChord(GaussError, KeyError):
    def __init__(self, chord: int):
        GaussError.__init__(self, f"chord {chord} is not in the diagram")
        self.chord = chord

    __str__ = GaussError.__str__


class Role(IntEnum):
    TAIL = 0  # overpass, written "O"
    HEAD = 1  # underpass, written "U"

    @property
    def letter(self) -> str:
        return "O" if self is Role.TAIL else "U"


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"


class Endpoint(NamedTuple):
    chord: int
    role: Role

    def __str__(self) -> str:
        return f"{'T' if self.role is Role.TAIL else 'H'}{self.chord}"


TAIL, HEAD = Role.TAIL, Role.HEAD


class GaussDiagram:
    """Immutable signed Gauss diagram.

    ``word`` lists the 2n endpoints from the basepoint; ``signs`` maps each
    chord id to +1 or -1.
    """

    __slots__ = ("_word", "_signs", "_hash", "_pos")

    def __init__(self, word: Iterable[Endpoint | tuple[int, int]], signs: Mapping[int, int]):
        w = tuple(Endpoint(int(c), Role(r)) for c, r in word)
        s = {int(k): int(v) for k, v in signs.items()}
        _validate(w, s)
        self._word = w
        self._signs = s
        self._hash = None
        self._pos = None

    @classmethod
    def _trusted(cls, word: tuple[Endpoint, ...], signs: dict[int, int]) -> "GaussDiagram":
        # callers guarantee validity; skips the O(n) checks on hot paths
        obj = cls.__new__(cls)
        obj._word = word
        obj._signs = signs
        obj._hash = None
        obj._pos = None
        return obj

    @classmethod
    def empty(cls) -> "GaussDiagram":
        return cls._trusted((), {})

    @property
    def word(self) -> tuple[Endpoint, ...]:
        return self._word

    @property
    def signs(self) -> Mapping[int, int]:
        return dict(self._signs)

    def sign(self, chord: int) -> int:
        try:
            return self._signs[chord]
        except KeyError:
            raise UnknownChord(chord) from None

    @property
    def n(self) -> int:
        return len(self._signs)

    def __len__(self) -> int:
        return len(self._word)

    def chords(self) -> list[int]:
        """Chord ids in order of first appearance along the word."""
        seen: dict[int, None] = {}
        for c, _ in self._word:
            seen.setdefault(c, None)
        return list(seen)

    def positions(self, chord: int) -> tuple[int, int]:
        """(tail position, head position) of ``chord``."""
        if self._pos is None:
            pos: dict[int, list[int]] = {}
            for i, (c, r) in enumerate(self._word):
                pos.setdefault(c, [0, 0])[r] = i
            self._pos = {c: (p[0], p[1]) for c, p in pos.items()}
        try:
            return self._pos[chord]
        except KeyError:
            raise UnknownChord(chord) from None

    def span(self, chord: int) -> tuple[int, int]:
        """Sorted positions of the two endpoints of ``chord``."""
        t, h = self.positions(chord)
        return (t, h) if t < h else (h, t)

    def rotate(self, r: int) -> "GaussDiagram":
        """Move the basepoint ``r`` steps forward."""
        if not self._word:
            return self
        r %= len(self._word)
        return GaussDiagram._trusted(self._word[r:] + self._word[:r], self._signs)

    def relabel(self, mapping: Mapping[int, int]) -> "GaussDiagram":
        word = tuple(Endpoint(mapping[c], r) for c, r in self._word)
        return GaussDiagram(word, {mapping[c]: s for c, s in self._signs.items()})

    def with_signs(self, updates: Mapping[int, int]) -> "GaussDiagram":
        signs = dict(self._signs)
        for c, s in updates.items():
            if c not in signs:
                raise UnknownChord(c)
            signs[c] = s
        return GaussDiagram._trusted(self._word, signs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussDiagram):
            return NotImplemented
        return self._word == other._word and self._signs == other._signs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._word, tuple(sorted(self._signs.items()))))
        return self._hash

    def __iter__(self) -> Iterator[Endpoint]:
        return iter(self._word)

    def __repr__(self) -> str:
        return f"GaussDiagram({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


def _validate(word: tuple[Endpoint, ...], signs: dict[int, int]) -> None:
    seen: dict[int, list[int]] = {}
    for c, r in word:
        if c <= 0:
            raise GaussError(f"chord ids must be positive, got {c}")
        seen.setdefault(c, [0, 0])[r] += 1
    for c, (tails, heads) in seen.items():
        if tails != 1 or heads != 1:
            raise OddOccurrence(c)
    if set(seen) != set(signs):
        raise GaussError("sign table does not match the chords of the word")
    for c, s in signs.items():
        if s not in (1, -1):
            raise GaussError(f"sign of chord {c} must be +1 or -1, got {s}")


_TOKEN = re.compile(r"([OU])([1-9][0-9]*)([+-])")


def parse(text: str) -> GaussDiagram:
    """Parse a Gauss code.  Whitespace after commas and a trailing newline are tolerated."""
    text = text.rstrip("\r\n")
    if text == "":
        return GaussDiagram.empty()
    word: list[Endpoint] = []
    signs: dict[int, int] = {}
    counts: dict[int, list[int]] = {}
    for index, raw in enumerate(text.split(","), start=1):
        tok = raw.lstrip(" \t") if index > 1 else raw
        m = _TOKEN.fullmatch(tok)
        if m is None:
            raise BadToken(raw, index)
        role = TAIL if m.group(1) == "O" else HEAD
        chord = int(m.group(2))
        sign = 1 if m.group(3) == "+" else -1
        c = counts.setdefault(chord, [0, 0])
        c[role] += 1
        if c[role] > 1:
            raise OddOccurrence(chord, index)
        if chord in signs and signs[chord] != sign:
            raise SignMismatch(chord, index)
        signs[chord] = sign
        word.append(Endpoint(chord, role))
    for chord, (tails, heads) in counts.items():
        if tails != 1 or heads != 1:
            raise OddOccurrence(chord)
    return GaussDiagram._trusted(tuple(word), signs)


def render(d: GaussDiagram) -> str:
    s = d._signs
    return ",".join(
        f"{'O' if r is TAIL else 'U'}{c}{'+' if s[c] > 0 else '-'}" for c, r in d._word
    )


def _relabeled(word: tuple[Endpoint, ...], signs: dict[int, int]) -> tuple[str, tuple[Endpoint, ...], dict[int, int]]:
    label: dict[int, int] = {}
    out = []
    toks = []
    for c, r in word:
        k = label.get(c)
        if k is None:
            k = label[c] = len(label) + 1
        out.append(Endpoint(k, r))
        toks.append(f"{'O' if r is TAIL else 'U'}{k}{'+' if signs[c] > 0 else '-'}")
    return ",".join(toks), tuple(out), {label[c]: s for c, s in signs.items()}


@lru_cache(maxsize=1 << 18)
def _canonical(d: GaussDiagram) -> tuple[str, GaussDiagram]:
    word = d._word
    if not word:
        return "", d
    best = None
    m = len(word)
    for r in range(m):
        # the least code always opens with "O1"; rotations starting at a Head cannot win
        if word[r].role is not TAIL:
            continue
        code, w, s = _relabeled(word[r:] + word[:r], d._signs)
        if best is None or code < best[0]:
            best = (code, w, s)
    code, w, s = best
    return code, GaussDiagram._trusted(w, s)


def canonicalize(d: GaussDiagram) -> GaussDiagram:
    """Rotation-and-relabeling representative with the least rendered code."""
    return _canonical(d)[1]


def canonical_code(d: GaussDiagram) -> str:
    return _canonical(d)[0]


def interleaves(d: GaussDiagram, a: int, b: int) -> bool:
    """True when the chords ``a`` and ``b`` cross."""
    if a == b:
        raise ValueError("interleaves needs two distinct chords")
    p, q = d.span(a)
    r, s = d.span(b)
    return (p < r < q) != (p < s < q)


def _crossing_counts(d: GaussDiagram) -> dict[int, int]:
    spans = [(c, d.span(c)) for c in d.chords()]
    counts = {c: 0 for c, _ in spans}
    for i, (a, (p, q)) in enumerate(spans):
        for b, (r, s) in spans[i + 1:]:
            if (p < r < q) != (p < s < q):
                counts[a] += 1
                counts[b] += 1
    return counts


def parity(d: GaussDiagram, c: int) -> Parity:
    p, q = d.span(c)
    k = 0
    for b in d.chords():
        if b != c:
            r, s = d.span(b)
            k += (p < r < q) != (p < s < q)
    return Parity.ODD if k % 2 else Parity.EVEN


def parity_table(d: GaussDiagram) -> dict[int, Parity]:
    return {c: (Parity.ODD if k % 2 else Parity.EVEN) for c, k in _crossing_counts(d).items()}


def is_parallel(d: GaussDiagram) -> bool:
    """No two chords cross; such a diagram is the trivial knot."""
    # stack check: chords are pairwise non-crossing iff the word is a balanced bracketing
    stack: list[int] = []
    open_: set[int] = set()
    for c, _ in d._word:
        if c in open_:
            if stack[-1] != c:
                return False
            stack.pop()
            open_.discard(c)
        else:
            stack.append(c)
            open_.add(c)
    return True
