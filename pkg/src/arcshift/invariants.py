"""Odd writhe, writhe and the arc shift lower bound.

A chord is odd when it crosses an odd number of other chords.  The odd
writhe J is the sum of the signs of the odd chords; it is a virtual knot
invariant and vanishes on classical knots, so J != 0 certifies a
non-classical (and non-trivial) knot.  Each arc shift moves J by at most 2,
which gives ``ceil(|J| / 2)`` as a lower bound on the arc shift number.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gauss import GaussDiagram, Parity, parity_table, render

__all__ = ["InvariantReport", "odd_writhe", "writhe", "arc_shift_lower_bound", "report"]


def odd_writhe(d: GaussDiagram) -> int:
    table = parity_table(d)
    return sum(d.sign(c) for c, p in table.items() if p is Parity.ODD)


def writhe(d: GaussDiagram) -> int:
    return sum(d.signs.values())


def _half_up(j: int) -> int:
    return -(-abs(j) // 2)


def arc_shift_lower_bound(d: GaussDiagram) -> int:
    return _half_up(odd_writhe(d))


@dataclass(frozen=True)
class InvariantReport:
    code: str
    chord_count: int
    writhe: int
    odd_writhe: int
    parity_table: dict[int, Parity] = field(default_factory=dict)
    arc_shift_lower_bound: int = 0

    def to_json(self) -> dict:
        return {
            "code": self.code,
            "chords": self.chord_count,
            "writhe": self.writhe,
            "odd_writhe": self.odd_writhe,
            "parity": {str(c): p.value for c, p in sorted(self.parity_table.items())},
            "arc_shift_lower_bound": self.arc_shift_lower_bound,
        }

    def tsv_row(self, name: str) -> str:
        return "\t".join(
            str(x) for x in (name, self.chord_count, self.writhe, self.odd_writhe, self.arc_shift_lower_bound)
        )


TSV_HEADER = "name\tchords\twrithe\todd_writhe\tbound"


def report(d: GaussDiagram) -> InvariantReport:
    table = parity_table(d)
    signs = d.signs
    j = sum(signs[c] for c, p in table.items() if p is Parity.ODD)
    return InvariantReport(
        code=render(d),
        chord_count=d.n,
        writhe=sum(signs.values()),
        odd_writhe=j,
        parity_table=table,
        arc_shift_lower_bound=_half_up(j),
    )
