"""Knot diagrams as crossing lists, and quandle coloring counts.

Text format::

    arcs <N>
    <sign> <over> <under_in> <under_out>
    ...

with sign ``+`` or ``-`` and 0-based arc indices.  At a ``+`` crossing the
outgoing under-arc is colored ``under_in * over``; at a ``-`` crossing it is
colored ``under_in *^-1 over``.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .quandle import FiniteQuandle, right_inverse


class DiagramSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DiagramError(ValueError):
    pass


class Crossing(NamedTuple):
    sign: int
    over: int
    under_in: int
    under_out: int


@dataclass(frozen=True)
class KnotDiagram:
    arc_count: int
    crossings: tuple[Crossing, ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.arc_count < 0:
            raise DiagramError("arc count must be nonnegative")
        for n, c in enumerate(self.crossings):
            if c.sign not in (1, -1):
                raise DiagramError(f"crossing {n}: sign must be +1 or -1")
            for role in ("over", "under_in", "under_out"):
                arc = getattr(c, role)
                if not 0 <= arc < self.arc_count:
                    raise DiagramError(f"crossing {n}: {role} arc {arc} out of range [0, {self.arc_count})")

    def mirror(self) -> "KnotDiagram":
        """Same arcs with every crossing sign flipped."""
        flipped = tuple(c._replace(sign=-c.sign) for c in self.crossings)
        return KnotDiagram(self.arc_count, flipped, self.name)


def parse_diagram(text: str, name: str = "") -> KnotDiagram:
    arc_count = None
    crossings = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        tokens = line.split()
        if arc_count is None:
            if tokens[0] != "arcs" or len(tokens) != 2:
                raise DiagramSyntaxError("expected 'arcs <N>'", lineno, col)
            if not tokens[1].isdigit():
                raise DiagramSyntaxError(f"arc count must be a nonnegative integer, got {tokens[1]!r}", lineno, line.index(tokens[1], col - 1) + 1)
            arc_count = int(tokens[1])
            continue
        if len(tokens) != 4:
            raise DiagramSyntaxError(f"expected '<sign> <over> <under_in> <under_out>', got {len(tokens)} fields", lineno, col)
        if tokens[0] not in ("+", "-"):
            raise DiagramSyntaxError(f"sign must be '+' or '-', got {tokens[0]!r}", lineno, col)
        values = []
        pos = col - 1 + len(tokens[0])
        for tok in tokens[1:]:
            pos = line.index(tok, pos)
            if not tok.isdigit():
                raise DiagramSyntaxError(f"arc index must be a nonnegative integer, got {tok!r}", lineno, pos + 1)
            values.append(int(tok))
            pos += len(tok)
        crossings.append(Crossing(1 if tokens[0] == "+" else -1, *values))
    if arc_count is None:
        raise DiagramSyntaxError("missing 'arcs <N>' header", 1, 1)
    return KnotDiagram(arc_count, tuple(crossings), name)


def format_diagram(d: KnotDiagram) -> str:
    lines = [f"arcs {d.arc_count}"]
    for c in d.crossings:
        lines.append(f"{'+' if c.sign > 0 else '-'} {c.over} {c.under_in} {c.under_out}")
    return "\n".join(lines) + "\n"


def diagram_from_braid(word: Sequence[int], strands: int, name: str = "") -> KnotDiagram:
    """Closed-braid diagram.  Generator +i (1-based) sends the strand at
    position i under the strand at position i+1; -i is its inverse."""
    positions = list(range(strands))
    next_arc = strands
    crossings = []
    for g in word:
        i = abs(g) - 1
        left, right = positions[i], positions[i + 1]
        new = next_arc
        next_arc += 1
        if g > 0:
            crossings.append(Crossing(1, right, left, new))
            positions[i], positions[i + 1] = right, new
        else:
            crossings.append(Crossing(-1, left, right, new))
            positions[i], positions[i + 1] = new, left
    # closing the braid identifies bottom arcs with top arcs
    parent = list(range(next_arc))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for top, bottom in enumerate(positions):
        a, b = find(top), find(bottom)
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(a) for a in range(next_arc)})
    renumber = {r: n for n, r in enumerate(roots)}
    arc = lambda a: renumber[find(a)]  # noqa: E731
    return KnotDiagram(
        len(roots),
        tuple(Crossing(c.sign, arc(c.over), arc(c.under_in), arc(c.under_out)) for c in crossings),
        name,
    )


_BUILTIN_TEXT = {
    "unknot": "arcs 1\n",
    "trefoil": "arcs 3\n+ 2 0 1\n+ 0 1 2\n+ 1 2 0\n",
}
# closed braids: trefoil_alt is the stabilized trefoil s1^3 s2 on three strands,
# figure_eight is (s1 s2^-1)^2
_BUILTIN_BRAIDS = {
    "trefoil_alt": ((1, 1, 1, 2), 3),
    "figure_eight": ((1, -2, 1, -2), 3),
}
BUILTIN_KNOTS = ("unknot", "trefoil", "trefoil_alt", "figure_eight")


def builtin_knot(name: str) -> KnotDiagram:
    if name in _BUILTIN_TEXT:
        return parse_diagram(_BUILTIN_TEXT[name], name)
    if name in _BUILTIN_BRAIDS:
        word, strands = _BUILTIN_BRAIDS[name]
        return diagram_from_braid(word, strands, name)
    raise KeyError(f"unknown knot {name!r}; choose from {', '.join(BUILTIN_KNOTS)}")


class ColoringCount(NamedTuple):
    quandle_size: int
    diagram: str
    count: int


def _tables(Q) -> tuple[list[list[int]], list[list[int]]]:
    if not isinstance(Q, FiniteQuandle):
        Q = FiniteQuandle.from_table(Q)
    return Q.table.tolist(), right_inverse(Q).tolist()


def count_colorings(d: KnotDiagram, Q) -> ColoringCount:
    """Number of arc colorings by Q respecting every crossing.

    Backtracking: color the lowest-index uncolored arc, then propagate every
    color forced by a crossing whose over-arc and one under-arc are known.
    """
    op, inv = _tables(Q)
    n = len(op)
    colors = [-1] * d.arc_count
    touching: list[list[Crossing]] = [[] for _ in range(d.arc_count)]
    for c in d.crossings:
        for a in {c.over, c.under_in, c.under_out}:
            touching[a].append(c)

    def settle(c: Crossing, trail: list[int]) -> bool:
        o, i, out = colors[c.over], colors[c.under_in], colors[c.under_out]
        if o < 0:
            return True
        fwd, back = (op, inv) if c.sign > 0 else (inv, op)
        if i >= 0:
            want = fwd[i][o]
            if out < 0:
                return assign(c.under_out, want, trail)
            return out == want
        if out >= 0:
            return assign(c.under_in, back[out][o], trail)
        return True

    def assign(arc: int, color: int, trail: list[int]) -> bool:
        colors[arc] = color
        trail.append(arc)
        return all(settle(c, trail) for c in touching[arc])

    def search(lowest: int) -> int:
        while lowest < d.arc_count and colors[lowest] >= 0:
            lowest += 1
        if lowest == d.arc_count:
            return 1
        total = 0
        for color in range(n):
            trail: list[int] = []
            if assign(lowest, color, trail):
                total += search(lowest + 1)
            for arc in trail:
                colors[arc] = -1
        return total

    return ColoringCount(n, d.name, search(0))


def naive_count_colorings(d: KnotDiagram, Q) -> int:
    """Exhaustive n^arcs count; reference for count_colorings."""
    op, inv = _tables(Q)
    total = 0
    for colors in itertools.product(range(len(op)), repeat=d.arc_count):
        if all(
            colors[c.under_out] == (op if c.sign > 0 else inv)[colors[c.under_in]][colors[c.over]]
            for c in d.crossings
        ):
            total += 1
    return total
