"""Finite quandles as Cayley tables, Galkin quandles, morphisms and isomorphism search."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from .abelian import GeneralAbelianGroup, PointedGroup

# mu(d) and tau(d) for d = x - y in Z_3
MU = np.array([2, -1, -1], dtype=np.int64)
TAU = np.array([0, 0, 1], dtype=np.int64)


class MalformedTableError(ValueError):
    pass


class NotAQuandleError(ValueError):
    pass


class MorphismError(ValueError):
    pass


class Verdict(NamedTuple):
    ok: bool
    axiom: Optional[str] = None  # "i", "ii" or "iii"
    witness: Optional[tuple[int, ...]] = None

    def __str__(self):
        if self.ok:
            return "PASS"
        names = {"i": "x", "ii": "y", "iii": "x y z"}[self.axiom].split()
        wit = " ".join(f"{k}={v}" for k, v in zip(names, self.witness))
        return f"FAIL axiom ({self.axiom}) {wit}"


def _as_table(table) -> np.ndarray:
    try:
        arr = np.array(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise MalformedTableError(f"table is not a rectangular integer array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTableError(f"table must be a nonempty square array, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedTableError(f"table entries must lie in [0, {n})")
    return arr


def is_quandle(table) -> Verdict:
    """Check idempotency, right invertibility and right self-distributivity.

    Returns the first violated axiom with a witness; violations are searched
    in the order (i), (ii), (iii) and lexicographically within each.
    """
    t = _as_table(table)
    n = t.shape[0]
    diag = t[np.arange(n), np.arange(n)]
    bad = np.flatnonzero(diag != np.arange(n))
    if bad.size:
        return Verdict(False, "i", (int(bad[0]),))
    not_perm = np.flatnonzero((np.sort(t, axis=0) != np.arange(n)[:, None]).any(axis=0))
    if not_perm.size:
        return Verdict(False, "ii", (int(not_perm[0]),))
    small = t.astype(np.int32)
    # lhs[x, y, z] = (x*y)*z ; rhs[x, y, z] = (x*z)*(y*z)
    lhs = small[small, :]
    rhs = small[small[:, None, :], small[None, :, :]]
    if np.array_equal(lhs, rhs):
        return Verdict(True)
    return Verdict(False, "iii", tuple(int(v) for v in np.argwhere(lhs != rhs)[0]))


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    table: np.ndarray
    labels: Optional[tuple] = field(default=None)

    def __post_init__(self):
        t = _as_table(self.table)
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    @classmethod
    def from_table(cls, table, labels=None) -> "FiniteQuandle":
        verdict = is_quandle(table)
        if not verdict.ok:
            raise NotAQuandleError(str(verdict))
        return cls(table, labels)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def op(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())


def dihedral_r3() -> FiniteQuandle:
    return FiniteQuandle.from_table([[(2 * y - x) % 3 for y in range(3)] for x in range(3)])


def galkin(A: Union[GeneralAbelianGroup, PointedGroup, Sequence[int]], c=None) -> FiniteQuandle:
    """The Galkin quandle G(A, c) on Z_3 x A.

    Elements are indexed lexicographically by (x, coordinates of a).  ``A`` may
    be a pointed group (then ``c`` defaults to its point) or a tuple of cyclic
    orders.
    """
    if isinstance(A, PointedGroup):
        A = A.to_general()
    if isinstance(A, GeneralAbelianGroup):
        orders, point = A.orders, A.point
    else:
        orders, point = tuple(A), None
    if c is not None:
        c = tuple(c)
        if len(c) != len(orders) or any(not 0 <= ci < m for ci, m in zip(c, orders)):
            raise ValueError(f"c = {c} is not an element of Z_{orders}")
        point = c
    if point is None:
        point = (0,) * len(orders)

    mods = np.array(orders, dtype=np.int64)
    group = np.array(list(itertools.product(*(range(m) for m in orders))), dtype=np.int64)
    group = group.reshape(len(group), len(orders))
    size_a = len(group)
    radix = np.ones(len(orders), dtype=np.int64)
    for d in range(len(orders) - 2, -1, -1):
        radix[d] = radix[d + 1] * mods[d + 1]

    xs = np.repeat(np.arange(3), size_a)
    coords = np.tile(group, (3, 1))
    diff = (xs[:, None] - xs[None, :]) % 3
    new_x = (-xs[:, None] - xs[None, :]) % 3
    cvec = np.array(point, dtype=np.int64)
    new_a = (
        -coords[:, None, :]
        + MU[diff][:, :, None] * coords[None, :, :]
        + TAU[diff][:, :, None] * cvec
    )
    if len(orders):
        new_a %= mods
    table = new_x * size_a + (new_a @ radix if len(orders) else 0)
    labels = tuple((int(x), tuple(int(v) for v in a)) for x, a in zip(xs, coords))
    return FiniteQuandle.from_table(table, labels)


def right_inverse(Q: FiniteQuandle) -> np.ndarray:
    """Table of *^-1, where (x*y)*^-1 y = x."""
    t = Q.table
    n = Q.size
    inv = np.empty_like(t)
    cols = np.broadcast_to(np.arange(n), (n, n))
    inv[t, cols] = np.arange(n)[:, None]
    return inv


@dataclass(frozen=True)
class QuandleMap:
    domain_size: int
    codomain_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.domain_size:
            raise ValueError("value table length must equal the domain size")
        if any(not 0 <= v < self.codomain_size for v in self.values):
            raise ValueError("values must lie in the codomain")

    def __call__(self, u: int) -> int:
        return self.values[u]

    def compose(self, first: "QuandleMap") -> "QuandleMap":
        """self after first."""
        if first.codomain_size != self.domain_size:
            raise ValueError("maps are not composable")
        return QuandleMap(first.domain_size, self.codomain_size, tuple(self.values[v] for v in first.values))


def is_homomorphism(h: Sequence[int], Q1: FiniteQuandle, Q2: FiniteQuandle) -> bool:
    h = np.asarray(h if not isinstance(h, QuandleMap) else h.values, dtype=np.int64)
    return bool(np.array_equal(h[Q1.table], Q2.table[h[:, None], h[None, :]]))


GroupMap = Union[Callable[[tuple[int, ...]], Sequence[int]], Mapping[tuple[int, ...], Sequence[int]]]


def linear_map(images: Sequence[Sequence[int]], target_orders: Sequence[int]) -> Callable:
    """Coordinate map sending basis vector c of the source to ``images[c]``."""

    def f(a):
        return tuple(
            sum(ac * img[d] for ac, img in zip(a, images)) % m for d, m in enumerate(target_orders)
        )

    return f


def induced_hom(f: GroupMap, source: GeneralAbelianGroup, target: GeneralAbelianGroup) -> QuandleMap:
    """The quandle map G(A, c) -> G(A', c') given by (x, a) -> (x, f(a))."""
    fn = f.__getitem__ if isinstance(f, Mapping) else f
    elems = list(source.elements())
    image = {a: tuple(int(v) % m for v, m in zip(fn(a), target.orders)) for a in elems}
    for a in elems:
        if len(fn(a)) != len(target.orders):
            raise MorphismError(f"f({a}) has the wrong number of coordinates")
    for a, b in itertools.product(elems, repeat=2):
        s = tuple((x + y) % m for x, y, m in zip(a, b, source.orders))
        t = tuple((x + y) % m for x, y, m in zip(image[a], image[b], target.orders))
        if image[s] != t:
            raise MorphismError(f"f is not a homomorphism: f({a}+{b}) != f({a})+f({b})")
    if image[source.point] != target.point:
        raise MorphismError(f"f(c) = {image[source.point]} but c' = {target.point}")

    target_index = {a: n for n, a in enumerate(target.elements())}
    size_a, size_t = len(elems), len(target_index)
    values = tuple(x * size_t + target_index[image[a]] for x in range(3) for a in elems)
    return QuandleMap(3 * size_a, 3 * size_t, values)


# -- isomorphism search -----------------------------------------------------------


def _cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, v = 0, start
        while not seen[v]:
            seen[v] = True
            v = perm[v]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def element_profiles(table: Sequence[Sequence[int]]) -> list[tuple]:
    """Per-element invariants preserved by any isomorphism.

    For y: cycle type of the right translation x -> x*y and the fibre sizes of
    the left translation x -> y*x.
    """
    n = len(table)
    out = []
    for y in range(n):
        column = [table[x][y] for x in range(n)]
        fibres = tuple(sorted(np.bincount(table[y], minlength=n).tolist()))
        out.append((_cycle_type(column), fibres))
    return out


def quandle_iso(Q1: FiniteQuandle, Q2: FiniteQuandle, prune: bool = True) -> Optional[tuple[int, ...]]:
    """First isomorphism Q1 -> Q2 in lexicographic order of the image vector, or None.

    Branches on the lowest unassigned element and propagates every value forced
    by h(u*v) = h(u)*h(v).  With ``prune`` candidate images are restricted to
    elements with matching profiles; pruning never removes a valid isomorphism.
    """
    if Q1.size != Q2.size:
        return None
    n = Q1.size
    t1, t2 = Q1.table.tolist(), Q2.table.tolist()
    if prune:
        p1, p2 = element_profiles(t1), element_profiles(t2)
        if sorted(p1) != sorted(p2):
            return None
        candidates = [[v for v in range(n) if p2[v] == p1[u]] for u in range(n)]
    else:
        p1 = p2 = None
        candidates = [list(range(n))] * n

    h = [-1] * n
    hinv = [-1] * n
    assigned: list[int] = []

    def propagate(u: int, v: int) -> bool:
        stack = [(u, v)]
        while stack:
            a, b = stack.pop()
            if h[a] != -1:
                if h[a] != b:
                    return False
                continue
            if hinv[b] != -1 or (p1 is not None and p1[a] != p2[b]):
                return False
            h[a], hinv[b] = b, a
            assigned.append(a)
            for w in assigned:
                for x, y in ((a, w), (w, a)):
                    z, img = t1[x][y], t2[h[x]][h[y]]
                    if h[z] == -1:
                        stack.append((z, img))
                    elif h[z] != img:
                        return False
        return True

    def undo(mark: int) -> None:
        while len(assigned) > mark:
            a = assigned.pop()
            hinv[h[a]] = -1
            h[a] = -1

    def search(lowest: int) -> bool:
        while lowest < n and h[lowest] != -1:
            lowest += 1
        if lowest == n:
            return True
        for v in candidates[lowest]:
            if hinv[v] != -1:
                continue
            mark = len(assigned)
            if propagate(lowest, v) and search(lowest + 1):
                return True
            undo(mark)
        return False

    return tuple(h) if search(0) else None


# -- file formats -------------------------------------------------------------------


def format_table(Q: FiniteQuandle) -> str:
    lines = [str(Q.size)] + [" ".join(str(v) for v in row) for row in Q.table.tolist()]
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedTableError("empty table file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise MalformedTableError(f"non-integer entry: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise MalformedTableError(f"expected {n} rows of {n} entries")
    return _as_table(rows)


def to_json(Q: FiniteQuandle) -> dict:
    data = {"size": Q.size, "table": Q.table.tolist()}
    if Q.labels is not None:
        data["labels"] = [[x, list(a)] for x, a in Q.labels]
    return data


def from_json(data: dict) -> FiniteQuandle:
    table = _as_table(data["table"])
    if data.get("size", table.shape[0]) != table.shape[0]:
        raise MalformedTableError("size field disagrees with the table")
    labels = data.get("labels")
    if labels is not None:
        labels = tuple((int(x), tuple(a)) for x, a in labels)
    return FiniteQuandle.from_table(table, labels)


def read_quandle(path: Union[str, Path]) -> FiniteQuandle:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return from_json(json.loads(text))
    return FiniteQuandle.from_table(parse_table(text))


def write_quandle(Q: FiniteQuandle, path: Union[str, Path]) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(to_json(Q)) + "\n", encoding="utf-8")
    else:
        path.write_text(format_table(Q), encoding="utf-8")
