"""Finite pointed abelian q-groups and their automorphism orbits.

A q-group is stored in the normal form Z_{q^e1}^n1 + ... + Z_{q^ek}^nk with
1 <= e1 < ... < ek.  Elements are tuples of blocks, block i being an
n_i-tuple of residues modulo q^{e_i}.  An orbit of Aut(A) is named by an
index sequence ((i_1, f_1), ..., (i_l, f_l)) with 1-based block indices.
"""

from __future__ import annotations

import itertools
import os
import random
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

import numpy as np

from .partitions import (
    Partition,
    enumerate_A,
    enumerate_B,
    enumerate_partitions,
    is_partition,
    is_strict,
)

GroupElement = tuple[tuple[int, ...], ...]
IndexSequence = tuple[tuple[int, int], ...]
Blocks = tuple[tuple[int, int], ...]

DEFAULT_ORACLE_BOUND = 256
# largest endomorphism ring the oracle enumerates in full; beyond this it
# closes orbits under elementary automorphisms instead
FULL_ENUMERATION_LIMIT = 2**15


class OracleBoundError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def valuation(x: int, q: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while x % q == 0:
        x //= q
        v += 1
    return v


@dataclass(frozen=True)
class GroupShape:
    """Z_{q^e1}^n1 + ... + Z_{q^ek}^nk; blocks are normalized on construction."""

    q: int
    blocks: Blocks = ()

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"q must be prime, got {self.q}")
        merged: Counter[int] = Counter()
        for e, n in self.blocks:
            if e < 1 or n < 1:
                raise ValueError(f"block exponents and multiplicities must be positive, got ({e},{n})")
            merged[e] += n
        object.__setattr__(self, "blocks", tuple(sorted(merged.items())))

    @classmethod
    def from_exponents(cls, q: int, exponents: Iterable[int]) -> "GroupShape":
        return cls(q, tuple((e, 1) for e in exponents))

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.blocks)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.blocks)

    @property
    def log_order(self) -> int:
        return sum(e * n for e, n in self.blocks)

    @property
    def order(self) -> int:
        return self.q**self.log_order

    @property
    def coordinate_exponents(self) -> tuple[int, ...]:
        return tuple(e for e, n in self.blocks for _ in range(n))

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.q**e for e in self.coordinate_exponents)

    def zero(self) -> GroupElement:
        return tuple((0,) * n for _, n in self.blocks)

    def element(self, coords: Sequence[Sequence[int]]) -> GroupElement:
        if len(coords) != len(self.blocks):
            raise ValueError(f"expected {len(self.blocks)} blocks, got {len(coords)}")
        out = []
        for (e, n), block in zip(self.blocks, coords):
            if len(block) != n:
                raise ValueError(f"block of exponent {e} needs {n} coordinates, got {len(block)}")
            out.append(tuple(int(c) % self.q**e for c in block))
        return tuple(out)

    def flatten(self, g: GroupElement) -> tuple[int, ...]:
        return tuple(c for block in g for c in block)

    def unflatten(self, flat: Sequence[int]) -> GroupElement:
        out, pos = [], 0
        for _, n in self.blocks:
            out.append(tuple(flat[pos : pos + n]))
            pos += n
        return tuple(out)

    def elements(self) -> Iterator[GroupElement]:
        """All elements, lexicographic in the flattened coordinates."""
        for flat in itertools.product(*(range(m) for m in self.moduli)):
            yield self.unflatten(flat)


@dataclass(frozen=True)
class PointedGroup:
    shape: GroupShape
    point: GroupElement

    def __post_init__(self):
        object.__setattr__(self, "point", self.shape.element(self.point))

    def to_general(self) -> "GeneralAbelianGroup":
        return GeneralAbelianGroup(self.shape.moduli, self.shape.flatten(self.point))


@dataclass(frozen=True)
class GeneralAbelianGroup:
    """Z_{m_1} + ... + Z_{m_r} together with a distinguished element."""

    orders: tuple[int, ...] = ()
    point: tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(int(m) for m in self.orders)
        if any(m < 2 for m in orders):
            raise ValueError(f"cyclic orders must be >= 2, got {orders}")
        point = tuple(self.point) if self.point else (0,) * len(orders)
        if len(point) != len(orders):
            raise ValueError(f"point has {len(point)} coordinates, group has {len(orders)}")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "point", tuple(int(c) % m for c, m in zip(point, orders)))

    @property
    def order(self) -> int:
        out = 1
        for m in self.orders:
            out *= m
        return out

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.orders))


# -- index sequences ---------------------------------------------------------


def _check_exponents(e: Sequence[int]) -> None:
    if any(v < 1 for v in e) or any(e[s] >= e[s + 1] for s in range(len(e) - 1)):
        raise ValueError(f"exponents must be strictly increasing positive integers, got {tuple(e)}")


def is_index_sequence(s: Sequence[Sequence[int]], e: Sequence[int]) -> bool:
    k = len(e)
    for pos, (i, f) in enumerate(s):
        if not 1 <= i <= k or not 0 <= f <= e[i - 1] - 1:
            return False
        if pos:
            pi, pf = s[pos - 1]
            if i <= pi or not 0 < f - pf < e[i - 1] - e[pi - 1]:
                return False
    return True


def enumerate_index_sequences(e: Sequence[int]) -> list[IndexSequence]:
    """Every member of I(e_1, ..., e_k), in lexicographic order (empty first).

    >>> enumerate_index_sequences((1, 2))
    [(), ((1, 0),), ((2, 0),), ((2, 1),)]
    """
    _check_exponents(e)
    k = len(e)
    out: list[IndexSequence] = []

    def extend(prefix: IndexSequence) -> None:
        out.append(prefix)
        if prefix:
            last_i, last_f = prefix[-1]
        for i in range(prefix[-1][0] + 1 if prefix else 1, k + 1):
            for f in range(e[i - 1]):
                if prefix and not 0 < f - last_f < e[i - 1] - e[last_i - 1]:
                    continue
                extend(prefix + ((i, f),))

    extend(())
    return out


def count_index_sequences(e: Sequence[int]) -> int:
    """|I(e_1, ..., e_k)| by dynamic programming over the last pair."""
    _check_exponents(e)
    ending: dict[tuple[int, int], int] = {}
    for i in range(1, len(e) + 1):
        for f in range(e[i - 1]):
            total = 1
            for (pi, pf), cnt in ending.items():
                if pi < i and 0 < f - pf < e[i - 1] - e[pi - 1]:
                    total += cnt
            ending[(i, f)] = total
    return 1 + sum(ending.values())


def orbit_representative(s: IndexSequence, shape: GroupShape) -> GroupElement:
    """The element sum of q^{f_s} eps_{i_s}, eps_i being the first basis vector of block i."""
    if not is_index_sequence(s, shape.exponents):
        raise ValueError(f"{s} is not an index sequence for exponents {shape.exponents}")
    coords = [list(block) for block in shape.zero()]
    for i, f in s:
        coords[i - 1][0] = shape.q**f
    return shape.element(coords)


def canonicalize(g: PointedGroup, rng: Optional[random.Random] = None) -> IndexSequence:
    """Index sequence naming the Aut(A)-orbit of ``g.point``.

    Each homocyclic block collapses to q^t eps_i (t the least valuation of its
    coordinates); adjacent terms are then eliminated until the gap conditions
    hold.  The normal form is unique, so any elimination order gives the same
    answer; pass ``rng`` to pick eliminations at random.
    """
    shape, q = g.shape, g.shape.q
    e = shape.exponents
    terms: list[tuple[int, int]] = []
    for i, block in enumerate(g.point, start=1):
        nonzero = [c for c in block if c]
        if nonzero:
            terms.append((i, min(valuation(c, q) for c in nonzero)))

    while True:
        moves = []
        for s in range(len(terms) - 1):
            (i0, f0), (i1, f1) = terms[s], terms[s + 1]
            if f1 - f0 <= 0:
                moves.append(s)
            elif f1 - f0 >= e[i1 - 1] - e[i0 - 1]:
                moves.append(s + 1)
        if not moves:
            return tuple(terms)
        del terms[rng.choice(moves) if rng is not None else moves[0]]


# -- brute-force orbit oracle ---------------------------------------------------


def oracle_bound() -> int:
    return int(os.environ.get("GALKINLAB_ORACLE_BOUND", DEFAULT_ORACLE_BOUND))


def _hom_step(q: int, a_src: int, a_dst: int) -> int:
    # Hom(Z_{q^a_src}, Z_{q^a_dst}) is generated by 1 -> q^{max(0, a_dst - a_src)}
    return q ** max(0, a_dst - a_src)


def _hom_count(q: int, a_src: int, a_dst: int) -> int:
    return q ** min(a_src, a_dst)


def endomorphism_count(shape: GroupShape) -> int:
    a = shape.coordinate_exponents
    total = 1
    for src in a:
        for dst in a:
            total *= _hom_count(shape.q, src, dst)
    return total


def enumerate_endomorphisms(shape: GroupShape) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All endomorphisms as matrices M[d][c] = coordinate d of the image of basis vector c."""
    q, a = shape.q, shape.coordinate_exponents
    r = len(a)
    cells = [
        [t * _hom_step(q, a[c], a[d]) for t in range(_hom_count(q, a[c], a[d]))]
        for d in range(r)
        for c in range(r)
    ]
    for flat in itertools.product(*cells):
        yield tuple(flat[d * r : (d + 1) * r] for d in range(r))


def _invertible_mod(matrix: list[list[int]], q: int) -> bool:
    m = [[v % q for v in row] for row in matrix]
    n = len(m)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return False
        m[col], m[pivot] = m[pivot], m[col]
        inv = pow(m[col][col], -1, q)
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv % q
                m[r] = [(x - factor * y) % q for x, y in zip(m[r], m[col])]
    return True


def is_automorphism(shape: GroupShape, matrix: Sequence[Sequence[int]]) -> bool:
    """An endomorphism is invertible iff each diagonal block is invertible mod q."""
    start = 0
    for _, n in shape.blocks:
        sub = [list(matrix[d][start : start + n]) for d in range(start, start + n)]
        if not _invertible_mod(sub, shape.q):
            return False
        start += n
    return True


def _orbits_by_enumeration(shape: GroupShape) -> list[frozenset[tuple[int, ...]]]:
    moduli = np.array(shape.moduli, dtype=np.int64)
    flats = np.array(list(itertools.product(*(range(m) for m in shape.moduli))), dtype=np.int64)
    flats = flats.reshape(len(flats), len(moduli))
    radix = np.ones(len(moduli), dtype=np.int64)
    for d in range(len(moduli) - 2, -1, -1):
        radix[d] = radix[d + 1] * moduli[d + 1]

    images: list[set[int]] = [set() for _ in range(len(flats))]
    autos = [m for m in enumerate_endomorphisms(shape) if is_automorphism(shape, m)]
    for start in range(0, len(autos), 4096):
        stack = np.array(autos[start : start + 4096], dtype=np.int64).reshape(-1, len(moduli), len(moduli))
        imgs = np.einsum("edc,xc->exd", stack, flats) % moduli
        codes = imgs @ radix
        for x in range(len(flats)):
            images[x].update(codes[:, x].tolist())
    decoded = [tuple(int(v) for v in row) for row in flats]
    return [frozenset(decoded[c] for c in codes) for codes in images]


def _elementary_automorphisms(shape: GroupShape):
    """Unit scalings, same-exponent swaps and transvections along every hom."""
    q, a = shape.q, shape.coordinate_exponents
    r = len(a)
    identity = [[int(d == c) for c in range(r)] for d in range(r)]
    for c in range(r):
        for u in range(2, q ** a[c]):
            if u % q:
                m = [row[:] for row in identity]
                m[c][c] = u
                yield m
        for d in range(r):
            if d == c:
                continue
            if a[d] == a[c] and c < d:
                m = [row[:] for row in identity]
                m[c][c] = m[d][d] = 0
                m[c][d] = m[d][c] = 1
                yield m
            step = _hom_step(q, a[c], a[d])
            for t in range(1, _hom_count(q, a[c], a[d])):
                m = [row[:] for row in identity]
                m[d][c] = t * step
                yield m


def _orbits_by_closure(shape: GroupShape) -> list[frozenset[tuple[int, ...]]]:
    moduli = shape.moduli
    elements = list(itertools.product(*(range(m) for m in moduli)))
    index = {x: n for n, x in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    r = len(moduli)
    for m in _elementary_automorphisms(shape):
        if not is_automorphism(shape, m):
            raise AssertionError(f"generator {m} is not an automorphism")
        for n, x in enumerate(elements):
            y = tuple(sum(m[d][c] * x[c] for c in range(r)) % moduli[d] for d in range(r))
            a, b = find(n), find(index[y])
            if a != b:
                parent[max(a, b)] = min(a, b)

    groups: dict[int, set] = {}
    for n, x in enumerate(elements):
        groups.setdefault(find(n), set()).add(x)
    return [frozenset(g) for g in groups.values()]


def brute_force_orbits(
    shape: GroupShape, bound: Optional[int] = None, method: str = "auto"
) -> list[tuple[GroupElement, ...]]:
    """Partition of A into Aut(A)-orbits, sorted, each orbit sorted.

    ``method="enumerate"`` runs over the whole endomorphism ring and keeps the
    automorphisms; ``method="closure"`` unions orbits under elementary
    automorphisms.  ``"auto"`` enumerates when the ring has at most
    FULL_ENUMERATION_LIMIT elements.
    """
    bound = oracle_bound() if bound is None else bound
    if shape.order > bound:
        raise OracleBoundError(f"|A| = {shape.order} exceeds the oracle bound {bound}")
    if not shape.blocks:
        return [(shape.zero(),)]
    if method == "auto":
        method = "enumerate" if endomorphism_count(shape) <= FULL_ENUMERATION_LIMIT else "closure"
    if method == "enumerate":
        raw = _orbits_by_enumeration(shape)
    elif method == "closure":
        raw = _orbits_by_closure(shape)
    else:
        raise ValueError(f"unknown method {method!r}")
    orbits = {tuple(sorted(shape.unflatten(x) for x in orbit)) for orbit in raw}
    return sorted(orbits)


# -- counting and enumeration of classes -----------------------------------------


def shape_from_partition(q: int, parts: Iterable[int]) -> GroupShape:
    return GroupShape(q, tuple((e, 1) for e in parts))


def count_pointed_groups(n: int) -> int:
    """N(n): sum of |I(e_1..e_k)| over all abelian groups of order q^n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return sum(count_index_sequences(sorted(set(parts))) for parts in enumerate_partitions(n))


def enumerate_pointed_groups(q: int, n: int) -> list[tuple[GroupShape, IndexSequence]]:
    """One (shape, index sequence) per isomorphism class of pointed groups of order q^n."""
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    out = []
    for parts in enumerate_partitions(n):
        shape = shape_from_partition(q, parts)
        out.extend((shape, s) for s in enumerate_index_sequences(shape.exponents))
    return out


# -- arbitrary finite pointed abelian groups -------------------------------------


def primary_decompose(G: GeneralAbelianGroup) -> dict[int, PointedGroup]:
    """Split (A, c) into its q-primary parts (A_q, c_q) by the Chinese remainder theorem."""
    pieces: dict[int, list[tuple[int, int]]] = {}
    for m, c in zip(G.orders, G.point):
        for q, v in factorize(m).items():
            pieces.setdefault(q, []).append((v, c % q**v))
    out = {}
    for q in sorted(pieces):
        factors = sorted(pieces[q], key=lambda t: t[0])  # stable within equal exponents
        shape = GroupShape(q, tuple((v, 1) for v, _ in factors))
        coords = [[res for v, res in factors if v == e] for e in shape.exponents]
        out[q] = PointedGroup(shape, coords)
    return out


def pointed_isomorphic(G: GeneralAbelianGroup, H: GeneralAbelianGroup) -> bool:
    dg, dh = primary_decompose(G), primary_decompose(H)
    if dg.keys() != dh.keys():
        return False
    return all(
        dg[q].shape == dh[q].shape and canonicalize(dg[q]) == canonicalize(dh[q]) for q in dg
    )


# -- bijection between (x, y, lambda) data and classes --------------------------


class ClassData(NamedTuple):
    x: tuple[int, ...]
    y: tuple[int, ...]
    lam: Partition


def data_to_pointed_group(
    x: Sequence[int], y: Sequence[int], lam: Sequence[int]
) -> tuple[Blocks, IndexSequence]:
    """Map (x, y, lambda) to exponent data and an index sequence.

    mu is lambda together with the hooks x_s + y_s; f_s = x_s - 1 and i_s is the
    block whose exponent is x_s + y_s.
    """
    lam = tuple(sorted(lam, reverse=True))
    if len(x) != len(y) or not is_strict(x, 1) or not is_strict(y, 0):
        raise ValueError(f"need 1 <= x strictly increasing and 0 <= y strictly increasing, same length; got {x}, {y}")
    if not is_partition(lam):
        raise ValueError(f"lambda must consist of positive parts, got {lam}")
    hooks = [a + b for a, b in zip(x, y)]
    counts = Counter(lam) + Counter(hooks)
    blocks = tuple(sorted(counts.items()))
    exponents = [e for e, _ in blocks]
    seq = tuple((exponents.index(h) + 1, a - 1) for a, h in zip(x, hooks))
    return blocks, seq


def pointed_group_to_data(blocks: Blocks, s: IndexSequence) -> ClassData:
    blocks = tuple(blocks)
    exponents = [e for e, _ in blocks]
    _check_exponents(exponents)
    if any(n < 1 for _, n in blocks):
        raise ValueError(f"multiplicities must be positive, got {blocks}")
    if not is_index_sequence(s, exponents):
        raise ValueError(f"{s} is not an index sequence for exponents {tuple(exponents)}")
    x = tuple(f + 1 for _, f in s)
    y = tuple(exponents[i - 1] - f - 1 for i, f in s)
    remaining = Counter(dict(blocks))
    remaining.subtract(exponents[i - 1] for i, _ in s)
    lam = tuple(sorted(remaining.elements(), reverse=True))
    return ClassData(x, y, lam)


def mu_of(blocks: Blocks) -> tuple[int, ...]:
    """The partition underlying the exponent data, ascending."""
    return tuple(e for e, n in blocks for _ in range(n))


def enumerate_class_data(n: int) -> Iterator[ClassData]:
    for m in range(n + 1):
        lams = enumerate_partitions(n - m)
        for l in range(m + 1):
            for u in range(l, m + 1):
                for x in enumerate_A(l, u):
                    for y in enumerate_B(l, m - u):
                        for lam in lams:
                            yield ClassData(x, y, lam)


class BijectionReport(NamedTuple):
    ok: bool
    count: int
    failure: Optional[str]


def verify_bijection(n: int) -> BijectionReport:
    """Map every datum of weight n forward and back; check the images are exactly the classes."""
    targets = {(shape.blocks, s) for shape, s in enumerate_pointed_groups(2, n)}
    seen = set()
    for datum in enumerate_class_data(n):
        blocks, s = data_to_pointed_group(*datum)
        if not is_index_sequence(s, [e for e, _ in blocks]):
            return BijectionReport(False, len(seen), f"{datum} -> invalid sequence {s}")
        back = pointed_group_to_data(blocks, s)
        if back != datum:
            return BijectionReport(False, len(seen), f"{datum} -> {blocks} {s} -> {tuple(back)}")
        if (blocks, s) in seen:
            return BijectionReport(False, len(seen), f"{datum} hits {blocks} {s} twice")
        seen.add((blocks, s))
    if seen != targets:
        missing = sorted(targets - seen)
        return BijectionReport(False, len(seen), f"classes not reached: {missing[:3]}")
    return BijectionReport(True, len(seen), None)


# -- text forms ------------------------------------------------------------------


def format_shape(shape: GroupShape) -> str:
    parts = [str(e) if n == 1 else f"{e}^{n}" for e, n in shape.blocks]
    return f"q={shape.q};" + ",".join(parts)


_SHAPE_RE = re.compile(r"^\s*q\s*=\s*(\d+)\s*;(.*)$")


def parse_shape(text: str) -> GroupShape:
    match = _SHAPE_RE.match(text)
    if not match:
        raise ValueError(f"shape must look like 'q=3;1^2,2,5', got {text!r}")
    q = int(match.group(1))
    body = match.group(2).strip()
    blocks = []
    for tok in body.split(",") if body else []:
        e, _, n = tok.strip().partition("^")
        blocks.append((int(e), int(n) if n else 1))
    return GroupShape(q, tuple(blocks))


def format_element(g: GroupElement) -> str:
    return ";".join(",".join(str(c) for c in block) for block in g)


def parse_element(text: str, shape: GroupShape) -> GroupElement:
    text = text.strip()
    blocks = text.split(";") if text else []
    return shape.element([[int(c) for c in b.split(",")] for b in blocks])


def format_index_sequence(s: IndexSequence) -> str:
    return "".join(f"({i},{f})" for i, f in s) or "()"


_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_index_sequence(text: str) -> IndexSequence:
    text = text.strip()
    if text in ("", "()"):
        return ()
    if _PAIR_RE.sub("", text).strip():
        raise ValueError(f"index sequence must look like '(2,1)(3,3)', got {text!r}")
    return tuple((int(i), int(f)) for i, f in _PAIR_RE.findall(text))
