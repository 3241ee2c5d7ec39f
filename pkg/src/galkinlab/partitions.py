"""Integer partitions, strict sequences and the herringbone/Frobenius bijection.

Partitions are plain tuples of weakly decreasing positive integers; the empty
tuple is the unique partition of 0.  Strict sequences are tuples of strictly
increasing integers.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

Partition = tuple[int, ...]
StrictSequence = tuple[int, ...]


class HerringbonePair(NamedTuple):
    x: StrictSequence  # 1 <= x_1 < ... < x_k
    y: StrictSequence  # 0 <= y_1 < ... < y_k


class FrobeniusSymbol(NamedTuple):
    top: tuple[int, ...]  # arms (y_k, ..., y_1)
    bottom: tuple[int, ...]  # legs (x_k - 1, ..., x_1 - 1)


def is_partition(parts: Sequence[int]) -> bool:
    if any(p < 1 for p in parts):
        return False
    return all(parts[s] >= parts[s + 1] for s in range(len(parts) - 1))


def is_strict(values: Sequence[int], lowest: int) -> bool:
    if values and values[0] < lowest:
        return False
    return all(values[s] < values[s + 1] for s in range(len(values) - 1))


def _partitions(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in lexicographically decreasing order.

    >>> enumerate_partitions(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return list(_partitions(n, n))


@lru_cache(maxsize=None)
def _pentagonal_table(n: int) -> tuple[int, ...]:
    table = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * table[m - g1]
            g2 = g1 + k
            if g2 <= m:
                total += sign * table[m - g2]
            k += 1
        table[m] = total
    return tuple(table)


def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal number recurrence."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return _pentagonal_table(n)[n]


def a000712(n: int) -> int:
    """Number of partitions of ``n`` into parts of two kinds, sum of p(m)p(n-m)."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    p = _pentagonal_table(n)
    return sum(p[m] * p[n - m] for m in range(n + 1))


def _strict(k: int, total: int, lowest: int) -> Iterator[StrictSequence]:
    if k == 0:
        if total == 0:
            yield ()
        return
    # smallest possible sum of k strictly increasing values starting at `first`
    first = lowest
    while k * first + k * (k - 1) // 2 <= total:
        for rest in _strict(k - 1, total - first, first + 1):
            yield (first,) + rest
        first += 1


def enumerate_A(k: int, l: int) -> list[StrictSequence]:
    """Sequences 1 <= x_1 < ... < x_k with sum ``l``, lexicographically increasing."""
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    return list(_strict(k, l, 1))


def enumerate_B(k: int, l: int) -> list[StrictSequence]:
    """Sequences 0 <= x_1 < ... < x_k with sum ``l``, lexicographically increasing."""
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    return list(_strict(k, l, 0))


def conjugate(p: Sequence[int]) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for part in p if part > j) for j in range(p[0]))


def durfee_size(p: Sequence[int]) -> int:
    return sum(1 for i, part in enumerate(p, start=1) if part >= i)


def _check_pair(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise ValueError(f"x and y must have equal length, got {len(x)} and {len(y)}")
    if not is_strict(x, 1):
        raise ValueError(f"x must satisfy 1 <= x_1 < ... < x_k, got {tuple(x)}")
    if not is_strict(y, 0):
        raise ValueError(f"y must satisfy 0 <= y_1 < ... < y_k, got {tuple(y)}")


def herringbone_to_partition(x: Sequence[int], y: Sequence[int]) -> Partition:
    """Assemble the Ferrers diagram whose i-th diagonal hook has arm y_{k+1-i}
    and leg x_{k+1-i} - 1.

    >>> herringbone_to_partition((1, 3, 5), (1, 2, 4))
    (5, 4, 4, 2, 1)
    """
    _check_pair(x, y)
    k = len(x)
    arms = [y[k - i] for i in range(1, k + 1)]
    legs = [x[k - i] - 1 for i in range(1, k + 1)]
    rows = [i + arms[i - 1] for i in range(1, k + 1)]
    columns = [i + legs[i - 1] for i in range(1, k + 1)]
    depth = columns[0] if columns else 0
    for r in range(k + 1, depth + 1):
        rows.append(sum(1 for c in columns if c >= r))
    return tuple(rows)


def partition_to_herringbone(p: Sequence[int]) -> HerringbonePair:
    if not is_partition(p):
        raise ValueError(f"not a partition: {tuple(p)}")
    k = durfee_size(p)
    conj = conjugate(p)
    arms = [p[i - 1] - i for i in range(1, k + 1)]
    legs = [conj[i - 1] - i for i in range(1, k + 1)]
    x = tuple(leg + 1 for leg in reversed(legs))
    y = tuple(reversed(arms))
    return HerringbonePair(x, y)


def frobenius_symbol(p: Sequence[int]) -> FrobeniusSymbol:
    x, y = partition_to_herringbone(p)
    return FrobeniusSymbol(tuple(reversed(y)), tuple(v - 1 for v in reversed(x)))


def format_partition(p: Sequence[int]) -> str:
    return ",".join(str(v) for v in p)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    parts = tuple(int(tok) for tok in text.split(","))
    if not is_partition(parts):
        raise ValueError(f"not a weakly decreasing sequence of positive integers: {text!r}")
    return parts


def format_strict(values: Sequence[int]) -> str:
    return ",".join(str(v) for v in values)


def parse_strict(text: str, lowest: int = 0) -> StrictSequence:
    text = text.strip()
    values = tuple(int(tok) for tok in text.split(",")) if text else ()
    if not is_strict(values, lowest):
        raise ValueError(f"not a strictly increasing sequence >= {lowest}: {text!r}")
    return values
