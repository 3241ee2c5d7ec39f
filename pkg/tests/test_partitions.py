import pytest
from hypothesis import given, strategies as st

from galkinlab.partitions import (
    a000712,
    conjugate,
    enumerate_A,
    enumerate_B,
    enumerate_partitions,
    format_partition,
    frobenius_symbol,
    herringbone_to_partition,
    parse_partition,
    parse_strict,
    partition_count,
    partition_to_herringbone,
)
from support import brute_partition_count, brute_strict


def test_enumerate_small():
    assert enumerate_partitions(0) == [()]
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(enumerate_partitions(10)) == brute_partition_count(10) == 42


@pytest.mark.parametrize("n", range(13))
def test_enumeration_is_sorted_unique_and_valid(n):
    parts = enumerate_partitions(n)
    assert parts == sorted(set(parts), reverse=True)
    for p in parts:
        assert sum(p) == n
        assert all(a >= b >= 1 for a, b in zip(p, p[1:] + (1,)))


def test_partition_count():
    assert partition_count(0) == 1
    assert partition_count(4) == 5
    assert partition_count(9) == 30
    for n in range(31):
        assert partition_count(n) == len(enumerate_partitions(n)) == brute_partition_count(n)


def test_partition_count_is_exact_for_large_n():
    assert partition_count(100) == brute_partition_count(100) == 190569292
    assert a000712(60) == sum(brute_partition_count(m) * brute_partition_count(60 - m) for m in range(61))


def _series_two_kinds(n):
    # coefficients of prod (1 - x^m)^-2 by repeated multiplication with 1/(1 - x^m)
    coeffs = [1] + [0] * n
    for m in range(1, n + 1):
        for _ in range(2):
            for total in range(m, n + 1):
                coeffs[total] += coeffs[total - m]
    return coeffs


def test_a000712_prefix():
    expected = (1, 2, 5, 10, 20, 36, 65, 110, 185, 300, 481)
    assert tuple(a000712(n) for n in range(11)) == expected
    assert [a000712(n) for n in range(41)] == _series_two_kinds(40)


def test_a000712_n4_direct_convolution():
    assert a000712(4) == 5 + 3 + 4 + 3 + 5 == 20


def test_strict_sequences():
    assert enumerate_A(0, 0) == [()]
    assert (1, 3, 5) in enumerate_A(3, 9)
    assert enumerate_A(2, 5) == [(1, 4), (2, 3)]
    assert (1, 2, 4) in enumerate_B(3, 7)
    assert enumerate_B(1, 0) == [(0,)]
    assert enumerate_B(2, 3) == [(0, 3), (1, 2)]
    assert enumerate_A(0, 3) == [] and enumerate_B(0, 1) == []


@pytest.mark.parametrize("k,l", [(k, l) for k in range(5) for l in range(16)])
def test_strict_sequences_match_brute_force(k, l):
    assert enumerate_A(k, l) == brute_strict(k, l, 1)
    assert enumerate_B(k, l) == brute_strict(k, l, 0)


def test_A_and_B_shift_equinumerous():
    for l in range(16):
        for k in range(l + 1):
            assert len(enumerate_A(k, l)) == len(enumerate_B(k, l - k))


@pytest.mark.parametrize("n", range(16))
def test_partition_identity(n):
    p = partition_count(n)
    first = sum(len(enumerate_A(k, l)) * len(enumerate_B(k, n - l)) for l in range(n + 1) for k in range(l + 1))
    second = sum(len(enumerate_B(k, l - k)) * len(enumerate_B(k, n - l)) for l in range(n + 1) for k in range(l + 1))
    assert first == second == p


def _arms_legs(p):
    cells = {(r, c) for r, length in enumerate(p) for c in range(length)}
    arms, legs, d = [], [], 0
    while (d, d) in cells:
        arms.append(sum(1 for (r, c) in cells if r == d and c > d))
        legs.append(sum(1 for (r, c) in cells if c == d and r > d))
        d += 1
    return tuple(arms), tuple(legs)


def test_herringbone_examples():
    assert herringbone_to_partition((1,), (0,)) == (1,)
    assert herringbone_to_partition((2,), (1,)) == (2, 1)
    assert herringbone_to_partition((1, 3, 5), (1, 2, 4)) == (5, 4, 4, 2, 1)
    assert partition_to_herringbone((1,)) == ((1,), (0,))
    assert partition_to_herringbone((2, 1)) == ((2,), (1,))
    assert partition_to_herringbone(()) == ((), ())


def test_frobenius_examples():
    assert frobenius_symbol((2, 1)) == ((1,), (1,))
    assert frobenius_symbol((1,)) == ((0,), (0,))
    assert frobenius_symbol((5, 4, 4, 2, 1)) == ((4, 2, 1), (4, 2, 0))
    assert _arms_legs((5, 4, 4, 2, 1)) == ((4, 2, 1), (4, 2, 0))


@pytest.mark.parametrize("n", range(16))
def test_herringbone_round_trip(n):
    for p in enumerate_partitions(n):
        x, y = partition_to_herringbone(p)
        assert herringbone_to_partition(x, y) == p
        assert sum(x) + sum(y) == n
        assert frobenius_symbol(p) == _arms_legs(p)


@pytest.mark.parametrize("n", range(13))
def test_herringbone_forward_is_bijective(n):
    images = []
    for l in range(n + 1):
        for k in range(l + 1):
            for x in enumerate_A(k, l):
                for y in enumerate_B(k, n - l):
                    p = herringbone_to_partition(x, y)
                    assert sum(p) == sum(x) + sum(y)
                    assert partition_to_herringbone(p) == (x, y)
                    images.append(p)
    assert sorted(images, reverse=True) == enumerate_partitions(n)


@given(st.lists(st.integers(1, 12), max_size=12))
def test_conjugate_is_involution(parts):
    p = tuple(sorted(parts, reverse=True))
    assert conjugate(conjugate(p)) == p
    assert frobenius_symbol(conjugate(p)) == tuple(reversed(frobenius_symbol(p)))


def test_rejects_malformed_pairs():
    with pytest.raises(ValueError):
        herringbone_to_partition((1, 2), (0,))
    with pytest.raises(ValueError):
        herringbone_to_partition((0,), (0,))
    with pytest.raises(ValueError):
        herringbone_to_partition((1,), (1, 1))
    with pytest.raises(ValueError):
        partition_to_herringbone((1, 2))


def test_text_forms():
    assert format_partition((5, 4, 4, 2, 1)) == "5,4,4,2,1"
    assert format_partition(()) == ""
    assert parse_partition("") == ()
    assert parse_partition("5,4,4,2,1") == (5, 4, 4, 2, 1)
    assert parse_strict("1,3,5", 1) == (1, 3, 5)
    with pytest.raises(ValueError):
        parse_partition("1,2")
    with pytest.raises(ValueError):
        parse_strict("0,1", 1)
