"""Shared generators for the test suite."""

import itertools

from galkinlab.abelian import GeneralAbelianGroup, factorize
from galkinlab.partitions import enumerate_partitions
from galkinlab.quandle import galkin


def abelian_groups_of_order(m):
    """Cyclic-order tuples, one per isomorphism type of abelian group of order m."""
    per_prime = []
    for q, a in sorted(factorize(m).items()):
        per_prime.append([tuple(q**part for part in parts) for parts in enumerate_partitions(a)])
    for combo in itertools.product(*per_prime):
        yield tuple(o for orders in combo for o in orders)


def pointed_groups_up_to(max_order):
    """Every (A, c) with |A| <= max_order, A running over isomorphism types."""
    for m in range(1, max_order + 1):
        for orders in abelian_groups_of_order(m):
            G = GeneralAbelianGroup(orders)
            for c in G.elements():
                yield GeneralAbelianGroup(orders, c)


def galkin_quandles_up_to(max_size):
    return [galkin(G) for G in pointed_groups_up_to(max_size // 3)]


def brute_partition_count(n):
    # coin-change count over part sizes 1..n
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def brute_strict(k, l, lowest):
    return sorted(c for c in itertools.combinations(range(lowest, l + 1), k) if sum(c) == l)
