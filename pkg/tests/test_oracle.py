import pytest

from galkinlab.abelian import (
    FULL_ENUMERATION_LIMIT,
    GroupShape,
    OracleBoundError,
    brute_force_orbits,
    endomorphism_count,
    enumerate_endomorphisms,
    enumerate_index_sequences,
    is_automorphism,
    shape_from_partition,
)
from galkinlab.partitions import enumerate_partitions


def test_cyclic_examples():
    assert brute_force_orbits(GroupShape(2, ((1, 1),))) == [(((0,),),), (((1,),),)]
    assert brute_force_orbits(GroupShape(2, ((2, 1),))) == [(((0,),),), (((1,),), ((3,),)), (((2,),),)]


def test_z2_plus_z4():
    orbits = brute_force_orbits(GroupShape(2, ((1, 1), (2, 1))))
    assert len(orbits) == 4 == len(enumerate_index_sequences((1, 2)))
    assert any(((0,), (1,)) in o and ((1,), (1,)) in o for o in orbits)


def test_orbits_partition_the_group():
    sh = GroupShape(3, ((1, 1), (2, 1)))
    orbits = brute_force_orbits(sh)
    flat = [g for o in orbits for g in o]
    assert sorted(flat) == sorted(sh.elements())


def _small_shapes():
    for q, top in ((2, 4), (3, 2), (5, 2)):
        for n in range(1, top + 1):
            for parts in enumerate_partitions(n):
                yield shape_from_partition(q, parts)


@pytest.mark.parametrize("sh", list(_small_shapes()), ids=str)
def test_block_criterion_matches_bijectivity(sh):
    if endomorphism_count(sh) > 5000:
        pytest.skip("too many endomorphisms for a direct bijectivity sweep")
    mods = sh.moduli
    r = len(mods)
    elements = [sh.flatten(g) for g in sh.elements()]
    for m in enumerate_endomorphisms(sh):
        images = {tuple(sum(m[d][c] * x[c] for c in range(r)) % mods[d] for d in range(r)) for x in elements}
        assert (len(images) == len(elements)) == is_automorphism(sh, m)


def _enumerable_shapes():
    for q, top in ((2, 6), (3, 3), (5, 2), (7, 2)):
        for n in range(1, top + 1):
            for parts in enumerate_partitions(n):
                sh = shape_from_partition(q, parts)
                if endomorphism_count(sh) <= FULL_ENUMERATION_LIMIT:
                    yield sh


@pytest.mark.parametrize("sh", list(_enumerable_shapes()), ids=str)
def test_closure_agrees_with_full_enumeration(sh):
    assert brute_force_orbits(sh, method="enumerate") == brute_force_orbits(sh, method="closure")


def test_bound():
    with pytest.raises(OracleBoundError):
        brute_force_orbits(GroupShape(2, ((9, 1),)))
    assert len(brute_force_orbits(GroupShape(2, ((9, 1),)), bound=512)) == 10


def test_bound_from_environment(monkeypatch):
    monkeypatch.setenv("GALKINLAB_ORACLE_BOUND", "4")
    with pytest.raises(OracleBoundError):
        brute_force_orbits(GroupShape(2, ((3, 1),)))
    assert len(brute_force_orbits(GroupShape(2, ((2, 1),)))) == 3


def test_unknown_method():
    with pytest.raises(ValueError):
        brute_force_orbits(GroupShape(2, ((1, 1),)), method="guess")
