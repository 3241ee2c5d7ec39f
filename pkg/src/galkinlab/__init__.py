"""Galkin quandles, pointed abelian q-groups and partitions into parts of two kinds."""

from .abelian import (
    GeneralAbelianGroup,
    GroupShape,
    PointedGroup,
    brute_force_orbits,
    canonicalize,
    count_pointed_groups,
    data_to_pointed_group,
    enumerate_index_sequences,
    enumerate_pointed_groups,
    orbit_representative,
    pointed_group_to_data,
    pointed_isomorphic,
    primary_decompose,
)
from .knots import KnotDiagram, builtin_knot, count_colorings, parse_diagram
from .partitions import (
    a000712,
    enumerate_A,
    enumerate_B,
    enumerate_partitions,
    frobenius_symbol,
    herringbone_to_partition,
    partition_count,
    partition_to_herringbone,
)
from .quandle import FiniteQuandle, galkin, induced_hom, is_quandle, quandle_iso, right_inverse

__version__ = "0.1.0"
