"""Exact computation of support complexes of special-cycle intersections
on the vertex set of the Bruhat-Tits building of a p-adic unitary group."""

from .scalars import PadicContext, ExtScalar, FqScalar
from .lattices import (HermSpace, Lattice, Vertex, canonicalize,
                       elementary_divisors, intersect_lattices, span_lattice,
                       sum_lattices, vertex_type)
from .building import (ComplexSubset, FiniteHermSpace, ball, distance,
                       downward_closure, isotropic_subspaces,
                       meets_as_vertex, neighbors_above, neighbors_below)
from .cycles import (KrStratum, SpecialTuple, all_components_above_in_cycle,
                     cycle_dimension_type, fundamental_matrix, in_cycle,
                     irreducibility_criterion, kr_stratum, splits_off)
from .algorithm import (SubSpaceChain, phi_r0, phi_r1, phi_s, recurse_single,
                        run_multi, seed_vertex)
from .oracle import cross_validate, naive_isotropic_count, oracle_support

__version__ = "0.1.0"
