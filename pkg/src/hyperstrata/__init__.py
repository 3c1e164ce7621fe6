"""Strata of hyperbolic slices, their posets and Vandermonde coverings."""

__version__ = "0.1.0"

from .bounds import (bound_report, covering_lower_recursive, covering_lower_trivial,
                     covering_upper_bound, cyclic_face_vector, f0_bound, ubt_check)
from .combinatorics import (Composition, Partition, enumerate_compositions,
                            enumerate_partitions, is_alternate_even, is_alternate_odd,
                            leq_composition, leq_partition, min_max_sets, quotient)
from .covering import enumerate_potential, is_covering, known_cover_check, min_cover
from .exceptions import (DomainError, HyperstrataError, IncompleteError,
                         ScaleGuardError, StructuralError)
from .numeric import (HyperbolicPoly, SliceRealization, SolverConfig, hessian_sign,
                      power_elem_duality, random_realize, realize_slice,
                      reduce_symmetric, solve_vertices, sturm_real_root_count,
                      verify_min_max)
from .poset import (analyze, build_poset, dual_complex, face_vectors, is_potential,
                    shelling_order, verify_shelling)

__all__ = [
    "Composition", "Partition", "enumerate_compositions", "enumerate_partitions",
    "leq_composition", "leq_partition", "quotient", "is_alternate_odd",
    "is_alternate_even", "min_max_sets",
    "build_poset", "is_potential", "dual_complex", "face_vectors", "shelling_order",
    "verify_shelling", "analyze",
    "cyclic_face_vector", "ubt_check", "f0_bound", "covering_upper_bound",
    "covering_lower_trivial", "covering_lower_recursive", "bound_report",
    "enumerate_potential", "is_covering", "min_cover", "known_cover_check",
    "HyperbolicPoly", "SliceRealization", "SolverConfig", "sturm_real_root_count",
    "solve_vertices", "realize_slice", "verify_min_max", "hessian_sign",
    "power_elem_duality", "random_realize", "reduce_symmetric",
    "HyperstrataError", "DomainError", "StructuralError", "IncompleteError",
    "ScaleGuardError",
]
