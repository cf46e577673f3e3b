"""Exact computation and certification of Grothendieck weights on
permutohedral and matroidal fans."""

from .braid import Flag, enumerate_flags, strict_refinements_ij, is_ij_neutral
from .classes import (
    aij_symmetry_check,
    csm_minkowski_balanced,
    csm_values,
    mcy_dual_weight,
    pointed_convolution_check,
    psi_formula_check,
    quot_weight,
    sub_weight,
    taut_weight,
    verify_tutte_identity,
)
from .fan import (
    Fan,
    braid_fan,
    check_index_condition,
    check_k_balancing,
    check_unimodular,
    balancing_relations,
    basis_property_check,
    displaced_intersection_nonempty,
    is_generic,
    matroidal_fan,
    minkowski_balancing_check,
    product_fan,
    product_rule,
    projective_fan,
    star_fan,
    subfan,
)
from .lattice import IntegerMatrix, LatticeVector, rational_solve_membership, smith_normal_form
from .matroid import Matroid, MatroidAxiomError, flags_of_flats, successive_minor_eval
from .poly import ExactDivisionError, Polynomial
from .polytopes import GenPermutohedron
from .util import CapExceeded, NonGenericVector
from .weights import (
    Weight,
    balance_check_braid,
    balance_check_matroid,
    product,
    product_value,
    weight_delta_closed_form,
    weight_of_polytope,
    zero_extend,
)

__version__ = "0.1.0"
