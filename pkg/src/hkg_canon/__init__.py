"""Canonical ideals of Harbater-Katz-Gabber curve towers in odd characteristic."""

from .errors import AmbiguousInitialTerm, HKGError, InvariantError, PetriPreconditionError, PhiBijectionError, TowerError
from .funcfield import ReducedPoly, kernel_membership, multiply, phi_image, reduce, valuation_at_P
from .oracle import deg2_kernel_basis, deg3_generation_check, nullspace, quotient_dim_check, span_compare
from .order import colex_cmp, initial_term, product_cmp
from .relations import QuadForm, SkipDiagnostic, assemble_J, build_G0, build_Gvi, enumerate_v, phi_class_map, survivors
from .semigroup import NormClass, basis_A, bounded_H, decompose_all, gamma_set, minkowski_sum, norm, norm_classes
from .tower import PetriReport, Tower, TowerStep, derive_jumps, genus_sequence, level_norm, petri_report, semigroup_generators

__version__ = "0.1.0"
