"""Exact linear algebra for mixed Hodge and twistor structures, their splittings,
filtered spectral sequences and rational homotopy invariants."""

from .errors import (DimensionMismatch, HodgeSplitError, InconsistentSystem, InvariantError, ParseError,
                     RejectionError, TruncationError)
from .exact import QI, LinearMap, Subspace, format_scalar, parse_scalar, quotient, relative_quotient, solve
from .filtrations import DEC, INC, FilteredSpace, filtration_checks, rees_double, rees_single
from .hodge import (MHS, BigradedSpace, WeightGradedSpace, deligne_bigrading, tate, tate_twist, tensor_dual_mhs,
                    validate_mhs, validate_pure)
from .splittings import (FRep, SHSObject, STSObject, frep_to_shs, hom_ext, integral_pairing, mhs_to_shs,
                         shs_to_frep, shs_to_mhs, shs_to_sts)
from .spectral import FilteredComplex, dec_e1_property_check, decalage, spectral_report
from .dga import DGA, GysinInput, e2_builder
from .homotopy import pi_n, quillen_G
from .thom_whitney import CosimplicialDGA, thom_whitney, total_complex_cohomology
from .deformation import LieAlgebra, deformation_cone, explicit_cone

__all__ = [
    "DimensionMismatch", "HodgeSplitError", "InconsistentSystem", "InvariantError", "ParseError",
    "RejectionError", "TruncationError",
    "QI", "LinearMap", "Subspace", "format_scalar", "parse_scalar", "quotient", "relative_quotient", "solve",
    "DEC", "INC", "FilteredSpace", "filtration_checks", "rees_double", "rees_single",
    "MHS", "BigradedSpace", "WeightGradedSpace", "deligne_bigrading", "tate", "tate_twist", "tensor_dual_mhs",
    "validate_mhs", "validate_pure",
    "FRep", "SHSObject", "STSObject", "frep_to_shs", "hom_ext", "integral_pairing", "mhs_to_shs",
    "shs_to_frep", "shs_to_mhs", "shs_to_sts",
    "FilteredComplex", "dec_e1_property_check", "decalage", "spectral_report",
    "DGA", "GysinInput", "e2_builder", "pi_n", "quillen_G",
    "CosimplicialDGA", "thom_whitney", "total_complex_cohomology",
    "LieAlgebra", "deformation_cone", "explicit_cone",
]
