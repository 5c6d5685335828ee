"""Exact-arithmetic workbench for n-ary skew algebras over GF(2^m).

Multiplication tables are exact (hex-coded field scalars, no floats), and
every structural question — identities, invariants, base change, catalog
classification — is answered by finite computation over the ground field.
"""

from . import errors
from .catalog import (
    CaseId,
    CaseInfo,
    case_dim,
    expected_derived_dim,
    instantiate,
    list_cases,
    param_equivalent,
    param_grid,
    validate_params,
)
from .classify import (
    ClassifyResult,
    Inconclusive,
    IsoVerdict,
    Isomorphic,
    Match,
    NotIsomorphic,
    Unknown,
    are_isomorphic,
    classify,
)
from .core import (
    Algebra,
    JacobiViolation,
    abelian_algebra,
    ad_matrix,
    bracket,
    bracket_basis,
    center,
    derived_subspace,
    descending_series,
    inner_derivation_dim,
    is_abelian,
    is_derivation,
    is_ideal,
    is_nilpotent,
    is_subalgebra,
    jacobi_check,
    make_algebra,
)
from .gf import GF, format_scalar
from .invariants import (
    Decomposition,
    Fingerprint,
    ToralBound,
    find_codim1_subalgebra,
    find_nonabelian_codim1_containing_derived,
    fingerprint,
    is_decomposable,
    max_toral_dim,
    mismatch_reason,
    rank_profile,
    verify_toral,
)
from .linalg import Subspace
from .serialize import emit_algebra, emit_matrix, parse_algebra, parse_matrix
from .structmat import (
    change_basis,
    compound_matrix,
    iso_criterion,
    pair_order,
    structure_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "CaseId",
    "CaseInfo",
    "ClassifyResult",
    "Decomposition",
    "Fingerprint",
    "GF",
    "Inconclusive",
    "IsoVerdict",
    "Isomorphic",
    "JacobiViolation",
    "Match",
    "NotIsomorphic",
    "Subspace",
    "ToralBound",
    "Unknown",
    "abelian_algebra",
    "ad_matrix",
    "are_isomorphic",
    "bracket",
    "bracket_basis",
    "case_dim",
    "center",
    "change_basis",
    "classify",
    "compound_matrix",
    "derived_subspace",
    "descending_series",
    "emit_algebra",
    "emit_matrix",
    "errors",
    "expected_derived_dim",
    "find_codim1_subalgebra",
    "find_nonabelian_codim1_containing_derived",
    "fingerprint",
    "format_scalar",
    "inner_derivation_dim",
    "instantiate",
    "is_abelian",
    "is_decomposable",
    "is_derivation",
    "is_ideal",
    "is_nilpotent",
    "is_subalgebra",
    "iso_criterion",
    "jacobi_check",
    "list_cases",
    "make_algebra",
    "max_toral_dim",
    "mismatch_reason",
    "param_equivalent",
    "param_grid",
    "parse_algebra",
    "parse_matrix",
    "pair_order",
    "rank_profile",
    "structure_matrix",
    "validate_params",
    "verify_toral",
    "__version__",
]
