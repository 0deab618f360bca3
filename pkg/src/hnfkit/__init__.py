"""Hermite normal form bases of integer relations lattices.

Exact integer linear algebra: Hermite and Smith normal forms, Howell forms
over Z/(N), Smith massagers, partially linearized modular matrix products,
and a recursive divide-and-conquer solver for the Hermite basis of the
lattice {p : p*F in L(M)}.
"""

from .apps import (
    hnf,
    lattice_intersection,
    multivariable_crt,
    product_hnf,
    remainder_mod_hermite,
)
from .hermite_basis import HBCall, base_case, hermite_basis, relations_hermite_basis
from .howell import HowellResult, hermite_via_howell, hermite_with_eliminator, howell_form
from .intmat import (
    DiagonalModulus,
    DimensionError,
    HermiteBasis,
    IntMat,
    ParseError,
    PreconditionError,
    SmithForm,
    colmod,
    determinant,
    format_matrix,
    lattice_contains,
    lattice_equal,
    matmul,
    parse_matrix,
    rowmod,
    set_invariant_checks,
)
from .linmul import (
    XadicPlan,
    colmod_mul_hermite,
    colmod_mul_signed,
    colmod_mul_tall_square,
    colmod_mul_wide_tall,
)
from .massager import (
    MassagerFail,
    SmithMassager,
    smith_decomposition,
    smith_massager,
    trim_trivial,
    verify_massager,
)
from .relations import (
    RelationsInput,
    compress_modulus,
    pivot_permutation,
    relations_basis_oracle,
    remove_common_divisor,
    smithify_modulus,
    strip_trivial,
    to_smith_coprime,
)
from .structured_hermite import (
    StageTransform,
    coprime_parts,
    hermite_of_stack,
    stage_apply,
    stage_transform,
    structured_hermite_blocks,
)

__all__ = [
    "DiagonalModulus", "DimensionError", "HBCall", "HermiteBasis", "HowellResult",
    "IntMat", "MassagerFail", "ParseError", "PreconditionError", "RelationsInput",
    "SmithForm", "SmithMassager", "StageTransform", "XadicPlan", "base_case",
    "colmod", "colmod_mul_hermite", "colmod_mul_signed", "colmod_mul_tall_square",
    "colmod_mul_wide_tall", "compress_modulus", "coprime_parts", "determinant",
    "format_matrix", "hermite_basis", "hermite_of_stack", "hermite_via_howell",
    "hermite_with_eliminator", "hnf", "howell_form", "lattice_contains",
    "lattice_equal", "lattice_intersection", "matmul", "multivariable_crt",
    "parse_matrix", "pivot_permutation", "product_hnf", "relations_basis_oracle",
    "relations_hermite_basis", "remainder_mod_hermite", "remove_common_divisor",
    "rowmod", "set_invariant_checks", "smith_decomposition", "smith_massager",
    "smithify_modulus", "stage_apply", "stage_transform", "strip_trivial",
    "structured_hermite_blocks", "to_smith_coprime", "trim_trivial",
    "verify_massager",
]

__version__ = "0.1.0"
