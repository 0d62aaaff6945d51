"""Exact universal R-matrices and coquasitriangular structures for finite Abelian groups."""

from __future__ import annotations

__version__ = "0.1.0"

from .bicharacter import (
    Bicharacter,
    FunctionTable,
    PairingData,
    count_bicharacters,
    cyclic_bicharacter,
    enumerate_all,
    from_table,
    induced_pairing,
    is_commutation_factor,
    kernels,
    parse_bicharacter,
)
from .braiding import (
    GradedMap,
    GradedSpace,
    braid_from_coquasi,
    braid_from_r,
    braid_graded,
    verify_category_axioms,
)
from .coquasi import (
    BilinearForm,
    antipode_relations_check,
    convolution,
    convolution_inverse,
    is_cotriangular,
    verify_coquasi,
)
from .cyclotomic import CycNumber, cyclotomic_polynomial, root_of_unity
from .groups import Character, GroupElement, GroupSpec, parse_group_spec, pairing
from .hopf import HopfElement, Tensor2, Tensor3, coproduct, counit, antipode, invert_tensor2, twist
from .rmatrix import (
    check_yang_baxter,
    is_triangular,
    r_cyclic,
    r_from_bicharacter,
    r_from_function,
    r_from_pairing,
    sigma_from_tensor,
    verify_urm,
)
