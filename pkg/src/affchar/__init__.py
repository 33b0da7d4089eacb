"""Exact truncated characters of affine vacuum modules and their q-series identities."""

from .characters import (
    CharacterTable,
    closed_form_level1,
    enumerate_lattice,
    homogeneous_character,
    principal_character,
    propagate_from_initial,
    recurrence_factor,
    verify_recurrence,
)
from .identities import (
    ThetaSpec,
    macdonald_product_a,
    macdonald_product_d,
    multisum_side,
    verify_identity,
    verify_user_identity,
)
from .lie import LieType, RootSystemData, quadratic_form, root_system_data
from .qseries import ProductSpec, QSeries, add, expand_product, invert, mul, scale_exponents, shift
from .report import IdentityReport

__all__ = [
    "CharacterTable",
    "IdentityReport",
    "LieType",
    "ProductSpec",
    "QSeries",
    "RootSystemData",
    "ThetaSpec",
    "add",
    "closed_form_level1",
    "enumerate_lattice",
    "expand_product",
    "homogeneous_character",
    "invert",
    "macdonald_product_a",
    "macdonald_product_d",
    "mul",
    "multisum_side",
    "principal_character",
    "propagate_from_initial",
    "quadratic_form",
    "recurrence_factor",
    "root_system_data",
    "scale_exponents",
    "shift",
    "verify_identity",
    "verify_recurrence",
    "verify_user_identity",
]
