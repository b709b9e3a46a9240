"""Exact computations with monotypically supersymmetric polynomials."""

from .partitions import Partition
from .polycore import Poly, embed, exact_divide_linear, substitute
from .qlinalg import INCONSISTENT, QMatrix, kernel_basis, rank, rref, solve
from .symfunc import (
    PowerSumExpr,
    complete_h,
    elementary,
    expand,
    is_symmetric,
    monomial_sym,
    multiplier_at,
    power_sum,
    q_nk,
    r_nk,
    repr_in_power_sums,
    schur,
)
from .tn import (
    Decomposition,
    ProperProduct,
    check_membership,
    decompose,
    decompose_constructive_n2,
    decompose_constructive_n3,
    delta,
    delta_preim_identity,
    dim_Tn,
    div_delta_witness,
    enumerate_proper_products,
    is_member,
    params,
    pi_project,
    preimage_lift,
    reduce_mod_I,
    split_even_odd,
)

__version__ = "0.1.0"
