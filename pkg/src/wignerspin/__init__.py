"""Wigner rotation of boosted spin-singlet pairs and the entropy of the resulting spin states."""

from .errors import ContractViolation, DomainError
from .kinematics import (
    FourMomentum,
    LorentzMatrix,
    Rapidity,
    RotationAngleAxis,
    boost_matrix,
    four_momentum,
    rotation_angle_axis,
    standard_boost,
    wigner_matrix_numeric,
)
from .wigner import (
    GeometryParams,
    SingleCoeffs,
    WignerCoeffs,
    coeff_AB,
    pair_coeffs,
    pair_coeffs_nonrel,
    pair_coeffs_velocity,
    su2_from_rotation,
)
from .states import (
    BellBasisDM,
    PairWeights,
    ProductBasisDM,
    boosted_pair_bell_vector,
    general_superposition_dm,
    reduced_dm_distinguishable,
    reduced_dm_indistinguishable,
    to_product_basis,
)
from .entropy import (
    ExtremumSolution,
    eigen_closed_form,
    extremum_condition_indistinguishable,
    max_condition_distinguishable,
    shannon,
    solve_alpha_at_max,
    vn_indistinguishable,
    von_neumann,
)
from .sweep import SweepConfig, SweepRow, emit_figure_data, run_sweep
from .checks import self_check

__version__ = "0.1.0"
