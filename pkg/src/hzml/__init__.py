"""Numerical verification of discrete moments of Hardy Z derivatives over
zeros of higher derivatives, against an explicit five-term prediction."""

from .chiomega import (
    OmegaJet,
    chi,
    chi_many,
    chi_one_minus_s_stirling,
    log_gamma,
    omega_jet,
    omega_jets,
    phase_theta,
)
from .coeffs import (
    CoefficientBreakdown,
    IdentityReport,
    asymptotic_coefficient,
    breakdown,
    combi_sum,
    first_term_sum,
    identity_sweep,
    raw_assembled_total,
    step4_sums,
    yildirim_compare,
)
from .errors import (
    AccuracyError,
    BranchError,
    CompletenessAlarm,
    ConvergenceError,
    DomainError,
    ImaginaryLeakError,
    NumericalAlarm,
    PoleProximityError,
    QuadratureError,
)
from .hardyz import (
    FkJet,
    ZkValue,
    fe_residual,
    fk_jet,
    fk_polynomials,
    script_zk,
    script_zk_root,
    window_log,
    z_deriv,
    z_deriv_many,
    zk_many,
    zk_value,
)
from .moments import (
    HallPolynomial,
    MomentReport,
    ZeroList,
    continuous_moment,
    count_check,
    count_expected,
    discrete_moment,
    find_zeros,
    find_zeros_certified,
    hall_W,
    hall_polynomial,
    hall_prediction,
    interlacing_report,
    moment_report,
)
from .thetaroots import (
    ThetaSystem,
    exact_power_sums,
    power_sum,
    trunc_exp,
    trunc_exp_roots,
    z_from_theta,
)
from .zetacore import (
    ComplexPoint,
    EvalConfig,
    StieltjesTable,
    stieltjes,
    stieltjes_table,
    zeta_deriv,
    zeta_jets,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "BranchError",
    "CoefficientBreakdown",
    "CompletenessAlarm",
    "ComplexPoint",
    "ConvergenceError",
    "DomainError",
    "EvalConfig",
    "FkJet",
    "HallPolynomial",
    "IdentityReport",
    "ImaginaryLeakError",
    "MomentReport",
    "NumericalAlarm",
    "OmegaJet",
    "PoleProximityError",
    "QuadratureError",
    "StieltjesTable",
    "ThetaSystem",
    "ZeroList",
    "ZkValue",
    "asymptotic_coefficient",
    "breakdown",
    "chi",
    "chi_many",
    "chi_one_minus_s_stirling",
    "combi_sum",
    "continuous_moment",
    "count_check",
    "count_expected",
    "discrete_moment",
    "exact_power_sums",
    "fe_residual",
    "find_zeros",
    "find_zeros_certified",
    "first_term_sum",
    "fk_jet",
    "fk_polynomials",
    "hall_W",
    "hall_polynomial",
    "hall_prediction",
    "identity_sweep",
    "interlacing_report",
    "log_gamma",
    "moment_report",
    "omega_jet",
    "omega_jets",
    "phase_theta",
    "power_sum",
    "raw_assembled_total",
    "script_zk",
    "script_zk_root",
    "step4_sums",
    "stieltjes",
    "stieltjes_table",
    "trunc_exp",
    "trunc_exp_roots",
    "window_log",
    "yildirim_compare",
    "z_deriv",
    "z_deriv_many",
    "z_from_theta",
    "zeta_deriv",
    "zeta_jets",
    "zk_many",
    "zk_value",
]
