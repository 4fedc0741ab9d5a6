"""Periodic multivariate quasi-interpolation on diagonal dilation lattices."""

from .kernels import (
    DefectSingularityError,
    FunctionalSpec,
    KernelSpec,
    SymbolFamily,
    average,
    compat_order,
    compat_radius,
    corrected_dirichlet,
    defect_symbol,
    delta,
    differential,
    dirichlet,
    discrete_weights,
    fractional_condition_symbols,
    functional_lqj_norm,
    functional_symbol,
    kernel_symbol,
    riesz_kernel,
    smooth_window,
    vallee_poussin_kernel,
)
from .lattice import (
    DilationLattice,
    SpectralIndexSet,
    alias_representative,
    in_index_set,
    sample_grid,
    spectral_index_set,
)
from .quasiinterp import (
    QuasiInterpOperator,
    apply_spatial,
    apply_spectral,
    approximation_error,
    operator_norm_bound,
    quasi_interpolant,
)
from .smoothness import (
    ModulusRequest,
    OneSidedPair,
    TaggedValue,
    besov_norm,
    besov_tail_sum,
    best_approx,
    class_Dnjp_ratio,
    derivative,
    fractional,
    fractional_laplacian,
    jackson_defect,
    k_functional,
    mixed,
    modulus,
    nsr_check,
    one_sided_upper,
    sobolev_onesided_bound,
    tau_modulus,
    total,
)
from .windows import bump_window, window_profile
from .spectrum import (
    SpectralFunction,
    analyze_samples,
    apply_multiplier,
    convolve_functional,
    evaluate,
    fractional_difference,
    fractional_series_tail_bound,
    from_json_dict,
    l2_norm,
    lp_norm,
    norm,
    partial_sum,
    sequence_norm,
    spectral_function,
    synthesize,
    to_json_dict,
    vallee_poussin,
)

__version__ = "0.1.0"
