"""Measure evolution under the Gauss-Weierstrass semigroup and its positive
perturbations: heat/resolvent kernels, Skorohod derivatives, Duhamel and
splitting constructions of the perturbed semigroup, and a finite-dimensional
positive-systems oracle."""

from ._core import (  # noqa: F401
    DysonResult,
    GeneratorCheckReport,
    GridSpec,
    Measure,
    NeumannResult,
    NormEstimate,
    Potential,
    PotentialPerturbation,
    RankOnePerturbation,
    SeriesParams,
    StageReport,
    TestFunction,
    VopResiduals,
    apply_B,
    apply_T,
    apply_T_star,
    bicontinuity_probe,
    check_al_max_gap,
    composed_norm_estimate,
    dictionary_fn,
    dictionary_names,
    duality_residual,
    dyson_apply,
    dyson_vs_expm,
    equicontinuity_probe,
    expm,
    generator_apply,
    generator_check,
    jordan,
    laplace_consistency,
    laplace_residual,
    laplacian,
    locality_probe,
    lp_split,
    min_density_time,
    mv_integral,
    neumann_resolvent,
    neumann_vs_direct,
    pairing,
    parts_residual,
    positivity_scan,
    quotient_residual,
    resolvent,
    seminorm,
    skorohod_derivative,
    staged_bound_check,
    trotter_apply,
    tv_norm,
    voigt_property_test,
    vop_residual,
)
