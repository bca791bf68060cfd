####################################################################
###     _____                     ____                  _        ###
###    |_   _|____      _____ _ _| __ )  ___ _ __   ___| |__     ###
###      | |/ _ \ \ /\ / / _ \ '__|  _ \ / _ \ '_ \ / __| '_ \   ###
###      | | (_) \ V  V /  __/ |  | |_) |  __/ | | | (__| | | |  ###
###      |_|\___/ \_/\_/ \___|_|  |____/ \___|_| |_|\___|_| |_|  ###
###                                                              ###
###--------------------------------------------------------------###
###                                                              ###
### This file is part of the TowerBench package for numerical    ###
### checks of bubble-tower constructions for the fractional      ###
### Laplacian.                                                   ###
###                                                              ###
### Copyright (c) 2026 by the TowerBench developers.             ###
###                                                              ###
###--------------------------------------------------------------###
###                                                              ###
### For license info, please see the README and LICENSE files    ###
### in the main directory.                                       ###
###                                                              ###
###--------------------------------------------------------------###

"""
A convenience module to avoid tedious imports from various submodules.

Imports the most commonly used names from all of TowerBench, making
them available in one module.

"""

#import everything that is useful

from towerbench.util import NumericalError, power_excess, loglog_slope

from towerbench.results import \
    ResultTable, tabulated, write_table, read_table, header_comment, parameter_hash

from towerbench.problem import \
    ProblemParams, ProblemError, admissible_s_window, is_admissible, sphere_area, \
    bubble_constant, operator_constant, extension_constant, kernel_constant

from towerbench.quadrature import \
    QuadratureSpec, QuadratureError, DEFAULT_SPEC, gauss_legendre, gauss_jacobi, \
    log_panels, split_panels, sphere_rule

from towerbench.profiles import \
    PowerProfile, GaussianProfile, DistanceProfile, RadialSum, zonal_means, spherical_means

from towerbench.bubble import \
    Bubble, TowerConfig, ConfigurationError, DirectionError, bubble_value, bubble_profile, \
    tower_centers, tower_value, bubble_profile_sum, z_derivative, direction_weight, \
    rotate_tower, reflect_y2

from towerbench.weight import \
    ConstantWeight, WeightField, WeightError, PolarSingularityError, \
    DegenerateCriticalPointError, default_hessian, weight_eval, weight_grad, weight_hess, \
    critical_degree

from towerbench.operators.fractional import \
    EvaluationError, frac_lap_exact_bubble, frac_lap_exact_gaussian, frac_lap_quadrature, \
    frac_lap_values

from towerbench.operators.extension import \
    ExtensionField, DomainError, FluxError, poisson_extend, extension_flux, \
    weighted_harmonicity, kernel_mass, kernel_normalization

from towerbench.validation.norms import \
    SampleGrid, NormReport, EmptyGridError, norm_star, norm_starstar, norm_weight, \
    single_bubble_norm

from towerbench.validation.interaction import \
    DegeneratePairError, ParameterRangeError, lemma_b1_ratio, sampled_b1_sup, \
    convolution_integral, lemma_b2_ratio, sampled_b2_sup, convolution_decay_exponent

from towerbench.validation.residual import \
    ResidualField, residual_eval, residual_split, residual_norm_sweep

from towerbench.validation.pohozaev import \
    HalfBallRegion, PohozaevReport, ConvergenceError, pohozaev_translation, \
    pohozaev_scaling, hemisphere_quadrature, half_ball_quadrature, ball_quadrature, \
    sphere_quadrature

from towerbench.reduction.integrals import \
    power_integral, critical_energy, second_moment, pair_integral, pair_integral_scaled

from towerbench.reduction.scaling import \
    m_exponent, m_from_eps, lambda_from_t, lambda_window, clamp_lambda, offset_bound

from towerbench.reduction.energy import \
    EnergyBreakdown, StepSizeError, TowerQuadrature, pair_matrix, energy, energy_model, \
    denergy_dlambda, dirichlet_identity

from towerbench.reduction.constants import \
    Constants, FitQualityError, constant_B1, constant_B2, constant_B2_fit, constant_B3, \
    interaction_fit, lattice_sum, lattice_limit, lattice_zeta_limit, reduced_constants

from towerbench.reduction.solver import \
    ReducedSolution, SearchBox, NoRootError, WindowError, solve_reduced, closed_form_t, \
    newton_t, newton_v, boundary_signs, default_box, balance

from towerbench.config import RunConfig, ConfigError, load_config

from towerbench.experiments import \
    cmd_bubble_eval, cmd_residual_sweep, cmd_pohozaev, cmd_reduce, cmd_constants, cmd_lattice

from towerbench.selftest import cmd_selftest

from towerbench.visualization import plot_script, PlotError
