"""Certified single-hidden-layer sigmoid approximation.

Given a continuous target function on [a, b] and an error budget eps, the
package computes a sufficient neuron count and slope, builds the explicit
one-hidden-layer approximant whose output weights are forward differences
of f, measures the sup-norm error against the certificate, and exports the
resulting network.  Supporting machinery: exact Stirling numbers, the
closed-form nth derivative of the sigmoid, epsilon-N limit witnesses, and
a small expression language for specifying f textually.
"""

from .engine import (
    DecompositionReport,
    ErrorReport,
    Recipe,
    RecipeError,
    SigmoidApproximant,
    SurrogateNotApplicableError,
    build_approximant,
    compute_eta,
    compute_recipe,
    error_decomposition,
    evaluate,
    exact_recipe_n,
    surrogate_L,
    validate,
)
from .expressions import (
    EvalDomainError,
    ExprError,
    ExprSyntaxError,
    FunctionSpec,
    Interval,
    LexError,
    UnknownIdentifierError,
    estimate_lipschitz,
    estimate_sup,
    evaluate_ast,
    format_ast,
    parse,
)
from .export import (
    approximant_from_document,
    read_network_document,
    to_network_document,
    write_network_document,
    write_samples,
)
from .limits import (
    LimitWitness,
    SaturationSlope,
    boundary_residual,
    falsify_limit,
    saturation_slope,
    sigmoid_saturation_slope,
    sigmoid_witness_at_bot,
    sigmoid_witness_at_top,
)
from .partition import UniformPartition, select_index, unif_part
from .sigmoid import (
    MAX_DERIVATIVE_ORDER,
    sigmoid,
    sigmoid_deriv1,
    sigmoid_deriv2,
    sigmoid_nth_derivative,
)
from .stirling import StirlingTable, factorial, stirling2, stirling_row

__version__ = "0.1.0"
