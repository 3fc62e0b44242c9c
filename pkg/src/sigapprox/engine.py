"""Constructive single-hidden-layer approximation with a sup-norm certificate.

Given a target error eps, a bound M_f >= sup|f| on [a, b], a bound
M_sigma >= sup|sigma|, and a Lipschitz constant L, the recipe is

    eta   = eps / (M_f + 2*M_sigma + 2)
    delta = eta / L
    N     = floor(max(3, 2*(b-a)/delta, 1/eta)) + 1
    h     = (b-a)/N
    w     = ln(N-1)/h        (the minimal sufficient slope)

and the approximant on the widened uniform grid x_0..x_{N+1} is

    G(x) = f(a)*sigma(w*(x - x_0))
         + sum_{k=2}^{N+1} (f(x_k) - f(x_{k-1})) * sigma(w*(x - x_k)),

a network of N+1 units whose output weights are forward differences of f.
The sup error on [a, b] is provably below eps; `validate` measures it on a
grid, and `error_decomposition` exposes the proof's I1/I2 split through the
local surrogate L_i that pretends all far sigmoids are saturated.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional

from .expressions import FunctionSpec, estimate_lipschitz, estimate_sup
from .partition import UniformPartition, select_index, unif_part
from .sigmoid import sigmoid

__all__ = [
    "Recipe",
    "SigmoidApproximant",
    "ErrorReport",
    "DecompositionReport",
    "RecipeError",
    "SurrogateNotApplicableError",
    "compute_eta",
    "compute_recipe",
    "exact_recipe_n",
    "build_approximant",
    "evaluate",
    "validate",
    "surrogate_L",
    "error_decomposition",
]

DEFAULT_N_CAP = 10_000_000

# Fast-path saturation cutoffs for the shared-slope evaluation.  For
# arguments above POS_CUTOFF the sigmoid is exactly 1.0 in double
# (1/(1 + e^-t) rounds to 1.0 once e^-t < 2^-53, i.e. t > ~36.75); below
# NEG_CUTOFF exp underflows to exactly 0.0 (around t < -745.2), so both
# shortcuts are bit-identical to evaluating the sigmoid.
POS_CUTOFF = 37.0
NEG_CUTOFF = -747.0

SUPPLIED = "supplied"
ESTIMATED = "estimated"
OVERRIDE = "override"


class RecipeError(ValueError):
    """Invalid or unattainable recipe parameters."""


class SurrogateNotApplicableError(ValueError):
    """The local surrogate is only defined for cell indices i >= 3."""


@dataclass(frozen=True)
class Recipe:
    """Certified parameter bundle for one approximation run.

    `n_candidates` records the three raw operands of the floor in the N
    formula so that N can be re-derived independently (e.g. with exact
    rational arithmetic).
    """

    epsilon: float
    m_f: float
    m_sigma: float
    eta: float
    delta: float
    n: int
    h: float
    w: float
    a: float
    b: float
    lipschitz: Optional[float]
    n_candidates: tuple[float, float, float]
    m_f_source: str = SUPPLIED
    lipschitz_source: str = SUPPLIED


@dataclass(frozen=True)
class ErrorReport:
    grid_size: int
    sup_error: float
    argmax_x: float
    target_epsilon: float
    passed: bool


@dataclass(frozen=True)
class DecompositionReport:
    x: float
    index_i: int
    i1: float
    i2: float
    i1_bound: float
    i2_bound: float


def compute_eta(epsilon: float, m_f: float, m_sigma: float) -> float:
    """eta = eps / (M_f + 2*M_sigma + 2); the denominator is >= 2, so
    eta <= eps/2."""
    if epsilon <= 0.0:
        raise RecipeError("epsilon must be positive")
    if m_f < 0.0 or m_sigma < 0.0:
        raise RecipeError("M_f and M_sigma must be nonnegative")
    return epsilon / (m_f + 2.0 * m_sigma + 2.0)


def compute_recipe(
    spec: FunctionSpec,
    epsilon: float,
    m_sigma: float = 1.0,
    n_cap: int = DEFAULT_N_CAP,
) -> Recipe:
    """Derive (eta, delta, N, h, w) for the target function and error.

    Missing M_f / L are filled in by the grid estimators; a supplied
    modulus_override replaces delta = eta/L entirely.  N above `n_cap` is
    rejected with the required value in the message: the requested epsilon
    is too small for desk-scale validation.
    """
    if epsilon <= 0.0:
        raise RecipeError("epsilon must be positive")
    a, b = spec.interval.a, spec.interval.b

    if spec.sup_bound is not None:
        m_f, m_f_source = float(spec.sup_bound), SUPPLIED
    else:
        m_f, m_f_source = estimate_sup(spec), ESTIMATED

    eta = compute_eta(epsilon, m_f, m_sigma)

    lipschitz: Optional[float]
    if spec.modulus_override is not None:
        delta = float(spec.modulus_override)
        lipschitz, lipschitz_source = None, OVERRIDE
    else:
        if spec.lipschitz is not None:
            lipschitz, lipschitz_source = float(spec.lipschitz), SUPPLIED
        else:
            lipschitz, lipschitz_source = estimate_lipschitz(spec), ESTIMATED
        if lipschitz <= 0.0:
            raise RecipeError("Lipschitz constant must be positive")
        delta = eta / lipschitz

    candidates = (3.0, 2.0 * (b - a) / delta, 1.0 / eta)
    n = int(math.floor(max(candidates))) + 1
    if n > n_cap:
        raise RecipeError(
            f"required N = {n} exceeds the cap {n_cap}; "
            "epsilon is too small for this configuration"
        )
    h = (b - a) / n
    w = math.log(n - 1.0) / h
    return Recipe(
        epsilon=float(epsilon),
        m_f=m_f,
        m_sigma=float(m_sigma),
        eta=eta,
        delta=delta,
        n=n,
        h=h,
        w=w,
        a=a,
        b=b,
        lipschitz=lipschitz,
        n_candidates=candidates,
        m_f_source=m_f_source,
        lipschitz_source=lipschitz_source,
    )


def exact_recipe_n(
    a: float,
    b: float,
    epsilon: float,
    m_f: float,
    m_sigma: float,
    lipschitz: Optional[float] = None,
    modulus_override: Optional[float] = None,
) -> int:
    """Re-derive N with exact rational arithmetic over the given doubles.

    Cross-checks the double-precision floor in compute_recipe: the floor is
    the only place where rounding could move N across an integer boundary.
    """
    eps = Fraction(epsilon)
    eta = eps / (Fraction(m_f) + 2 * Fraction(m_sigma) + 2)
    if modulus_override is not None:
        delta = Fraction(modulus_override)
    else:
        if lipschitz is None:
            raise RecipeError("need lipschitz or modulus_override")
        delta = eta / Fraction(lipschitz)
    width = Fraction(b) - Fraction(a)
    best = max(Fraction(3), 2 * width / delta, 1 / eta)
    return math.floor(best) + 1


@dataclass(frozen=True)
class SigmoidApproximant:
    """The network G: shared slope w, centers from the widened partition,
    output weights = forward differences of f (coeffs[j] belongs to
    k = j + 2), plus f(a) on the unit centered at x_0."""

    w: float
    partition: UniformPartition
    coeff0: float
    coeffs: tuple[float, ...] = field(repr=False)

    @property
    def unit_count(self) -> int:
        return self.partition.n_intervals + 1

    def coeff(self, k: int) -> float:
        """Output weight of the unit centered at x_k, k in {2..N+1}."""
        return self.coeffs[k - 2]

    @cached_property
    def _centers(self) -> tuple[float, ...]:
        pts = self.partition.points
        return (pts[0],) + pts[2:]

    @cached_property
    def _unit_coeffs(self) -> tuple[float, ...]:
        return (self.coeff0,) + self.coeffs

    @cached_property
    def _prefix(self) -> tuple[float, ...]:
        # prefix[u] = left-fold of unit coefficients 0..u; identical to the
        # naive ascending accumulation when every skipped sigmoid is 1.0
        out = []
        acc = 0.0
        for c in self._unit_coeffs:
            acc += c
            out.append(acc)
        return tuple(out)


def build_approximant(spec: FunctionSpec, recipe: Recipe) -> SigmoidApproximant:
    """Construct G for the recipe: one f evaluation per partition point."""
    a, b = spec.interval.a, spec.interval.b
    if (a, b) != (recipe.a, recipe.b):
        raise RecipeError("recipe interval does not match the function spec")
    p = unif_part(a, b, recipe.n)
    values = []
    for x in p.points:
        v = spec(x)
        if not math.isfinite(v):
            raise RecipeError(f"f is non-finite at partition point x={x!r}")
        values.append(v)
    coeff0 = values[1]
    coeffs = tuple(values[k] - values[k - 1] for k in range(2, recipe.n + 2))
    return SigmoidApproximant(w=recipe.w, partition=p, coeff0=coeff0, coeffs=coeffs)


def evaluate(g: SigmoidApproximant, x: float, fast: bool = True) -> float:
    """G(x), summed over units in ascending center order.

    The fast path replaces saturated sigmoids by exactly 1.0 (argument above
    POS_CUTOFF, folded through the precomputed prefix sums) and exactly 0.0
    (below NEG_CUTOFF); both substitutions are bit-identical to the naive
    path.  Evaluation outside [a, b] is permitted; the certificate only
    covers the inside.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    w = g.w
    centers = g._centers
    coeffs = g._unit_coeffs
    if fast:
        lo = bisect_left(centers, x - POS_CUTOFF / w)
        hi = bisect_right(centers, x - NEG_CUTOFF / w)
        acc = g._prefix[lo - 1] if lo > 0 else 0.0
        for u in range(lo, hi):
            acc += coeffs[u] * sigmoid(w * (x - centers[u]))
        return acc
    acc = 0.0
    for u in range(len(centers)):
        acc += coeffs[u] * sigmoid(w * (x - centers[u]))
    return acc


def _error_grid(
    g: SigmoidApproximant, a: float, b: float, grid_size: int, include_knots: bool
) -> list[float]:
    xs = [a + (b - a) * j / (grid_size - 1) for j in range(grid_size)]
    if include_knots:
        xs.extend(p for p in g.partition.points if a < p < b)
        xs = sorted(set(xs))
    return xs


def validate(
    g: SigmoidApproximant,
    spec: FunctionSpec,
    epsilon: float,
    grid_size: int,
    include_partition_points: bool = True,
) -> ErrorReport:
    """Measure sup |G - f| on a uniform grid of [a, b] (endpoints included,
    partition knots merged in by default so the estimate cannot alias the
    mesh).  Pass iff the measured sup is below epsilon.  Ties on the sup go
    to the leftmost grid point."""
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    a, b = spec.interval.a, spec.interval.b
    xs = _error_grid(g, a, b, grid_size, include_partition_points)
    sup = -1.0
    argmax = a
    for x in xs:
        fx = spec(x)
        if not math.isfinite(fx):
            raise ValueError(f"f is non-finite at grid point x={x!r}")
        err = abs(evaluate(g, x) - fx)
        if err > sup:
            sup = err
            argmax = x
    return ErrorReport(
        grid_size=len(xs),
        sup_error=sup,
        argmax_x=argmax,
        target_epsilon=float(epsilon),
        passed=sup < epsilon,
    )


def surrogate_L(g: SigmoidApproximant, spec: FunctionSpec, i: int, x: float) -> float:
    """The proof's local surrogate for x in [x_i, x_{i+1}], i >= 3:

        L_i(x) = f(a) + sum_{k=2}^{i-1} (f(x_k) - f(x_{k-1}))
               + (f(x_i) - f(x_{i-1})) * sigma(w*(x - x_i))
               + (f(x_{i+1}) - f(x_i)) * sigma(w*(x - x_{i+1}))

    i.e. every step left of the cell is fully on, every step right is fully
    off, and only the two boundary units keep their true sigmoid value.
    """
    n = g.partition.n_intervals
    if i < 3:
        raise SurrogateNotApplicableError(
            f"surrogate is defined only for i >= 3, got i={i}"
        )
    if i > n:
        raise ValueError(f"i={i} exceeds the number of cells N={n}")
    pts = g.partition.points
    if not (pts[i] <= x <= pts[i + 1]):
        raise ValueError(f"x={x!r} not in cell [{pts[i]!r}, {pts[i + 1]!r}]")
    acc = g.coeff0
    for k in range(2, i):
        acc += g.coeff(k)
    acc += g.coeff(i) * sigmoid(g.w * (x - pts[i]))
    acc += g.coeff(i + 1) * sigmoid(g.w * (x - pts[i + 1]))
    return acc


def error_decomposition(
    g: SigmoidApproximant, spec: FunctionSpec, recipe: Recipe, x: float
) -> DecompositionReport:
    """Split |G(x) - f(x)| into I1 = |G - L_i| (far-sigmoid saturation
    error) and I2 = |L_i - f| (local reconstruction error), with the proof's
    strict bounds (1 + M_f)*eta and (2*M_sigma + 1)*eta.

    Only defined where select_index yields i >= 3; smaller i raises
    SurrogateNotApplicableError and the diagnostic is skipped.
    """
    i = select_index(g.partition, x)
    li = surrogate_L(g, spec, i, x)
    gx = evaluate(g, x)
    fx = spec(x)
    return DecompositionReport(
        x=float(x),
        index_i=i,
        i1=abs(gx - li),
        i2=abs(li - fx),
        i1_bound=(1.0 + recipe.m_f) * recipe.eta,
        i2_bound=(2.0 * recipe.m_sigma + 1.0) * recipe.eta,
    )
