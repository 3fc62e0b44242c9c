import math
import random
from fractions import Fraction

import pytest

from sigapprox.engine import (
    Recipe,
    RecipeError,
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
from sigapprox.expressions import EvalDomainError, FunctionSpec
from sigapprox.partition import select_index
from sigapprox.sigmoid import sigmoid

WIGGLY = "abs(x-0.3) + 0.3*sin(6*pi*x) + 0.2*x*(1-x)"
WIGGLY_L = 1.0 + 1.8 * math.pi + 0.2

# Analytically true Lipschitz constants and sup bounds on [0, 1].  The
# constant function gets L = 1: its true modulus is 0, but the recipe
# requires a positive L and any upper bound is valid.
SUITE = [
    ("x", 1.0, 1.0),
    ("x^2", 2.0, 1.0),
    ("abs(x-0.3)", 1.0, 0.7),
    ("sin(6*pi*x)", 6.0 * math.pi, 1.0),
    ("3", 1.0, 3.0),
    (WIGGLY, WIGGLY_L, 1.05),
]


def make_spec(text, lipschitz, sup):
    return FunctionSpec.from_text(text, 0, 1, lipschitz=lipschitz, sup_bound=sup)


def manual_recipe(a, b, n, w=None, eta=0.01, m_f=1.0, m_sigma=1.0):
    h = (b - a) / n
    if w is None:
        w = math.log(n - 1.0) / h
    return Recipe(
        epsilon=eta * (m_f + 2 * m_sigma + 2),
        m_f=m_f,
        m_sigma=m_sigma,
        eta=eta,
        delta=eta,
        n=n,
        h=h,
        w=w,
        a=a,
        b=b,
        lipschitz=1.0,
        n_candidates=(3.0, float(n), 1.0 / eta),
    )


def test_compute_eta_values():
    assert compute_eta(0.01, 1.05, 1.0) == pytest.approx(0.01 / 5.05, rel=1e-15)
    assert compute_eta(1.0, 0.0, 0.0) == 0.5
    assert compute_eta(0.1, 2.0, 1.0) == pytest.approx(0.1 / 6.0, rel=1e-15)
    with pytest.raises(RecipeError):
        compute_eta(0.0, 1.0, 1.0)


def test_recipe_identity_hand_arithmetic():
    spec = make_spec("x", 1.0, 1.0)
    r = compute_recipe(spec, 0.2)
    assert r.eta == pytest.approx(0.04, rel=1e-15)
    assert r.delta == pytest.approx(0.04, rel=1e-15)
    assert r.n == 51
    assert r.h == pytest.approx(1.0 / 51.0, rel=1e-15)
    assert r.w == pytest.approx(51.0 * math.log(50.0), rel=1e-12)
    assert r.m_f_source == "supplied"
    assert r.lipschitz_source == "supplied"


def test_recipe_wiggly():
    spec = make_spec(WIGGLY, WIGGLY_L, 1.05)
    r = compute_recipe(spec, 0.01)
    assert r.eta == pytest.approx(1.9802e-3, rel=1e-4)
    assert r.delta == pytest.approx(2.889e-4, rel=1e-3)
    assert 6921 <= r.n <= 6927
    assert r.w == pytest.approx(math.log(r.n - 1.0) * r.n, rel=1e-6)


def test_recipe_records_candidates():
    spec = make_spec("x", 1.0, 1.0)
    r = compute_recipe(spec, 0.2)
    assert r.n_candidates[0] == 3.0
    assert r.n == int(math.floor(max(r.n_candidates))) + 1


def test_recipe_rejects_bad_inputs():
    spec = make_spec("x", 1.0, 1.0)
    with pytest.raises(RecipeError):
        compute_recipe(spec, 0.0)
    with pytest.raises(RecipeError):
        compute_recipe(spec, -0.1)


def test_recipe_cap_reports_required_n():
    spec = make_spec("x", 1.0, 1.0)
    with pytest.raises(RecipeError, match=r"N = \d+"):
        compute_recipe(spec, 1e-9)


def test_recipe_modulus_override():
    spec = FunctionSpec.from_text("x", 0, 1, sup_bound=1.0, modulus_override=0.04)
    r = compute_recipe(spec, 0.2)
    assert r.delta == 0.04
    assert r.lipschitz is None
    assert r.lipschitz_source == "override"
    assert r.n == 51


def test_exact_recipe_n_matches_double_path():
    spec = make_spec(WIGGLY, WIGGLY_L, 1.05)
    r = compute_recipe(spec, 0.01)
    assert exact_recipe_n(
        0, 1, Fraction(1, 100), Fraction(21, 20), 1, lipschitz=WIGGLY_L
    ) == r.n


def test_build_identity_coefficients():
    spec = make_spec("x", 1.0, 1.0)
    g = build_approximant(spec, manual_recipe(0.0, 1.0, 4))
    assert g.coeff0 == 0.0
    assert g.coeffs == (0.25, 0.25, 0.25, 0.25)
    assert g.unit_count == 5


def test_build_constant_coefficients():
    spec = make_spec("3", 1.0, 3.0)
    g = build_approximant(spec, manual_recipe(0.0, 1.0, 4))
    assert g.coeff0 == 3.0
    assert g.coeffs == (0.0, 0.0, 0.0, 0.0)


def test_build_square_coefficients():
    spec = make_spec("x^2", 2.0, 1.0)
    g = build_approximant(spec, manual_recipe(0.0, 1.0, 4))
    assert g.coeffs == (0.0625, 0.1875, 0.3125, 0.4375)


def test_build_rejects_non_finite_f():
    spec = FunctionSpec.from_text("1/(x - 0.5)", 0, 1, lipschitz=1.0, sup_bound=1.0)
    with pytest.raises(EvalDomainError):
        build_approximant(spec, manual_recipe(0.0, 1.0, 4))


def test_telescoping():
    for text, lipschitz, sup in SUITE:
        spec = make_spec(text, lipschitz, sup)
        r = compute_recipe(spec, 0.2)
        g = build_approximant(spec, r)
        total = g.coeff0
        for c in g.coeffs:
            total += c
        fb = spec(1.0)
        assert abs(total - fb) <= r.n * 4 * math.ulp(max(1.0, abs(fb)))


def test_evaluate_constant_near_left_endpoint():
    spec = make_spec("3", 1.0, 3.0)
    r = compute_recipe(spec, 0.5)
    g = build_approximant(spec, r)
    v = evaluate(g, 0.0)
    assert abs(v - 3.0) <= 3.0 * (1.0 / r.n) + 1e-12


def test_evaluate_identity_midpoint():
    spec = make_spec("x", 1.0, 1.0)
    r = compute_recipe(spec, 0.2)
    g = build_approximant(spec, r)
    assert abs(evaluate(g, 0.5) - 0.5) < 0.2


def test_evaluate_far_right_telescopes_to_f_b():
    spec = make_spec("x^2", 2.0, 1.0)
    r = compute_recipe(spec, 0.2)
    g = build_approximant(spec, r)
    total = g.coeff0
    for c in g.coeffs:
        total += c
    assert evaluate(g, 1.0 + 1.0) == pytest.approx(total, abs=1e-12)


def test_evaluate_rejects_non_finite_x():
    spec = make_spec("x", 1.0, 1.0)
    g = build_approximant(spec, manual_recipe(0.0, 1.0, 4))
    with pytest.raises(ValueError):
        evaluate(g, math.inf)


def test_fast_path_bit_identical():
    rng = random.Random(42)
    for text, lipschitz, sup, eps in [
        ("sin(6*pi*x)", 6.0 * math.pi, 1.0, 0.5),
        ("x", 1.0, 1.0, 0.2),
    ]:
        spec = make_spec(text, lipschitz, sup)
        r = compute_recipe(spec, eps)
        assert r.n <= 1000
        g = build_approximant(spec, r)
        for _ in range(10_000):
            x = rng.uniform(-0.5, 1.5)
            assert evaluate(g, x, fast=True) == evaluate(g, x, fast=False)


def test_validate_zero_function():
    spec = make_spec("0", 1.0, 0.0)
    r = compute_recipe(spec, 0.1)
    g = build_approximant(spec, r)
    rep = validate(g, spec, 0.1, 501)
    assert rep.sup_error == 0.0
    assert rep.passed


def test_validate_identity_passes():
    spec = make_spec("x", 1.0, 1.0)
    r = compute_recipe(spec, 0.2)
    g = build_approximant(spec, r)
    rep = validate(g, spec, 0.2, 2001)
    assert rep.passed
    assert rep.grid_size >= 2001
    assert 0.0 <= rep.argmax_x <= 1.0


def test_validate_grid_flags():
    spec = make_spec("x", 1.0, 1.0)
    r = compute_recipe(spec, 0.2)
    g = build_approximant(spec, r)
    rep = validate(g, spec, 0.2, 101, include_partition_points=False)
    assert rep.grid_size == 101
    with pytest.raises(ValueError):
        validate(g, spec, 0.2, 1)


def test_surrogate_constant():
    spec = make_spec("3", 1.0, 3.0)
    g = build_approximant(spec, manual_recipe(0.0, 1.0, 10))
    pts = g.partition.points
    for i in (3, 5, 10):
        x = 0.5 * (pts[i] + pts[i + 1])
        assert surrogate_L(g, spec, i, x) == pytest.approx(3.0, rel=1e-15)


def test_surrogate_identity_at_knot():
    spec = make_spec("x", 1.0, 1.0)
    r = manual_recipe(0.0, 1.0, 10, w=1e6)
    g = build_approximant(spec, r)
    pts = g.partition.points
    h = g.partition.h
    x = pts[5]
    # x4 + h*sigma(0) + h*sigma(-w*h); the last term is negligible at huge w
    expected = pts[4] + h * 0.5 + h * sigmoid(-r.w * h)
    assert surrogate_L(g, spec, 5, x) == pytest.approx(expected, rel=1e-12)
    assert surrogate_L(g, spec, 5, x) == pytest.approx(pts[4] + h / 2.0, rel=1e-9)


def test_surrogate_direct_substitution_i3():
    spec = make_spec("x^2", 2.0, 1.0)
    r = manual_recipe(0.0, 1.0, 10)
    g = build_approximant(spec, r)
    pts = g.partition.points
    x = pts[3]
    f = spec
    expected = (
        f(pts[1])
        + (f(pts[2]) - f(pts[1]))
        + (f(pts[3]) - f(pts[2])) * 0.5
        + (f(pts[4]) - f(pts[3])) * sigmoid(-g.w * g.partition.h)
    )
    assert surrogate_L(g, spec, 3, x) == pytest.approx(expected, rel=1e-13)


def test_surrogate_rejects_small_index():
    spec = make_spec("x", 1.0, 1.0)
    g = build_approximant(spec, manual_recipe(0.0, 1.0, 10))
    with pytest.raises(SurrogateNotApplicableError):
        surrogate_L(g, spec, 2, 0.15)
    with pytest.raises(ValueError):
        surrogate_L(g, spec, 11, 0.95)


def test_decomposition_zero_function():
    spec = make_spec("0", 1.0, 0.0)
    r = compute_recipe(spec, 0.1)
    g = build_approximant(spec, r)
    d = error_decomposition(g, spec, r, 0.5)
    assert d.i1 == 0.0 and d.i2 == 0.0


def test_decomposition_identity_bounds():
    spec = make_spec("x", 1.0, 1.0)
    r = compute_recipe(spec, 0.2)
    g = build_approximant(spec, r)
    d = error_decomposition(g, spec, r, 0.5)
    assert d.i1 < d.i1_bound == (1.0 + 1.0) * r.eta
    assert d.i2 < d.i2_bound == 3.0 * r.eta


def test_decomposition_triangle_inequality():
    rng = random.Random(3)
    spec = make_spec(WIGGLY, WIGGLY_L, 1.05)
    r = compute_recipe(spec, 0.2)
    g = build_approximant(spec, r)
    checked = 0
    while checked < 50:
        x = rng.uniform(0.0, 1.0)
        if select_index(g.partition, x) < 3:
            continue
        d = error_decomposition(g, spec, r, x)
        gap = abs(evaluate(g, x) - spec(x))
        slack = 8 * math.ulp(max(1.0, abs(evaluate(g, x)), abs(spec(x))))
        assert gap <= d.i1 + d.i2 + slack
        assert d.i1 < d.i1_bound
        assert d.i2 < d.i2_bound
        checked += 1


def test_slope_monotonicity():
    for text, lipschitz, sup in SUITE:
        spec = make_spec(text, lipschitz, sup)
        r = compute_recipe(spec, 0.2)
        g1 = build_approximant(spec, r)
        g2 = build_approximant(
            spec,
            Recipe(
                epsilon=r.epsilon,
                m_f=r.m_f,
                m_sigma=r.m_sigma,
                eta=r.eta,
                delta=r.delta,
                n=r.n,
                h=r.h,
                w=2.0 * r.w,
                a=r.a,
                b=r.b,
                lipschitz=r.lipschitz,
                n_candidates=r.n_candidates,
            ),
        )
        s1 = validate(g1, spec, 0.2, 801).sup_error
        s2 = validate(g2, spec, 0.2, 801).sup_error
        assert s2 <= s1 + 2.0 * r.eta


def test_certificate_suite_small():
    for text, lipschitz, sup in SUITE:
        spec = make_spec(text, lipschitz, sup)
        r = compute_recipe(spec, 0.2)
        g = build_approximant(spec, r)
        rep = validate(g, spec, 0.2, 2001)
        assert rep.passed, (text, rep)


def test_overestimated_bounds_still_certify():
    spec = FunctionSpec.from_text("x", 0, 1, lipschitz=2.0, sup_bound=2.0)
    r = compute_recipe(spec, 0.2)
    g = build_approximant(spec, r)
    assert validate(g, spec, 0.2, 2001).passed
