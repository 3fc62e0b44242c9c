#!/usr/bin/env python3
"""Sweep the certification suite over a range of tolerances.

For each (function, eps) pair this computes the recipe, builds the
approximant, and reports N, w, the measured sup error, and the margin
sup_error / eps.  Useful for seeing how pessimistic the worst-case neuron
count is on smooth targets.
"""

import argparse
import math
import time

from sigapprox import FunctionSpec, build_approximant, compute_recipe, validate

SUITE = [
    ("x", 1.0, 1.0),
    ("x^2", 2.0, 1.0),
    ("abs(x-0.3)", 1.0, 0.7),
    ("sin(6*pi*x)", 6.0 * math.pi, 1.0),
    ("abs(x-0.3) + 0.3*sin(6*pi*x) + 0.2*x*(1-x)", 1.0 + 1.8 * math.pi + 0.2, 1.05),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, nargs="+", default=[0.2, 0.1, 0.05])
    ap.add_argument("--grid", type=int, default=4001)
    args = ap.parse_args()

    print(f"{'function':<45} {'eps':>6} {'N':>8} {'w':>12} "
          f"{'sup_error':>12} {'margin':>8} {'sec':>6}")
    failures = 0
    for text, lipschitz, sup in SUITE:
        spec = FunctionSpec.from_text(text, 0, 1, lipschitz=lipschitz, sup_bound=sup)
        for eps in args.eps:
            t0 = time.perf_counter()
            recipe = compute_recipe(spec, eps)
            g = build_approximant(spec, recipe)
            report = validate(g, spec, eps, max(args.grid, 2 * recipe.n))
            dt = time.perf_counter() - t0
            failures += not report.passed
            print(f"{text:<45} {eps:>6} {recipe.n:>8} {recipe.w:>12.2f} "
                  f"{report.sup_error:>12.3e} {report.sup_error / eps:>8.3f} "
                  f"{dt:>6.2f}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
