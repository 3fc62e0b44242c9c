#!/usr/bin/env python3
"""Build and certify the wiggly benchmark end to end.

Target: f(x) = |x - 0.3| + 0.3 sin(6 pi x) + 0.2 x (1 - x) on [0, 1] with
eps = 0.01.  Prints the recipe, validates the sup-norm error on a dense
grid, spot-checks the I1/I2 error split, and optionally writes the network
document and a sample table.
"""

import argparse
import math
import random
import time

from sigapprox import (
    FunctionSpec,
    build_approximant,
    compute_recipe,
    error_decomposition,
    evaluate,
    select_index,
    to_network_document,
    validate,
    write_network_document,
    write_samples,
)

WIGGLY = "abs(x-0.3) + 0.3*sin(6*pi*x) + 0.2*x*(1-x)"
WIGGLY_L = 1.0 + 1.8 * math.pi + 0.2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, default=0.01)
    ap.add_argument("--grid", type=int, default=20_001)
    ap.add_argument("--out-network", default=None)
    ap.add_argument("--out-samples", default=None)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    spec = FunctionSpec.from_text(WIGGLY, 0, 1, lipschitz=WIGGLY_L, sup_bound=1.05)
    recipe = compute_recipe(spec, args.eps)
    print(f"eps     = {args.eps}")
    print(f"eta     = {recipe.eta:.6e}")
    print(f"delta   = {recipe.delta:.6e}")
    print(f"N       = {recipe.n}")
    print(f"w       = {recipe.w:.4f}")

    t0 = time.perf_counter()
    g = build_approximant(spec, recipe)
    t1 = time.perf_counter()
    report = validate(g, spec, args.eps, args.grid)
    t2 = time.perf_counter()
    print(f"build    {t1 - t0:.2f} s, validate {t2 - t1:.2f} s "
          f"({report.grid_size} grid points)")
    print(f"sup |G - f| = {report.sup_error:.6e} at x = {report.argmax_x:.6f} "
          f"-> {'PASS' if report.passed else 'FAIL'}")

    rng = random.Random(args.seed)
    print("\nerror split at 5 random points (I1 = saturation, I2 = local):")
    shown = 0
    while shown < 5:
        x = rng.uniform(0.0, 1.0)
        if select_index(g.partition, x) < 3:
            continue
        d = error_decomposition(g, spec, recipe, x)
        print(f"  x = {x:.4f}  I1 = {d.i1:.3e} (< {d.i1_bound:.3e})"
              f"  I2 = {d.i2:.3e} (< {d.i2_bound:.3e})"
              f"  |G - f| = {abs(evaluate(g, x) - spec(x)):.3e}")
        shown += 1

    if args.out_network:
        write_network_document(to_network_document(g, recipe, spec), args.out_network)
        print(f"\nwrote {args.out_network}")
    if args.out_samples:
        rows = write_samples(g, spec, 2001, args.out_samples)
        print(f"wrote {args.out_samples} ({rows} rows)")

    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
