"""Parallel-tangent curves: inflection law, cusp-free speed and resultant on random configurations."""

import argparse
import math

import numpy as np

from altcurve.degenerate import DegenerateConfig, degenerate_curve, degenerate_resultant, derived
from altcurve.oracle import oracle_inflection_count, oracle_min_speed, oracle_self_intersection


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    bad_count = crossings = 0
    min_speed = math.inf
    worst_rel = 0.0
    for _ in range(args.n):
        th0 = rng.uniform(0, 2 * math.pi)
        ths = th0 + rng.choice([-1, 1]) * rng.uniform(0.3, math.pi - 0.3)
        a, b, m = (v if abs(v) > 0.1 else 0.1 for v in rng.uniform(-6, 6, 3))
        cfg = DegenerateConfig(
            z0=(math.cos(th0), math.sin(th0)),
            zs=(math.cos(ths), math.sin(ths)),
            mu=rng.uniform(0.2, 3),
            nu=rng.uniform(0.2, 3),
            m=m,
            alpha=a,
            beta=b,
        )
        d = derived(cfg)
        curve = degenerate_curve(cfg)
        bad_count += oracle_inflection_count(curve).count != int(d.a * d.b < 0)
        crossings += oracle_self_intersection(curve) is not None
        min_speed = min(min_speed, oracle_min_speed(curve)[1] / curve.diameter())
        want = -36.0 * d.a * d.b * cfg.m**2 * d.upsilon**2
        worst_rel = max(worst_rel, abs(degenerate_resultant(cfg) - want) / abs(want))
    print(f"{args.n} configurations")
    print(f"  inflection-count violations: {bad_count}")
    print(f"  self-intersections found:    {crossings}")
    print(f"  smallest min|Z'| / diameter: {min_speed:.3e}")
    print(f"  worst resultant rel. error:  {worst_rel:.3e}")


if __name__ == "__main__":
    main()
