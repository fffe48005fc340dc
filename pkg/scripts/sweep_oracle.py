"""Compare the analytic classifier with the brute-force oracle on random parameters.

Draws (alpha, beta) uniformly from a square, drops draws closer than
``--margin`` to a class boundary (``--margin 0`` keeps everything) and
reports agreement per class, the mismatches, and the runtime.
"""

import argparse
import collections
import time

import numpy as np

from altcurve import CurveInstance, ShapeParams, classify
from altcurve.classify import boundary_distance
from altcurve.oracle import OracleSettings, oracle_classify


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--box", type=float, default=8.0)
    ap.add_argument("--margin", type=float, default=0.05)
    ap.add_argument("--samples", type=int, default=4096)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    settings = OracleSettings(samples=args.samples)
    tally = collections.Counter()
    agree = collections.Counter()
    mismatches = []
    start = time.perf_counter()
    done = 0
    while done < args.n:
        a, b = rng.uniform(-args.box, args.box, 2)
        if boundary_distance(a, b) <= args.margin:
            continue
        done += 1
        kind = classify(ShapeParams(a, b)).kind
        got = oracle_classify(CurveInstance.from_tangents(a, b), settings).kind
        tally[kind] += 1
        if got is kind:
            agree[kind] += 1
        else:
            mismatches.append((a, b, kind.value, got.value, float(boundary_distance(a, b))))
    elapsed = time.perf_counter() - start

    print(f"{done} draws in {elapsed:.1f} s, margin {args.margin}, {args.samples} oracle samples")
    for kind, n in sorted(tally.items(), key=lambda kv: kv[0].code):
        print(f"  {kind.value:<20s} {agree[kind]:5d} / {n:5d}")
    for a, b, want, got, dist in mismatches[:20]:
        print(f"  mismatch alpha={a:+.6f} beta={b:+.6f} analytic={want} oracle={got} boundary distance={dist:.2e}")
    print(f"{len(mismatches)} mismatches")


if __name__ == "__main__":
    main()
