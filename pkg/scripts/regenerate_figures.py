"""Write the shape diagram (SVG + CSV) and the nine-curve gallery to an output directory."""

import argparse
import os
import time

from altcurve.cli import gallery_svgs
from altcurve.diagram import DiagramSpec, class_areas, classify_grid, export_grid_csv, render_shape_diagram


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="figures")
    ap.add_argument("--resolution", type=int, default=400)
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)

    start = time.perf_counter()
    grid = classify_grid(DiagramSpec(resolution=args.resolution))
    with open(os.path.join(args.outdir, "shape_diagram.svg"), "w", encoding="utf-8") as fh:
        fh.write(render_shape_diagram(grid))
    with open(os.path.join(args.outdir, "shape_diagram.csv"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(export_grid_csv(grid))
    for panel, svg in gallery_svgs().items():
        with open(os.path.join(args.outdir, f"gallery_{panel}.svg"), "w", encoding="utf-8") as fh:
            fh.write(svg)
    print(f"wrote diagram and gallery to {args.outdir} in {time.perf_counter() - start:.2f} s")
    for kind, frac in class_areas(grid).items():
        if frac:
            print(f"  {kind.value:<20s} {100 * frac:6.2f} %")


if __name__ == "__main__":
    main()
