#!/usr/bin/env python3
"""Emit one SVG per chart kind into an output directory (default charts/)."""

import pathlib
import sys

from thh.charts import CHART_KINDS, ChartSpec, render_svg

RANGES = {
    "torsion": (2, 18, 60),
    "k1-page": (2, 0, 33),
    "v0-page": (3, 0, 60),
    "v1-page": (2, 0, 64),
    "eta-page": (2, 0, 48),
    "ko-answer": (2, 0, 40),
}


def main() -> int:
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "charts")
    outdir.mkdir(parents=True, exist_ok=True)
    for kind in CHART_KINDS:
        p, lo, hi = RANGES[kind]
        svg = render_svg(ChartSpec(kind, p, lo, hi))
        path = outdir / f"{kind}_p{p}_{lo}_{hi}.svg"
        path.write_text(svg)
        print(f"wrote {path} ({len(svg)} bytes)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
