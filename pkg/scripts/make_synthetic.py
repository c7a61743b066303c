#!/usr/bin/env python
"""Regenerate the committed synthetic benchmark fixture.

Five Gaussian blobs on a circle of radius 10, two noise coordinates,
labels in column 0.  Deterministic; the output is committed so the
golden benchmark manifest runs without network access.
"""

import os
import sys

import numpy as np


def main():
    rng = np.random.default_rng(7)
    per_class, radius, noise = 80, 10.0, 1.0
    rows = []
    for label in range(1, 6):
        ang = 2.0 * np.pi * (label - 1) / 5.0
        center = np.array([radius * np.cos(ang), radius * np.sin(ang)])
        pts = center + noise * rng.standard_normal((per_class, 2))
        junk = rng.standard_normal((per_class, 2))
        for i in range(per_class):
            vals = [label] + [round(v, 6) for v in (*pts[i], *junk[i])]
            rows.append(",".join(str(v) for v in vals))
    order = rng.permutation(len(rows))
    here = os.path.dirname(os.path.abspath(__file__))
    dest = os.path.join(here, "..", "benchmarks", "data", "synthetic_blobs.csv")
    os.makedirs(os.path.dirname(dest), exist_ok=True)
    with open(dest, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows[i] for i in order) + "\n")
    print(f"wrote {len(rows)} rows to {os.path.abspath(dest)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
