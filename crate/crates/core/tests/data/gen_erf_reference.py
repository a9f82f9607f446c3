"""Regenerate erf_reference.csv: complex erf sampled over |Re z|, |Im z| <= 25.

Values come from mpmath at 60 significant digits and are written with 17
significant digits. Run: python3 gen_erf_reference.py > erf_reference.csv
"""
import random

import mpmath

mpmath.mp.dps = 60
rng = random.Random(20170418)

points = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.5, 0.5), (25.0, 25.0),
          (-25.0, 25.0), (3.0, -24.0), (1e-6, 1e-6), (0.25, 30.0 / 1.2)]
for _ in range(60):
    points.append((rng.uniform(-3, 3), rng.uniform(-3, 3)))
for _ in range(120):
    points.append((rng.uniform(-25, 25), rng.uniform(-25, 25)))
for _ in range(60):
    points.append((rng.uniform(-0.5, 0.5), rng.uniform(-25, 25)))
for _ in range(60):
    points.append((rng.uniform(-25, 25), rng.uniform(-0.5, 0.5)))

print("re,im,erf_re,erf_im")
for re, im in points:
    w = mpmath.erf(mpmath.mpc(re, im))
    print("%.17g,%.17g,%s,%s" % (re, im,
                                 mpmath.nstr(w.real, 17, min_fixed=0, max_fixed=0),
                                 mpmath.nstr(w.imag, 17, min_fixed=0, max_fixed=0)))
