"""The hybrid cocycle: sigma_c(g_t, z(t)) / log(1/|t|) tends to sigma_na(g, z).

The gap is a constant divided by log(1/|t|): for E and z = -1 the
constant is log 3, so the convergence is slow but monotone.  The grid
stops at 1e-5: below that, float evaluation of E (entries of size 2/t)
can no longer certify det = 1 and specialization refuses with DetDrift.
"""
import math

from nalyap.hybrid import continuity_check, hybrid_seminorm
from nalyap.laurent import t
from nalyap.sl2na import P1NA
from nalyap.specparse import bundled_spec

print("hybrid seminorm of 1/t + 3 at t = 1e-2, 1e-6, 0:",
      [round(hybrid_seminorm(1 / t + 3, x), 4) for x in (1e-2, 1e-6, 0)])

spec = bundled_spec("nonelem")
grid = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5]
for name, g in zip(spec.names, spec.mats):
    for z in (1 + t, -1):
        rows = continuity_check(g, P1NA.from_series(z), grid)
        devs = " ".join(f"{d:.4f}" for _, d in rows)
        print(f"{name}, z={z}: {devs}")
print("log 3 / log(1/t):  ", " ".join(f"{math.log(3) / math.log(1 / x):.4f}" for x in grid))
