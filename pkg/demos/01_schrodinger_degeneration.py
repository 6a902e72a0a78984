"""Degeneration of the Schrodinger cocycle with energy 2/t.

The transfer matrices [[2/t - v, -1], [1, 0]] with v in {0, 1} grow like
1/t at every step, so the t-adic exponent is exactly 1 and the complex
exponent chi(t) behaves like log(1/|t|).  We check both statements and
watch the ratio chi(t) / log(1/t) approach 1 as t shrinks.
"""
import math

from nalyap.lyapunov import chi_na_exact, chi_na_kingman, sweep
from nalyap.specparse import bundled_spec

spec = bundled_spec("schrodinger")

# exact subadditive approximants a_n / n: every word has lognorm n
for n in (1, 2, 4, 8):
    print(f"a_{n}/{n} = {chi_na_exact(spec, n)}")

est = chi_na_kingman(spec, n=200, S=20, seed=1)
print(f"Kingman estimate of chi_na: {est.value} (stderr {est.stderr})")

res = sweep(spec, [1e-2, 1e-3, 1e-4], n=1000, S=50, seed=1)
print(f"\nchi_na = {res.chi_na} ({res.chi_na_source})")
print(f"{'t':>8} {'chi(t)':>10} {'ratio':>8} {'|ratio - chi_na|':>18}")
for row in res.rows:
    print(f"{row.t:8.0e} {row.chi:10.4f} {row.chi_ratio:8.4f} {row.abs_error:18.4f}")
print("error non-increasing along the grid:", res.monotone)
print("the error decays like 1/log(1/t):",
      [round(r.abs_error * math.log(1 / r.t), 3) for r in res.rows])
