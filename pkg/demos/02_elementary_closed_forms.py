"""Elementary groups: the affine and the {0, infinity} closed forms.

An affine measure (common fixed point at infinity) has
chi_na = |sum p_i log|alpha_i||, read off the diagonal.  When the group
preserves {0, infinity} and some element swaps them, chi_na = 0.  We
classify each bundled example, evaluate the closed form, and compare it
with the Kingman estimate and with the complex side.
"""
import math

from nalyap.classify import chi_na_affine, chi_na_zero_infty, classify_spec
from nalyap.lyapunov import chi_c, chi_na_kingman
from nalyap.specparse import bundled_spec
from nalyap.sl2na import MatNA

affine = bundled_spec("affine")
gc = classify_spec(affine)
print("affine.cfg classified as", gc.tag)
print("closed form chi_na =", chi_na_affine(affine, gc.conjugator))
print("Kingman (n=400, S=50):", round(chi_na_kingman(affine, 400, 50, seed=3).value, 4))
est = chi_c(affine, 1e-3, 2000, 50, seed=3)
print("complex ratio at t=1e-3:", round(est.value / math.log(1e3), 4))

# the closed form survives an integral change of coordinates
h = MatNA.from_rows([[1, 1], [1, 2]])
conj = affine.conjugated(h)
gc2 = classify_spec(conj)
print("\nconjugated copy:", gc2.tag, "chi_na =", chi_na_affine(conj, gc2.conjugator))

zi = bundled_spec("zeroinfty")
report = {}
print("\nzeroinfty.cfg classified as", classify_spec(zi).tag)
print("closed form chi_na =", chi_na_zero_infty(zi, report=report), report)
print("Kingman (n=400, S=50):", round(chi_na_kingman(zi, 400, 50, seed=3).value, 4))
