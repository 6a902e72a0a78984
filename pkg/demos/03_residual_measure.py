"""Stationary measures and their residual (reduction) measures.

For the non-elementary pair D = diag(1/t, t) and its conjugate E, the
stationary measure lives on Laurent series points.  Reducing to the
components of the trivial model (the Gauss point) gives an atomic measure;
at small t the complex stationary measure clusters on the same atoms.
"""
from nalyap.classify import classify_spec
from nalyap.measures import ModelSpec, compare_residual, residual_measure, sample_stationary
from nalyap.sl2na import BallNA
from nalyap.specparse import bundled_spec

spec = bundled_spec("nonelem")
gc = classify_spec(spec)
print("class:", gc.tag, "witness words:", gc.detail["witness_labels"])

smp = sample_stationary(spec, "na", n=40, S=200, seed=5)
print("\nfirst stationary samples:")
for z in smp.points[:4]:
    print("  ", z.affine(6) if z.in_unit_disk() else f"1/z = {z.y * z.x.inv(6)}")

for model in (ModelSpec.trivial(), ModelSpec((BallNA.affine(1, 1),))):
    meas = residual_measure(smp, model)
    print(f"\nresidual measure on a model with {len(model.marked)} marked point(s):")
    for atom in meas.atoms:
        print(f"   {atom.label:14s} {atom.mass:.3f}")

rep = compare_residual(spec, ModelSpec.trivial(), 1e-3, n=40, S=400, seed=5)
print(f"\ncomplex side at t=1e-3: TV distance {rep.tv:.3f}")
for label, a, b in rep.matched:
    print(f"   {label:8s} t-adic {a:.3f}   complex {b:.3f}")
