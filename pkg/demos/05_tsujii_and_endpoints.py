"""Approximation inequalities and endpoint types.

Two experiments: the distance from a Diophantine-like parameter to the
nearby rational plateaus (bounded by e^{D_f} |theta - p/q| at
continued-fraction approximants), and the two endpoint flavours of a
bubble on a family whose displacement has two unequal humps.
"""

import math

from circletau import (
    CircleMap,
    liouville_measure_estimate,
    noninjectivity_probe,
    tsujii_gap,
)

golden = (math.sqrt(5.0) - 1.0) / 2.0

print("Tsujii inequality on the rotation family (D_f = 0: equality):")
for row in tsujii_gap(CircleMap(mean_shift=golden), 4):
    print(f"  {row.p}/{row.q}:  |omega0| = {abs(row.omega0):.12f}"
          f"   bound = {row.bound:.12f}   slack = {row.slack:+.2e}")

print("\nLiouville measure estimate, rotation family, beta = 1, q <= 6:")
rep = liouville_measure_estimate(CircleMap(0.0), 1.0, 6)
for row in rep.rows:
    print(f"  q = {row.q}: measured {row.measured:.6f} <= bound {row.bound:.6f}")
print(f"  total {rep.measured_total:.4f} <= {rep.bound_total:.4f}")

print("\nnon-injectivity scenario (two-humped family, takes a minute):")
two = CircleMap(sin_coeffs=(-0.05, -0.03))
rep = noninjectivity_probe(two, samples=12)
print(f"  humps of x - f(x): y1 = {rep.y1:.6f} < y2 = {rep.y2:.6f}")
print(f"  left endpoint:  {rep.trace.left.kind} (curve tangent to the axis,"
      f" innermost angle ok: {rep.left_tangency_ok})")
print(f"  right endpoint: {rep.trace.right.kind} (enters every horocycle,"
      f" innermost h ok: {rep.right_horocycle_ok})")
print("  left germ (omega, Re tau - p/q, Im tau):")
for w, re, im in rep.left_germ[:3]:
    print(f"    {w:+.6f}  {re:+.6f}  {im:.6f}")
