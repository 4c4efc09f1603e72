"""
Zeta on the critical line
=========================

The smoothed sum with its two correction terms, checked against the
direct evaluator, and the zeros it implies.
"""

import numpy as np

from selberg_lab import corpus
from selberg_lab.evaluator import EvalParams, critical_value_parts, direct_value
from selberg_lab.zeros import count_zeros

zeta = corpus.zeta()

# a single value, split into smoothed sum, residue term and contour term
cv = critical_value_parts(zeta, 14.134725)
print(f"smoothed {cv.smoothed:.6f}  r1 {cv.r1:.6f}  r2 {cv.r2:.2e}")
print(f"F(1/2 + 14.134725i) = {cv.value:.2e}")

# the result does not depend on the smoothing length or on eta
for p in (EvalParams(X=20.0), EvalParams(X=200.0), EvalParams(eta=0.4)):
    print(p.X, p.eta, critical_value_parts(zeta, 5.0, p).value)

# agreement with the Hurwitz-sum evaluator on a small grid
t = np.linspace(0, 40, 9)
smoothed = np.array([critical_value_parts(zeta, x).value for x in t])
print("max gap to direct:", np.max(np.abs(smoothed - direct_value(zeta.coefficients, 0.5 + 1j * t))))

# zeros in the strip up to height 50, located by bisection and Newton steps
report = count_zeros(zeta, (0, 1, 0, 50))
print(report.count, "zeros")
for z in report.zeros:
    print(f"  {z.location.real:.12f} + {z.location.imag:.12f}i")
