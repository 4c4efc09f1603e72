"""
Is it a product?
================

Search for a_n = (chi1 n^{-it1} * chi2 n^{-it2})_n over small conductors.
The product zeta L(chi_4) factors exactly; the Delta coefficients do not.
"""

import numpy as np

from selberg_lab import corpus
from selberg_lab.detector import periodicity_scan, primitivity_probe

grid = np.round(np.arange(-2.0, 2.0 + 1e-9, 0.05), 10)

composite = primitivity_probe(corpus.source("zeta_l_chi4"), A_grid=grid, q_max=8)
print("zeta L(chi4):", composite.best_residual, composite.chi1, composite.t1, composite.chi2, composite.t2)

delta = corpus.delta().coefficients
probe = primitivity_probe(delta, A_grid=grid, q_max=8)
print("Delta: best residual", round(probe.best_residual, 4))

# nor is any twist of the Delta coefficients periodic
dev, A, q = periodicity_scan(delta, np.arange(-2, 2.01, 0.1), 30, 500)
print(f"Delta: smallest periodicity deviation {dev:.3f} at A = {A:.1f}, q = {q}")
