"""
Pole sets of gamma factors
==========================

Each factor Gamma(alpha s + beta) contributes the ray of poles
-(n + beta)/alpha.  Differences of such rays stay finite unions of rays,
which is what a degree-0 functional equation needs.
"""

from fractions import Fraction

from selberg_lab.core import FunctionalEquation, gamma_factors
from selberg_lab.gamma_sets import GammaMultiset, GammaSet, degree_zero_shape_check, multiset_difference, set_difference

# every other point of gamma(2, 0) is also in gamma(1, 0)
rest = set_difference(GammaSet(2, 0), GammaSet(1, 0))
print(rest, "density", rest.density())

# the duplication formula Gamma(s) Gamma(s + 1/2) ~ Gamma(2s) leaves nothing
pair = GammaMultiset.of(GammaSet(1, 0), GammaSet(1, Fraction(1, 2)))
print("duplication residual empty:", multiset_difference(pair, GammaMultiset.of(GammaSet(2, 0))).is_empty)

# commensurable scales split into residue classes
res = set_difference(GammaSet(Fraction(7, 2), 1), GammaSet(Fraction(5, 3), 0))
print(res)
print("density", res.density())

# shifted rays differ by finitely many points
print(dict(set_difference(GammaSet(1, 0), GammaSet(1, 3)).finite))

# degree-0 shape check of a gamma quotient
fe = FunctionalEquation(1, 1, gamma_factors([(1, 0), (1, "1/2")]), gamma_factors([(2, 0)]))
print(degree_zero_shape_check(fe))
