"""
Reading the period off the functional equation
==============================================

For degree one the gamma data fixes q = C pi Q^2.  The window integral then
picks out the coefficient a_{q alpha}, and periodic coefficients split into
Dirichlet L-functions.
"""

from selberg_lab import corpus
from selberg_lab.detector import classify_spec, closed_form, detect, recover_q

for name in ("zeta", "l_chi3", "l_chi4"):
    q, is_int = recover_q(corpus.spec(name))
    print(f"{name:8s} q = {q:.10f}  integer: {is_int}")

# L(chi_4) at alpha = 1/4 and 3/4 sees a_1 = 1 and a_3 = -1
l4 = corpus.l_chi4()
res = detect(l4, [0.25, 0.5, 0.75], [300.0, 600.0], offsets=(1.0,))
for s in res.samples:
    print(f"alpha {s.alpha:.2f}  T {s.T:6.0f}  FF/T {s.normalized:.4f}  limit {s.closed_form:.4f}")

# a non-integer q alpha has no limit term
print("zeta at alpha = 1/2:", closed_form(corpus.zeta(), 0.5))

# classification through the degree gate
for name in ("l_chi4", "zeta"):
    routing = classify_spec(corpus.spec(name))
    for comp in routing.detail.decomposition:
        print(name, "-> conductor", comp.conductor, "index", comp.index, "P =", comp.polynomial)
