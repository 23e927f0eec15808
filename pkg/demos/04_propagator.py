"""
The bound-state propagator in energy and in time
================================================

The energy-domain propagator has a closed form.  Its time-domain partner
needs the complementary error function of a complex argument, which the
package evaluates itself; here it is checked against a contour quadrature
that uses no error function at all.
"""

from sheetplasmon import propagator
from sheetplasmon.special import complex_erfc

# The delta well makes the z-derivative jump by -2 beta G at the plane.
w, k, zp, beta = -0.5 + 0.05j, 0.3, 0.7, 1.0
h = 1e-5
g = lambda z: propagator.hat_green(w, k, z, zp, beta)
jump = (g(h) - g(0)) / h - (g(0) - g(-h)) / h
print("derivative jump", jump, " expected", -2 * beta * g(0))

print("erfc(1)      ", complex_erfc(1.0))
print("erfc(2 + 3j) ", complex_erfc(2 + 3j))

# Binding correction to the free propagator: erfc form against rotated-ray quadrature.
for t in (0.5, 1.0, 3.0):
    a = propagator.td_correction(t, 0.2, 0.5, 0.5, beta)
    b = propagator.td_correction_via_i1(t, 0.2, 0.5, 0.5, beta)
    print(f"t = {t}: erfc form {a:.10f}, quadrature {b:.10f}")

# Causality: nothing propagates backwards.
print("G(t = -1) =", propagator.td_green(-1.0, 0.2, 0.5, 0.5, beta))
