"""
What the plasmon looks like across the sheet
============================================

Rebuild the even amplitude F(z) at a root, compare it with its three-term
far field and check that it solves the integral equation it came from.
"""

import numpy as np

from sheetplasmon import amplitude, dispersion

c0, qt = 1e-3, 0.05
root = dispersion.find_root(qt, c0)
profile = amplitude.build_profile(root, c0)
print(f"root wt = {root.wt:.15f}")

# Boundary values from the null space of A - I, normalized so the last one is 1.
for name, v in zip(("Fb(q)", "Fb(-q)", "Fb(1+a+)", "Fb(1-a+)", "Fb(1+a-)", "Fb(1-a-)"),
                   profile.bv.as_array()):
    print(f"  {name:9s} {v.real: .6e}")

# F is a sum of decaying exponentials; far from the plane the three slowest win.
z = np.array([0.0, 1.0, 2.0, 5.0, 10.0, 20.0])
F = amplitude.amplitude_eval(z, profile)
far = amplitude.far_field(z, profile)
for zi, f, g in zip(z, F, far):
    print(f"z = {zi:5.1f}  F = {f.real: .6e}  far field = {g.real: .6e}  rel diff = {abs(f - g) / abs(f):.1e}")

# End-to-end check: the reconstructed F solves the integral equation at the root,
# and stops solving it once the frequency is pushed off the root.
print("residual at root      ", amplitude.integral_residual(profile))
print("residual 5% off root  ", amplitude.integral_residual(profile, wt=1.05 * root.wt))
