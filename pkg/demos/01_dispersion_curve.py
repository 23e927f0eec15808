"""
Plasmon dispersion of a charged sheet held by a delta well
==========================================================

Solve det(A - I) = 0 along a q grid and set the result against the
hydrodynamic sheet-plasmon law omega^2 = coupling * q.
"""

import numpy as np

from sheetplasmon import dispersion, semiclassical
from sheetplasmon.params import PhysicalParams, from_scaled

# A weakly coupled sheet: C0 = coupling / (2 beta^3) = 1e-3 with beta = 1.
params = PhysicalParams(beta=1.0, eta0=1.0, coupling=2e-3)
c0 = params.c0()
print(f"C0 = {c0:g}")

# Roots in scaled units, one per q; each root seeds the next.
q_grid = np.linspace(0.02, 0.1, 9)
roots = dispersion.dispersion_sweep(q_grid, c0)

print(f"{'qt':>6} {'wt':>12} {'classical':>12} {'ratio':>8} {'gap':>9}")
for r in roots:
    omega, q = from_scaled(params, r)
    classical = semiclassical.classical_dispersion(q, params)
    print(f"{r.qt:6.3f} {r.wt:12.9f} {classical:12.9f} {r.wt / classical:8.5f} {r.nullity_gap:9.2e}")

# The ratio moves away from one as q grows.  The corrected law
# w^2 = 2 C0 q (1 - 3q/4 + q^4/w^2) tracks the exact root at small q.
for r in roots[::4]:
    corr = semiclassical.corrected_dispersion(r.qt, c0)
    print(f"qt = {r.qt:.3f}: exact {r.wt:.6f}, corrected law {corr:.6f}")
