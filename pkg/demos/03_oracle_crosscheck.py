"""
Two independent routes to the same mode
=======================================

The series route solves a 6x6 determinant.  The brute-force route
discretizes the integral operator on 400 graded Gauss-Legendre nodes and
looks for the frequency where its smallest singular value collapses.
This takes about ten seconds.
"""

import numpy as np

from sheetplasmon import amplitude, dispersion, oracle

c0, qt = 1e-3, 0.05
series = dispersion.find_root(qt, c0)
brute = oracle.oracle_root(qt, c0)
print(f"series root  {series.wt:.12f}")
print(f"oracle root  {brute.wt:.12f}   sigma_min / |L| = {brute.sigma_min / brute.op_norm:.1e}")
print(f"relative gap {abs(brute.wt - series.wt) / series.wt:.1e}")

# The singular vector is exp(-z) F(z) on the grid; compare shapes.
z, w = oracle.GridSpec().nodes()
profile = amplitude.build_profile(series, c0)
phi = np.exp(-z) * amplitude.amplitude_eval(z, profile)
a, b = np.sqrt(w) * brute.eigenfunction, np.sqrt(w) * phi
print("cosine similarity", abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b)))

# A short scan shows how sharp the singular-value dip is.
for wt, s in brute.scan[::10]:
    print(f"  wt = {wt:.6f}  sigma_min = {s:.3e}")
