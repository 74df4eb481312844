"""The phase cocycle between same-ends paths.

phi(gamma, gamma2) is the two-form integrated over a connecting
homotopy, taken modulo the period group.  On the plane the value is the
signed area between the paths; the additive (Chasles) relation
phi(a,b) + phi(b,c) = phi(a,c) holds up to quadrature noise.
"""

import numpy as np

import pqg
from pqg import families as fam
from pqg.prequantum import cocycle_phi, standard_period_group

eu = pqg.euclidean(1)

# straight segment vs the square detour: enclosed area +1
straight = fam.segment(eu, (0, 0), (1, 0), 64)
detour = fam.polyline(eu, [(0, 0), (0, 1), (1, 1), (1, 0)], 22)
print("phi(straight, detour) =", cocycle_phi(eu, straight, detour).value)

# Chasles over a random triple
rng = np.random.default_rng(7)
a, b, c = fam.random_planar_paths(eu, rng, 3, n_knots=64)
r = (cocycle_phi(eu, a, b).value + cocycle_phi(eu, b, c).value
     - cocycle_phi(eu, a, c).value)
print(f"plane Chasles residual: {abs(r):.2e}")

# On the sphere phases are only defined mod 2*pi: two genuinely
# different homotopies between the same paths differ by one period.
sp = pqg.sphere2()
grp = standard_period_group(sp)
gd, gdet = fam.octant_paths(sp, 384)
direct = fam.direct_homotopy(sp, gd, gdet, 96)
wrapped = fam.wrapped_homotopy(sp, gd, gdet, 384)
pa = cocycle_phi(sp, gd, gdet, sigma=direct)
pb = cocycle_phi(sp, gd, gdet, sigma=wrapped)
print(f"direct route raw value : {pa.value:+.6f}")
print(f"wrapped route raw value: {pb.value:+.6f}")
print(f"difference / 2pi       : {(pb.value - pa.value) / (2*np.pi):+.6f}")
print(f"distance mod periods   : {grp.distance(pb.value - pa.value):.2e}")
