"""Moment pairings against symmetry generators.

Pairing a path with a generator field integrates omega(generator,
velocity); for a Hamiltonian generator the value telescopes to the
increment of the Hamiltonian, so it depends only on the endpoints.
For the z-axis rotation of the sphere the two-point value is
(z' - z) / 2 under the default normalization.
"""

import numpy as np

import pqg
from pqg import families as fam
from pqg.integrator import QuadratureConfig
from pqg.prequantum import ReferenceScheme
from pqg.symmetry import (
    LieGenerator,
    moment_additivity_residual,
    paths_moment,
    two_point_moment,
)

sp = pqg.sphere2()
xi = LieGenerator.rotation(sp, (0, 0, 1))
fine = QuadratureConfig(refine=4)
scheme = ReferenceScheme(128)

# meridian from the north pole to the south pole: height drops by 2
meridian = fam.meridian(sp, 0.0, 512)
print("meridian pairing:", paths_moment(sp, meridian, xi, fine), " (expected -1)")

# two-point values follow the height formula
rng = np.random.default_rng(9)
for _ in range(3):
    p = rng.normal(size=3); p /= np.linalg.norm(p)
    q = rng.normal(size=3); q /= np.linalg.norm(q)
    got = two_point_moment(sp, p, q, xi, fine, scheme)
    print(f"psi = {got:+.6f}   (z'-z)/2 = {(q[2]-p[2])/2:+.6f}")

# additivity under concatenation and path independence
a = fam.random_sphere_paths(sp, rng, 1, (1, 0, 0), (0, 1, 0), 96)[0]
b = fam.random_sphere_paths(sp, rng, 1, (0, 1, 0), (0, 0, 1), 96)[0]
print(f"additivity residual: {moment_additivity_residual(sp, a, b, xi, fine):.1e}")

routes = fam.random_sphere_paths(sp, rng, 3, (1, 0, 0), (0, 1, 0), 128)
vals = [paths_moment(sp, r, xi, fine) for r in routes]
print(f"path independence spread over 3 routes: {max(vals) - min(vals):.1e}")

# plane: a quadratic Hamiltonian generator telescopes exactly
eu = pqg.euclidean(1)
H = LieGenerator.hamiltonian(eu, lin=(0.2, -0.1), quad=[[1.2, 0.3], [0.3, -0.5]])
seg = fam.segment(eu, (-0.4, 0.7), (0.9, -0.2), 32)
print("plane pairing:", paths_moment(eu, seg, H),
      " H increment:", float(H.hamiltonian_value(seg.end()) - H.hamiltonian_value(seg.start())))
