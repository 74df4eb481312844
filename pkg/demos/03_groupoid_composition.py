"""Morphism arithmetic in trivialized coordinates.

A path is stored as (source, phase, target) with the phase measured
against the reference path between its endpoints.  Composition adds
phases plus a correction: the holonomy of the reference triangle.  On
the sphere that correction is half the enclosed spherical area; for the
positively oriented octant it is pi/4.
"""

import numpy as np

import pqg
from pqg import families as fam
from pqg.prequantum import (
    ReferenceScheme,
    class_of_path,
    compose,
    identity_morphism,
    inverse,
    trivialization_correction,
)

sp = pqg.sphere2()
scheme = ReferenceScheme(96)

x, y, z = np.eye(3)
leg1 = class_of_path(sp, fam.great_arc(sp, x, y, 96), scheme, rows=96)
leg2 = class_of_path(sp, fam.great_arc(sp, y, z, 96), scheme, rows=96)
print("leg phases (geodesics classify to zero):",
      round(leg1.phase.value, 12), round(leg2.phase.value, 12))

both = compose(leg1, leg2, scheme, rows=96)
print("composed phase:", both.phase.canonical, " (octant correction, pi/4 =", np.pi / 4, ")")

corr = trivialization_correction(sp, x, y, z, scheme, rows=96)
print("correction cocycle:", corr.canonical)

# groupoid laws (phase equality holds modulo the period group)
from pqg.prequantum import phase_eq

m = class_of_path(sp, fam.octant_paths(sp, 96)[1], scheme, rows=96)
print("m . 1 == m:",
      phase_eq(compose(m, identity_morphism(sp, m.dst), scheme, rows=96).phase,
               m.phase, 1e-6))
mm = compose(m, inverse(m), scheme, rows=96)
print("m . m^-1 == 1:", mm.phase.group.distance(mm.phase.value) < 1e-6)

# exact case: the plane composes with no correction at all
eu = pqg.euclidean(1)
rng = np.random.default_rng(3)
a = fam.random_planar_paths(eu, rng, 1, (0, 0), (1, 0))[0]
b = fam.random_planar_paths(eu, rng, 1, (1, 0), (2, 1))[0]
ma, mb = pqg.exact_morphism(eu, a), pqg.exact_morphism(eu, b)
mab = compose(ma, mb)
print("exact additivity:", mab.phase.value == ma.phase.value + mb.phase.value)
