"""Measure the period group of the round sphere.

The group of periods is generated by the total integral of the two-form
over the sphere, here realized as a latitude-circle sweep.  With the
default normalization the generator is 2*pi, so phases live on a circle
of that perimeter.
"""

import numpy as np

import pqg
from pqg.integrator import convergence_order, sphere_sweep_integral

sphere = pqg.sphere2()
omega = sphere.two_form()

# The sweep drags a latitude circle from pole to pole; its pairing with
# omega converges to the total integral.
for n in (32, 64, 128, 256):
    val = sphere_sweep_integral(omega, (n, 2 * n))
    print(f"sweep {n:4d} x {2*n:4d}: {val:.8f}   error {abs(val - 2*np.pi):.2e}")

errors = [abs(sphere_sweep_integral(omega, (n, 2 * n)) - 2 * np.pi)
          for n in (64, 128, 256)]
print("observed order:", round(convergence_order([1/64, 1/128, 1/256], errors), 3))

# detect_periods reports the raw measured generator; pin_exact snaps to
# the closed form when the caller prefers the a-priori value.
measured = pqg.detect_periods(sphere, (256, 512))
pinned = pqg.detect_periods(sphere, pin_exact=True)
print(f"measured generator: {measured.a:.6f}")
print(f"pinned generator:   {pinned.a:.6f}")

# The plane and the cone orbifold carry exact forms: no periods at all.
print("plane periods:", pqg.detect_periods(pqg.euclidean(1)).variant)
print("cone periods: ", pqg.detect_periods(pqg.cone(3)).variant)
