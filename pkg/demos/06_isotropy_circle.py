"""The phase circle at a point, realized by loops.

Every value in [0, 2*pi) is the phase of some loop: latitude circles
contracted over their polar cap realize any target, found here by
bisection on the polar angle against the same quadrature kernel that
measures phases.
"""

import numpy as np

import pqg
from pqg.prequantum import (
    cap_contraction,
    cap_contraction_for,
    isotropy_phase,
    isotropy_surjectivity_witness,
    latitude_loop,
)

sp = pqg.sphere2()

# the equator, contracted over the northern cap, has phase pi
equator = latitude_loop(sp, np.pi / 2, 512)
cap = cap_contraction(sp, np.pi / 2, 256, 512)
print("equator phase:", isotropy_phase(sp, equator, cap).canonical, " (pi =", np.pi, ")")

# witnesses for a spread of targets
for target in np.linspace(0.0, 2 * np.pi, 9, endpoint=False):
    loop = isotropy_surjectivity_witness(sp, float(target), n_rows=96, n_knots=192)
    phase = isotropy_phase(sp, loop, cap_contraction_for(sp, loop, 96)).canonical
    theta = float(np.arccos(np.clip(np.mean(loop.points[:, 2]), -1, 1)))
    print(f"target {target:7.4f} -> polar angle {theta:6.4f}, phase {phase:7.4f}")
