#!/usr/bin/env python3
"""Regenerate the bundled fixture inputs under fixtures/.

Deterministic: no randomness, fixed resolutions.  Oracle values are
refreshed separately with `pq verify --regen-oracles`.
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import pqg
from pqg import families as fam
from pqg.cli import regen_oracles
from pqg.jsonio import (
    homotopy_to_dict,
    morphism_to_dict,
    path_to_dict,
    space_to_dict,
    write_json,
)
from pqg.prequantum import ReferenceScheme, cap_contraction, class_of_path, latitude_loop

OUT = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def main():
    os.makedirs(OUT, exist_ok=True)
    eu = pqg.euclidean(1)
    sp = pqg.sphere2()
    co3 = pqg.cone(3)

    def put(name, obj, compact=False):
        write_json(os.path.join(OUT, name), obj, compact=compact)

    # planar cocycle pair: straight segment vs square detour (phase +1)
    straight = fam.segment(eu, (0, 0), (1, 0), 64)
    detour = fam.polyline(eu, [(0, 0), (0, 1), (1, 1), (1, 0)], 22)
    put("path_straight.json", path_to_dict(straight), compact=True)
    put("path_square_detour.json", path_to_dict(detour), compact=True)
    put("job_cocycle_square.json", {
        "command": "cocycle",
        "space": space_to_dict(eu),
        "path": "fixtures/path_straight.json",
        "path2": "fixtures/path_square_detour.json",
    })

    # equator holonomy with an explicit cap contraction (phase pi)
    put("loop_equator.json", path_to_dict(latitude_loop(sp, np.pi / 2, 512)),
        compact=True)
    put("homotopy_equator_cap.json",
        homotopy_to_dict(cap_contraction(sp, np.pi / 2, 64, 512)), compact=True)
    put("job_holonomy_equator.json", {
        "command": "holonomy",
        "space": space_to_dict(sp),
        "loop": "fixtures/loop_equator.json",
        "contraction": "fixtures/homotopy_equator_cap.json",
    })

    # cone-point loop (phase pi/3 for m = 3)
    put("loop_cone3.json", path_to_dict(fam.cone_sector_loop(co3, 1.0, 2048)),
        compact=True)
    put("job_holonomy_cone3.json", {
        "command": "holonomy",
        "space": space_to_dict(co3),
        "loop": "fixtures/loop_cone3.json",
        "cfg": {"rows": 8},
    })

    # octant composition (correction +pi/4 with this vertex orientation)
    scheme = ReferenceScheme(96)
    leg1 = class_of_path(sp, fam.great_arc(sp, (1, 0, 0), (0, 1, 0), 96), scheme, rows=96)
    leg2 = class_of_path(sp, fam.great_arc(sp, (0, 1, 0), (0, 0, 1), 96), scheme, rows=96)
    put("morphism_octant_leg1.json", morphism_to_dict(leg1))
    put("morphism_octant_leg2.json", morphism_to_dict(leg2))
    put("job_compose_octant.json", {
        "command": "compose",
        "space": space_to_dict(sp),
        "morphism": "fixtures/morphism_octant_leg1.json",
        "morphism2": "fixtures/morphism_octant_leg2.json",
        "scheme_knots": 96,
        "cfg": {"rows": 96},
    })

    put("job_periods_sphere.json", {
        "command": "periods",
        "space": space_to_dict(sp),
        "resolution": [256, 512],
    })
    put("job_moment_pole_to_equator.json", {
        "command": "moment",
        "space": space_to_dict(sp),
        "x": [0.0, 0.0, 1.0],
        "x2": [1.0, 0.0, 0.0],
        "generator": {"axis": [0.0, 0.0, 1.0]},
        "scheme_knots": 128,
        "cfg": {"refine": 4},
    })
    put("job_converge_sweep.json", {
        "command": "converge",
        "space": space_to_dict(sp),
        "benchmark": "sphere_sweep",
        "resolutions": [64, 128, 256],
    })
    put("job_verify_all.json", {"command": "verify", "suite": "all"})

    regen_oracles(os.path.join(OUT, "oracles.json"))
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()
