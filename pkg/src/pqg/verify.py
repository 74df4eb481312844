"""Named property suites behind `pq verify`.

Each suite returns a list of records {name, residual, threshold,
comparison, pass}; every record is deterministic (fixed seeds, fixed
resolutions) so reports are byte-identical across runs and thread
counts.  Negative controls use comparison "gt": they pass when the
residual exceeds the threshold.
"""

from __future__ import annotations

import numpy as np

from . import families as fam
from .integrator import (
    QuadratureConfig,
    k_pairing,
    kdk_identity_residual,
    line_integral,
    pairing_additivity_residual,
    sphere_sweep_integral,
)
from .paths import SampledHomotopy, concat, eval_path, linear_homotopy, reverse, smash_reparam
from .prequantum import (
    ReferenceScheme,
    cap_contraction,
    class_of_path,
    cocycle_phi,
    compose,
    exact_morphism,
    identity_morphism,
    inverse,
    isotropy_phase,
    latitude_loop,
    standard_period_group,
    trivialization_correction,
)
from .spaces import cone, euclidean, sphere2
from .symmetry import (
    Diffeo,
    LieGenerator,
    cocycle_invariance_residual,
    moment_additivity_residual,
    omega_invariance_residual,
    paths_moment,
    random_rotation,
    random_symplectic_affine,
    two_point_moment,
)

TWO_PI = 2.0 * np.pi


def _rec(name: str, residual: float, threshold: float, comparison: str = "le") -> dict:
    ok = residual <= threshold if comparison == "le" else residual > threshold
    return {"name": name, "residual": float(residual), "threshold": float(threshold),
            "comparison": comparison, "pass": bool(ok)}


def suite_paths(cfg: QuadratureConfig) -> list:
    eu = euclidean(1)
    alpha = eu.primitive()
    rng = np.random.default_rng(101)
    out = []

    a = fam.random_planar_paths(eu, rng, 1, (0, 0), (1, 0), 64)[0]
    b = fam.random_planar_paths(eu, rng, 1, (1, 0), (2, 1), 64)[0]
    c = fam.random_planar_paths(eu, rng, 1, (2, 1), (0.5, 2), 64)[0]
    left = concat(concat(a, b), c)
    right = concat(a, concat(b, c))
    out.append(_rec("concat_associativity_line_integral",
                    abs(line_integral(alpha, left, cfg) - line_integral(alpha, right, cfg)),
                    1e-8))
    sweep = linear_homotopy(left, right, 16, n_cols=256)
    out.append(_rec("concat_associativity_pairing",
                    abs(k_pairing(eu.two_form(), sweep, cfg)), 1e-8))

    rr = reverse(reverse(a))
    out.append(_rec("reverse_involution",
                    float(np.max(np.abs(rr.points - a.points))), 0.0))
    out.append(_rec("reverse_negates_integral",
                    abs(line_integral(alpha, reverse(a), cfg) + line_integral(alpha, a, cfg)),
                    1e-12))
    out.append(_rec("concat_additive_line_integral",
                    abs(line_integral(alpha, concat(a, b), cfg)
                        - line_integral(alpha, a, cfg) - line_integral(alpha, b, cfg)),
                    1e-12))
    out.append(_rec("smash_integral_invariance",
                    abs(line_integral(alpha, smash_reparam(a, 0.2), cfg)
                        - line_integral(alpha, a, cfg)), 1e-8))
    return out


def suite_integrator(cfg: QuadratureConfig) -> list:
    eu = euclidean(1)
    sp = sphere2()
    rng = np.random.default_rng(202)
    out = []

    out.append(_rec("sphere_sweep_two_pi",
                    abs(sphere_sweep_integral(sp.two_form(), (256, 512), cfg) - TWO_PI),
                    1e-3))
    a, b = fam.random_planar_paths(eu, rng, 2, n_knots=64)
    sig = linear_homotopy(a, b, 16)
    base = k_pairing(eu.two_form(), sig, cfg)
    out.append(_rec("k_pairing_linearity",
                    abs(k_pairing(eu.two_form(2.5), sig, cfg) - 2.5 * base), 1e-12))
    from .paths import reverse_homotopy_s, reverse_homotopy_t
    out.append(_rec("k_pairing_t_reversal",
                    abs(k_pairing(eu.two_form(), reverse_homotopy_t(sig), cfg) + base),
                    1e-12))
    out.append(_rec("k_pairing_s_reversal",
                    abs(k_pairing(eu.two_form(), reverse_homotopy_s(sig), cfg) + base),
                    1e-12))

    worst = 0.0
    cfg2 = QuadratureConfig(refine=2, tol_report=cfg.tol_report)
    for _ in range(10):
        s1, s2 = fam.random_composable_homotopy_pair(eu, rng)
        worst = max(worst, pairing_additivity_residual(eu.two_form(), s1, s2, cfg2))
    out.append(_rec("pairing_additivity_refine2", worst, 1e-8))

    g = fam.random_sphere_paths(sp, rng, 1, n_knots=64)[0]
    S = T = 48
    ss, tt = np.meshgrid(np.linspace(0, 1, S + 1), np.linspace(0, 1, T + 1), indexing="ij")
    grid = eval_path(g, (0.5 * (ss + tt)).ravel()).reshape(S + 1, T + 1, 3)
    out.append(_rec("pairing_vanishes_on_rank_one",
                    abs(k_pairing(sp.two_form(), SampledHomotopy(sp, grid, fixed_ends=False), cfg)),
                    1e-10))

    out.append(_rec("curl_identity_euclidean",
                    kdk_identity_residual(eu.two_form(), fam.curved_segment_family(eu, 17, 17, 32), cfg),
                    1e-3))
    out.append(_rec("curl_identity_sphere",
                    kdk_identity_residual(sp.two_form(), fam.sphere_arc_family(sp, 33, 33, 64), cfg),
                    5e-3))
    return out


def suite_prequantum(cfg: QuadratureConfig) -> list:
    eu = euclidean(1)
    sp = sphere2()
    co = cone(3)
    rng = np.random.default_rng(303)
    grp = standard_period_group(sp)
    scheme = ReferenceScheme(96)
    out = []

    worst = 0.0
    for _ in range(10):
        ps = fam.random_planar_paths(eu, rng, 3, n_knots=64)
        r = (cocycle_phi(eu, ps[0], ps[1], cfg=cfg).value
             + cocycle_phi(eu, ps[1], ps[2], cfg=cfg).value
             - cocycle_phi(eu, ps[0], ps[2], cfg=cfg).value)
        worst = max(worst, abs(r))
    out.append(_rec("chasles_euclidean", worst, 1e-6))

    worst = 0.0
    for _ in range(5):
        qs = fam.random_sphere_paths(sp, rng, 3, n_knots=96)
        r = (cocycle_phi(sp, qs[0], qs[1], cfg=cfg, rows=96).value
             + cocycle_phi(sp, qs[1], qs[2], cfg=cfg, rows=96).value
             - cocycle_phi(sp, qs[0], qs[2], cfg=cfg, rows=96).value)
        worst = max(worst, grp.distance(r))
    out.append(_rec("chasles_sphere_mod_periods", worst, 1e-4))

    g = fam.segment(eu, (0, 0), (1, 0), 64)
    det = fam.polyline(eu, [(0, 0), (0, 1), (1, 1), (1, 0)], 22)
    out.append(_rec("square_detour_unit_phase",
                    abs(cocycle_phi(eu, g, det, cfg=cfg).value - 1.0), 1e-6))

    worst_id = worst_inv = worst_assoc = 0.0
    for _ in range(5):
        pts = [np.zeros(2)] + [rng.uniform(-1, 1, size=2) for _ in range(3)]
        legs = [fam.random_planar_paths(eu, rng, 1, tuple(p), tuple(q), 48)[0]
                for p, q in zip(pts[:-1], pts[1:])]
        ms = [class_of_path(eu, leg, scheme, cfg) for leg in legs]
        worst_id = max(worst_id, abs(
            compose(ms[0], identity_morphism(eu, ms[0].dst), scheme, cfg).phase.value
            - ms[0].phase.value))
        worst_inv = max(worst_inv, abs(
            compose(ms[0], inverse(ms[0]), scheme, cfg).phase.value))
        left = compose(compose(ms[0], ms[1], scheme, cfg), ms[2], scheme, cfg)
        right = compose(ms[0], compose(ms[1], ms[2], scheme, cfg), scheme, cfg)
        worst_assoc = max(worst_assoc, abs(left.phase.value - right.phase.value))
    out.append(_rec("groupoid_identity_law", worst_id, 1e-6))
    out.append(_rec("groupoid_inverse_law", worst_inv, 1e-6))
    out.append(_rec("groupoid_associativity", worst_assoc, 1e-6))

    corr = trivialization_correction(sp, (1.0, 0, 0), (0, 1.0, 0), (0, 0, 1.0),
                                     scheme, cfg, rows=96)
    out.append(_rec("octant_correction_quarter_pi",
                    abs(corr.canonical - np.pi / 4), 1e-4))

    loop = latitude_loop(sp, np.pi / 2, 512)
    sig = cap_contraction(sp, np.pi / 2, 256, 512)
    ph = isotropy_phase(sp, loop, sig, cfg)
    out.append(_rec("equator_phase_pi", grp.distance(ph.value - np.pi), 1e-4))

    sector = fam.cone_sector_loop(co, 1.0, 2048)
    out.append(_rec("cone_sector_phase",
                    abs(isotropy_phase(co, sector, cfg=cfg, rows=8).value - np.pi / 3),
                    1e-6))
    out.append(_rec("cone_dual_route",
                    abs(isotropy_phase(co, sector, cfg=cfg, rows=8).value
                        - line_integral(co.primitive(), sector, cfg)), 1e-6))

    a = fam.random_planar_paths(eu, rng, 1, (0, 0), (1, 0), 48)[0]
    b = fam.random_planar_paths(eu, rng, 1, (1, 0), (2, 1), 48)[0]
    ma, mb = exact_morphism(eu, a, cfg), exact_morphism(eu, b, cfg)
    out.append(_rec("exact_composition_additive",
                    abs(compose(ma, mb).phase.value - ma.phase.value - mb.phase.value),
                    0.0))

    gd, gdet = fam.octant_paths(sp, 192)
    pa = cocycle_phi(sp, gd, gdet, sigma=fam.direct_homotopy(sp, gd, gdet, 192), cfg=cfg)
    pb = cocycle_phi(sp, gd, gdet, sigma=fam.wrapped_homotopy(sp, gd, gdet, 192), cfg=cfg)
    out.append(_rec("homotopy_routes_differ_by_period",
                    abs(abs(pb.value - pa.value) - TWO_PI), 2e-3))
    out.append(_rec("homotopy_routes_equal_mod_periods",
                    grp.distance(pb.value - pa.value), 2e-3))
    return out


def suite_symmetry(cfg: QuadratureConfig) -> list:
    eu = euclidean(1)
    sp = sphere2()
    rng = np.random.default_rng(404)
    out = []

    rot = Diffeo.rotation3(sp, random_rotation(rng))
    S, b = random_symplectic_affine(rng)
    aff = Diffeo.symplectic_affine(eu, S, b)
    bad = Diffeo.symplectic_affine(eu, np.diag([2.0, 1.0]), check=False)
    out.append(_rec("omega_invariance_rotation", omega_invariance_residual(rot), 1e-10))
    out.append(_rec("omega_invariance_symplectic", omega_invariance_residual(aff), 1e-10))
    out.append(_rec("omega_invariance_negative_control",
                    omega_invariance_residual(bad), 1e-2, "gt"))

    qa, qb = fam.random_sphere_paths(sp, rng, 2, n_knots=96)
    worst = max(cocycle_invariance_residual(
        sp, Diffeo.rotation3(sp, random_rotation(rng)), qa, qb, cfg, rows=96)
        for _ in range(5))
    out.append(_rec("cocycle_invariance_rotations", worst, 1e-6))
    pa, pb = fam.random_planar_paths(eu, rng, 2, n_knots=64)
    worst = 0.0
    for _ in range(5):
        S, b = random_symplectic_affine(rng)
        worst = max(worst, cocycle_invariance_residual(
            eu, Diffeo.symplectic_affine(eu, S, b), pa, pb, cfg))
    out.append(_rec("cocycle_invariance_symplectic", worst, 1e-6))
    out.append(_rec("cocycle_invariance_negative_control",
                    cocycle_invariance_residual(eu, bad, pa, pb, cfg), 1e-2, "gt"))

    fine = QuadratureConfig(refine=max(cfg.refine, 4), tol_report=cfg.tol_report)
    scheme = ReferenceScheme(128)
    xi = LieGenerator.rotation(sp, (0, 0, 1))
    arc1 = fam.random_sphere_paths(sp, rng, 1, (1, 0, 0), (0, 1, 0), 96)[0]
    arc2 = fam.random_sphere_paths(sp, rng, 1, (0, 1, 0), (0, 0, 1), 96)[0]
    out.append(_rec("moment_additivity",
                    moment_additivity_residual(sp, arc1, arc2, xi, fine), 1e-6))
    x, y, z = np.eye(3)
    r = (two_point_moment(sp, x, z, xi, fine, scheme)
         - two_point_moment(sp, x, y, xi, fine, scheme)
         - two_point_moment(sp, y, z, xi, fine, scheme))
    out.append(_rec("moment_two_point_chasles", abs(r), 1e-6))
    vals = [paths_moment(sp, p, xi, fine)
            for p in fam.random_sphere_paths(sp, rng, 3, (1, 0, 0), (0, 1, 0), 128)]
    out.append(_rec("moment_path_independence", max(vals) - min(vals), 1e-4))
    mer = fam.meridian(sp, 0.0, 512)
    out.append(_rec("moment_meridian_height",
                    abs(paths_moment(sp, mer, xi, fine) + 1.0), 1e-4))
    return out


SUITES = {
    "paths": suite_paths,
    "integrator": suite_integrator,
    "prequantum": suite_prequantum,
    "symmetry": suite_symmetry,
}


def run_suite(name: str, cfg: QuadratureConfig | None = None) -> list:
    cfg = cfg or QuadratureConfig()
    if name == "all":
        records = []
        for key in ("paths", "integrator", "prequantum", "symmetry"):
            for rec in SUITES[key](cfg):
                rec = dict(rec)
                rec["name"] = f"{key}.{rec['name']}"
                records.append(rec)
        return records
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](cfg)
