"""Acceptance gate: every shipped guarantee at its stated tolerance.

Each test prints one pass/fail line; run with `pytest tests/test_acceptance.py -v -s`.
"""

import numpy as np

import pqg
from pqg import families as fam
from pqg.integrator import (
    QuadratureConfig,
    convergence_order,
    k_pairing,
    kdk_identity_residual,
    line_integral,
    sphere_sweep_integral,
)
from pqg.prequantum import (
    ReferenceScheme,
    cap_contraction,
    class_of_path,
    cocycle_phi,
    compose,
    detect_periods,
    exact_lambda_eval,
    exact_morphism,
    identity_morphism,
    inverse,
    isotropy_phase,
    isotropy_surjectivity_witness,
    latitude_loop,
    standard_period_group,
    trivialization_correction,
)
from pqg.symmetry import (
    Diffeo,
    LieGenerator,
    cocycle_invariance_residual,
    moment_additivity_residual,
    paths_moment,
    random_rotation,
    random_symplectic_affine,
    two_point_moment,
)

TWO_PI = 2.0 * np.pi
EU = pqg.euclidean(1)
SP = pqg.sphere2()


def announce(num, desc, ok, detail):
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'}: {desc} ({detail})")
    assert ok, f"criterion {num}: {desc}: {detail}"


def test_criterion_01_sphere_period_generator():
    group = detect_periods(SP, (256, 512))
    err = abs(group.a - TWO_PI)
    errs = [abs(sphere_sweep_integral(SP.two_form(), (n, 2 * n)) - TWO_PI)
            for n in (64, 128, 256)]
    order = convergence_order([1 / 64, 1 / 128, 1 / 256], errs)
    ok = group.variant == "cyclic" and err <= 1e-3 and 1.7 <= order <= 2.3
    announce(1, "sphere period generator 2*pi at 256x512, order ~ 2",
             ok, f"|a-2pi|={err:.2e}, order={order:.2f}")


def test_criterion_02_exact_case():
    rng = np.random.default_rng(11)
    worst_add = 0.0
    for _ in range(20):
        a = fam.random_planar_paths(EU, rng, 1, (0, 0), (1, 0))[0]
        b = fam.random_planar_paths(EU, rng, 1, (1, 0), (2, 1))[0]
        ma, mb = exact_morphism(EU, a), exact_morphism(EU, b)
        worst_add = max(worst_add,
                        abs(compose(ma, mb).phase.value - (ma.phase.value + mb.phase.value)))

    alpha = EU.primitive()

    def path_at(s):
        return fam.polyline(EU, [(0, 0), (0.5, s), (1.0 + 0.3 * s, 0.2)], 64)

    def plot(s):
        g = path_at(s)
        return g.start(), line_integral(alpha, g, QuadratureConfig(refine=2)), g.end()

    from pqg.paths import homotopy_from_rows, resample
    s0, ds = 0.4, 1e-4
    lam = exact_lambda_eval(EU, plot, s0, ds)
    strip = homotopy_from_rows(EU, [resample(path_at(s0 - ds), 128),
                                    resample(path_at(s0 + ds), 128)], fixed_ends=False)
    lam_err = abs(lam - k_pairing(EU.two_form(), strip) / (2 * ds))

    zero = detect_periods(EU).variant == "zero"
    ok = worst_add == 0.0 and lam_err <= 1e-4 and zero
    announce(2, "exact case: machine-additive composition, connection form check, zero periods",
             ok, f"add={worst_add:.1e}, lambda_err={lam_err:.2e}, zero_group={zero}")


def test_criterion_03_chasles_cocycle():
    rng = np.random.default_rng(22)
    worst_eu = 0.0
    for _ in range(100):
        ps = fam.random_planar_paths(EU, rng, 3, n_knots=64)
        r = (cocycle_phi(EU, ps[0], ps[1]).value
             + cocycle_phi(EU, ps[1], ps[2]).value
             - cocycle_phi(EU, ps[0], ps[2]).value)
        worst_eu = max(worst_eu, abs(r))
    grp = standard_period_group(SP)
    worst_sp = 0.0
    for _ in range(100):
        qs = fam.random_sphere_paths(SP, rng, 3, n_knots=96)
        r = (cocycle_phi(SP, qs[0], qs[1], rows=96).value
             + cocycle_phi(SP, qs[1], qs[2], rows=96).value
             - cocycle_phi(SP, qs[0], qs[2], rows=96).value)
        worst_sp = max(worst_sp, grp.distance(r))
    ok = worst_eu <= 1e-6 and worst_sp <= 1e-4
    announce(3, "Chasles relation over 100 random triples per space",
             ok, f"plane={worst_eu:.2e} (<=1e-6), sphere mod 2pi={worst_sp:.2e} (<=1e-4)")


def test_criterion_04_concatenation_additivity():
    rng = np.random.default_rng(33)
    cfg = QuadratureConfig(refine=2)
    from pqg.integrator import pairing_additivity_residual
    worst = 0.0
    for _ in range(100):
        s1, s2 = fam.random_composable_homotopy_pair(EU, rng)
        worst = max(worst, pairing_additivity_residual(EU.two_form(), s1, s2, cfg))
    ok = worst <= 1e-8
    announce(4, "pairing additivity over 100 composable homotopy pairs at refine 2",
             ok, f"worst={worst:.2e} (<=1e-8)")


def test_criterion_05_curvature_identity():
    r_eu = kdk_identity_residual(EU.two_form(), fam.curved_segment_family(EU, 33, 33, 64))
    r_sp = kdk_identity_residual(SP.two_form(), fam.sphere_arc_family(SP, 33, 33, 64))
    res = [kdk_identity_residual(SP.two_form(), fam.sphere_arc_family(SP, n + 1, n + 1, 2 * n))
           for n in (16, 32, 64)]
    order = convergence_order([1 / 16, 1 / 32, 1 / 64], res)
    ok = r_eu <= 1e-3 and r_sp <= 5e-3 and 1.5 <= order <= 2.6
    announce(5, "curl identity: plane <= 1e-3, sphere <= 5e-3 at 32x32x64, order ~ 2",
             ok, f"plane={r_eu:.2e}, sphere={r_sp:.2e}, order={order:.2f}")


def test_criterion_06_isotropy_torus():
    loop = latitude_loop(SP, np.pi / 2, 512)
    sig = cap_contraction(SP, np.pi / 2, 256, 512)
    grp = standard_period_group(SP)
    eq_err = grp.distance(isotropy_phase(SP, loop, sig).value - np.pi)

    worst = 0.0
    from pqg.prequantum import cap_contraction_for
    for k in range(20):
        target = k * TWO_PI / 20
        wit = isotropy_surjectivity_witness(SP, target, n_rows=96, n_knots=192)
        ph = isotropy_phase(SP, wit, cap_contraction_for(SP, wit, 96)).canonical
        err = min(abs(ph - target), TWO_PI - abs(ph - target))
        worst = max(worst, err)
    ok = eq_err <= 1e-4 and worst <= 1e-4
    announce(6, "equator phase pi; witnesses hit 20 uniform targets",
             ok, f"equator={eq_err:.2e}, worst witness={worst:.2e} (<=1e-4)")


def test_criterion_07_homotopy_independence():
    gd, gdet = fam.octant_paths(SP, 768)
    direct = fam.direct_homotopy(SP, gd, gdet, 96)
    wrapped = fam.wrapped_homotopy(SP, gd, gdet, 768)
    pa = cocycle_phi(SP, gd, gdet, sigma=direct)
    pb = cocycle_phi(SP, gd, gdet, sigma=wrapped)
    raw_err = abs(abs(pb.value - pa.value) - TWO_PI)
    mod_err = pa.group.distance(pb.value - pa.value)
    ok = raw_err <= 2e-3 and mod_err <= 1e-4
    announce(7, "inequivalent homotopies differ by one period, equal mod periods",
             ok, f"|raw diff - 2pi|={raw_err:.2e} (<=2e-3), mod={mod_err:.2e} (<=1e-4)")


def test_criterion_08_symmetry_invariance():
    rng = np.random.default_rng(44)
    qa, qb = fam.random_sphere_paths(SP, rng, 2, n_knots=96)
    worst_rot = max(cocycle_invariance_residual(
        SP, Diffeo.rotation3(SP, random_rotation(rng)), qa, qb, rows=96)
        for _ in range(50))
    pa, pb = fam.random_planar_paths(EU, rng, 2, n_knots=64)
    worst_aff = 0.0
    for _ in range(50):
        S, b = random_symplectic_affine(rng)
        worst_aff = max(worst_aff, cocycle_invariance_residual(
            EU, Diffeo.symplectic_affine(EU, S, b), pa, pb))
    bad = Diffeo.symplectic_affine(EU, np.diag([2.0, 1.0]), check=False)
    control = cocycle_invariance_residual(EU, bad, pa, pb)
    ok = worst_rot <= 1e-6 and worst_aff <= 1e-6 and control > 1e-2
    announce(8, "cocycle invariant under 50 rotations and 50 symplectic maps; control fails",
             ok, f"rot={worst_rot:.2e}, affine={worst_aff:.2e}, control={control:.2e}")


def test_criterion_09_cone_orbifold():
    worst_phase = worst_dual = 0.0
    zero = True
    r = 1.0
    for m in (2, 3, 5):
        space = pqg.cone(m)
        loop = fam.cone_sector_loop(space, r, 4096)
        ph = isotropy_phase(space, loop, rows=8)
        zero = zero and ph.group.variant == "zero" and detect_periods(space).variant == "zero"
        worst_phase = max(worst_phase, abs(ph.value - np.pi * r * r / m))
        worst_dual = max(worst_dual,
                         abs(ph.value - line_integral(space.primitive(), loop)))
    ok = worst_phase <= 1e-6 and worst_dual <= 1e-6 and zero
    announce(9, "cone loops: phase pi r^2/m for m in {2,3,5}, zero periods, dual routes agree",
             ok, f"phase_err={worst_phase:.2e}, dual={worst_dual:.2e} (<=1e-6)")


def test_criterion_10_moment_maps():
    rng = np.random.default_rng(55)
    fine = QuadratureConfig(refine=4)
    scheme = ReferenceScheme(128)
    xi = LieGenerator.rotation(SP, (0, 0, 1))

    a = fam.random_sphere_paths(SP, rng, 1, (1, 0, 0), (0, 1, 0), 96)[0]
    b = fam.random_sphere_paths(SP, rng, 1, (0, 1, 0), (0, 0, 1), 96)[0]
    add = moment_additivity_residual(SP, a, b, xi, fine)

    x, y, z = np.eye(3)
    chasles = abs(two_point_moment(SP, x, z, xi, fine, scheme)
                  - two_point_moment(SP, x, y, xi, fine, scheme)
                  - two_point_moment(SP, y, z, xi, fine, scheme))

    vals = [paths_moment(SP, p, xi, fine)
            for p in fam.random_sphere_paths(SP, rng, 3, (1, 0, 0), (0, 1, 0), 128)]
    indep = max(vals) - min(vals)

    worst_height = 0.0
    for _ in range(10):
        p = rng.normal(size=3); p /= np.linalg.norm(p)
        q = rng.normal(size=3); q /= np.linalg.norm(q)
        if np.dot(p, q) <= -0.9:
            continue
        got = two_point_moment(SP, p, q, xi, fine, scheme)
        worst_height = max(worst_height, abs(got - (q[2] - p[2]) / 2))

    ok = add <= 1e-6 and chasles <= 1e-6 and indep <= 1e-4 and worst_height <= 1e-4
    announce(10, "moment maps: additivity, Chasles, path independence, height formula",
             ok, f"add={add:.2e}, chasles={chasles:.2e}, indep={indep:.2e}, "
                 f"height={worst_height:.2e}")


def test_criterion_11_groupoid_laws():
    rng = np.random.default_rng(66)
    scheme = ReferenceScheme(64)
    worst = 0.0
    for _ in range(100):
        pts = [np.zeros(2)] + [rng.uniform(-1, 1, size=2) for _ in range(3)]
        legs = [fam.random_planar_paths(EU, rng, 1, tuple(p), tuple(q), 48)[0]
                for p, q in zip(pts[:-1], pts[1:])]
        ms = [class_of_path(EU, leg, scheme) for leg in legs]
        worst = max(worst, abs(
            compose(ms[0], identity_morphism(EU, ms[0].dst), scheme).phase.value
            - ms[0].phase.value))
        worst = max(worst, abs(compose(ms[0], inverse(ms[0]), scheme).phase.value))
        left = compose(compose(ms[0], ms[1], scheme), ms[2], scheme)
        right = compose(ms[0], compose(ms[1], ms[2], scheme), scheme)
        worst = max(worst, abs(left.phase.value - right.phase.value))
    corr = trivialization_correction(SP, (1.0, 0, 0), (0, 1.0, 0), (0, 0, 1.0),
                                     ReferenceScheme(96), rows=96)
    corr_err = abs(corr.canonical - np.pi / 4)
    ok = worst <= 1e-6 and corr_err <= 1e-4
    announce(11, "groupoid identity, inverse, associativity over 100 triples; octant pi/4",
             ok, f"laws={worst:.2e} (<=1e-6), octant={corr_err:.2e} (<=1e-4)")


def test_criterion_12_deterministic_reports(tmp_path, monkeypatch):
    from pqg.cli import main
    blobs = []
    for threads in ("1", "8"):
        monkeypatch.setenv("PQ_THREADS", threads)
        out = tmp_path / f"verify_{threads}.json"
        rc = main(["verify", "--suite", "all", "--out", str(out)])
        assert rc == 0
        blobs.append(out.read_bytes())
    ok = blobs[0] == blobs[1]
    announce(12, "pq verify --suite all is byte-identical at PQ_THREADS 1 and 8",
             ok, f"{len(blobs[0])} bytes each")
