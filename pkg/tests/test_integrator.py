import os

import numpy as np
import pytest

import pqg
from pqg import families as fam
from pqg.errors import DegenerateGrid, InsufficientResolutions, SpaceMismatch
from pqg.integrator import (
    QuadratureConfig,
    convergence_order,
    k_pairing,
    kdk_identity_residual,
    line_integral,
    pairing_additivity_residual,
    pairwise_sum,
    self_convergence_errors,
    sphere_sweep_integral,
)
from pqg.oracles import shoelace_area, spherical_cap_area
from pqg.paths import (
    SampledHomotopy,
    eval_path,
    linear_homotopy,
    reverse_homotopy_s,
    reverse_homotopy_t,
    smash_reparam,
)


class TestPairwiseSum:
    def test_matches_exact_sum(self, rng):
        x = rng.normal(size=1001)
        assert pairwise_sum(x) == pytest.approx(float(np.sum(x)), rel=1e-14)

    def test_empty_and_single(self):
        assert pairwise_sum(np.array([])) == 0.0
        assert pairwise_sum(np.array([3.5])) == 3.5


class TestLineIntegral:
    def test_x_dy_flat_segment(self, eu):
        g = fam.segment(eu, (0, 0), (1, 0), 8)
        assert line_integral(eu.primitive(), g) == 0.0

    def test_x_dy_vertical_segment(self, eu):
        g = fam.segment(eu, (1, 0), (1, 1), 8)
        assert line_integral(eu.primitive(), g) == pytest.approx(1.0, abs=1e-14)

    def test_circle_matches_shoelace(self, eu):
        # midpoint on chords integrates x dy exactly over the sampled polygon
        g = fam.circle(eu, 1.0, (0, 0), 64)
        val = line_integral(eu.primitive(), g, QuadratureConfig(refine=4))
        assert val == pytest.approx(shoelace_area(g.points), abs=1e-12)
        # the 64-gon itself sits within ~5e-3 of the disk area
        assert val == pytest.approx(np.pi, abs=6e-3)

    def test_circle_second_order_to_pi(self, eu):
        errs = [abs(line_integral(eu.primitive(), fam.circle(eu, 1.0, (0, 0), n)) - np.pi)
                for n in (64, 128, 256)]
        order = convergence_order([1 / 64, 1 / 128, 1 / 256], errs)
        assert 1.7 <= order <= 2.3

    def test_space_mismatch(self, eu, cone3):
        g = fam.segment(eu, (0, 0), (1, 0), 4)
        with pytest.raises(SpaceMismatch):
            line_integral(cone3.primitive(), g)


class TestKPairing:
    def test_constant_in_s(self, eu, rng):
        g = fam.random_planar_paths(eu, rng, 1)[0]
        sig = linear_homotopy(g, g, 8)
        assert abs(k_pairing(eu.two_form(), sig)) <= 1e-15

    def test_factors_through_path(self, sp, rng):
        # rank-one parameter dependence pairs to zero
        g = fam.random_sphere_paths(sp, rng, 1, n_knots=64)[0]
        S = T = 48
        ss, tt = np.meshgrid(np.linspace(0, 1, S + 1), np.linspace(0, 1, T + 1),
                             indexing="ij")
        for warp in (0.5 * (ss + tt), (ss + tt + ss * tt) / 3.0):
            grid = eval_path(g, warp.ravel()).reshape(S + 1, T + 1, 3)
            sig = SampledHomotopy(sp, grid, fixed_ends=False)
            assert abs(k_pairing(sp.two_form(), sig)) <= 1e-10

    def test_square_detour_shoelace(self, eu):
        g = fam.segment(eu, (0, 0), (1, 0), 64)
        det = fam.polyline(eu, [(0, 0), (0, 1), (1, 1), (1, 0)], 22)
        sig = linear_homotopy(g, det, 32)
        square = [(0, 0), (0, 1), (1, 1), (1, 0)]
        assert k_pairing(eu.two_form(), sig) == pytest.approx(-shoelace_area(square),
                                                              abs=1e-9)
        assert abs(k_pairing(eu.two_form(), sig)) == pytest.approx(1.0, abs=1e-9)

    def test_linearity_in_omega(self, eu, rng):
        a, b = fam.random_planar_paths(eu, rng, 2)
        sig = linear_homotopy(a, b, 16)
        base = k_pairing(eu.two_form(), sig)
        assert k_pairing(eu.two_form(3.5), sig) == pytest.approx(3.5 * base, rel=1e-14)

    def test_axis_reversal_negates(self, sp, rng):
        a, b = fam.random_sphere_paths(sp, rng, 2, n_knots=48)
        sig = linear_homotopy(a, b, 24)
        v = k_pairing(sp.two_form(), sig)
        assert k_pairing(sp.two_form(), reverse_homotopy_t(sig)) == pytest.approx(-v, abs=1e-12)
        assert k_pairing(sp.two_form(), reverse_homotopy_s(sig)) == pytest.approx(-v, abs=1e-12)

    def test_smash_rows_invariance(self, eu, rng):
        from pqg.paths import smoothstep_inverse

        a, b = fam.random_planar_paths(eu, rng, 2)
        sig = linear_homotopy(a, b, 16)
        rows = [pqg.SampledPath(eu, np.linspace(0, 1, sig.cols + 1), sig.grid[i].copy())
                for i in range(sig.rows + 1)]
        smashed = [smash_reparam(r, 0.2, n_intervals=sig.cols) for r in rows]
        # shared sample grid containing the ramp preimages of the common
        # knot lattice, so the sampled rows are the original polygons
        eps = 0.2
        interior = np.linspace(0, 1, sig.cols + 1)[1:-1]
        pre = eps + (1 - 2 * eps) * smoothstep_inverse(interior)
        t_shared = np.unique(np.concatenate([np.linspace(0, 1, 257), pre]))
        grid = np.stack([eval_path(s, t_shared) for s in smashed])
        sig2 = SampledHomotopy(eu, grid, fixed_ends=True)
        assert k_pairing(eu.two_form(), sig2) == pytest.approx(
            k_pairing(eu.two_form(), sig), abs=1e-8)

    def test_determinism_across_thread_counts(self, sp, rng):
        a, b = fam.random_sphere_paths(sp, rng, 2, n_knots=64)
        sig = linear_homotopy(a, b, 48)
        old = os.environ.get("PQ_THREADS")
        try:
            os.environ["PQ_THREADS"] = "1"
            v1 = k_pairing(sp.two_form(), sig)
            os.environ["PQ_THREADS"] = "8"
            v8 = k_pairing(sp.two_form(), sig)
        finally:
            if old is None:
                os.environ.pop("PQ_THREADS", None)
            else:
                os.environ["PQ_THREADS"] = old
        assert v1 == v8


class TestPairingAdditivity:
    def test_random_pairs_refine2(self, eu, rng):
        cfg = QuadratureConfig(refine=2)
        worst = 0.0
        for _ in range(20):
            s1, s2 = fam.random_composable_homotopy_pair(eu, rng)
            worst = max(worst, pairing_additivity_residual(eu.two_form(), s1, s2, cfg))
        assert worst <= 1e-8

    def test_constant_second_factor(self, eu, rng):
        s1, _ = fam.random_composable_homotopy_pair(eu, rng)
        end = s1.grid[0, -1]
        const = linear_homotopy(fam.segment(eu, end, end + np.array([1.0, 0.0]), 32),
                                fam.segment(eu, end, end + np.array([1.0, 0.0]), 32),
                                s1.rows)
        assert pairing_additivity_residual(eu.two_form(), s1, const) <= 1e-12

    def test_reversed_s_cancels(self, eu, rng):
        s1, _ = fam.random_composable_homotopy_pair(eu, rng)
        v = k_pairing(eu.two_form(), s1)
        vr = k_pairing(eu.two_form(), reverse_homotopy_s(s1))
        assert abs(v + vr) <= 1e-10


class TestSphereSweep:
    def test_full_sweep_2pi(self, sp):
        v = sphere_sweep_integral(sp.two_form(), (256, 512))
        assert abs(v - 2 * np.pi) <= 1e-3

    def test_normalization_linearity(self):
        sp2 = pqg.sphere2(normalization=2.0)
        v = sphere_sweep_integral(sp2.two_form(), (256, 512))
        assert abs(v - 4 * np.pi) <= 2e-3

    def test_hemisphere_cap(self, sp):
        v = sphere_sweep_integral(sp.two_form(), (128, 256), s_span=(0.0, 0.5))
        assert abs(v - 0.5 * spherical_cap_area(np.pi / 2)) <= 1e-3

    def test_wrong_space(self, eu):
        with pytest.raises(SpaceMismatch):
            sphere_sweep_integral(eu.two_form(), (8, 8))


class TestKdkIdentity:
    def test_fixed_endpoint_loops(self, eu):
        f = fam.fixed_ends_loop_family(eu, 17, 17, 64)
        assert kdk_identity_residual(eu.two_form(), f) <= 1e-3

    def test_translating_family_exact(self, eu):
        f = fam.translating_segment_family(eu, 16, 16, 32)
        assert kdk_identity_residual(eu.two_form(), f) <= 1e-12

    def test_curved_family(self, eu):
        f = fam.curved_segment_family(eu, 33, 33, 64)
        assert kdk_identity_residual(eu.two_form(), f) <= 1e-3

    def test_sphere_family_with_halving(self, sp):
        r32 = kdk_identity_residual(sp.two_form(), fam.sphere_arc_family(sp, 33, 33, 64))
        r64 = kdk_identity_residual(sp.two_form(), fam.sphere_arc_family(sp, 65, 65, 128))
        assert r32 <= 5e-3
        assert 2.5 <= r32 / r64 <= 6.0  # second order under grid halving

    def test_degenerate_grid(self, eu):
        f = fam.curved_segment_family(eu, 2, 5, 8)
        with pytest.raises(DegenerateGrid):
            kdk_identity_residual(eu.two_form(), f)


class TestConvergenceOrder:
    def test_sweep_order(self, sp):
        errs = [abs(sphere_sweep_integral(sp.two_form(), (n, 2 * n)) - 2 * np.pi)
                for n in (64, 128, 256)]
        order = convergence_order([1 / 64, 1 / 128, 1 / 256], errs)
        assert 1.7 <= order <= 2.3

    def test_exact_integrand_skipped(self, eu, rng):
        g = fam.random_planar_paths(eu, rng, 1)[0]
        vals = [k_pairing(eu.two_form(), linear_homotopy(g, g, n)) for n in (4, 8, 16)]
        errs = self_convergence_errors(vals + [0.0])[:3]
        assert convergence_order([1 / 4, 1 / 8, 1 / 16], errs) is None

    def test_needs_three_points(self):
        with pytest.raises(InsufficientResolutions):
            convergence_order([1 / 2, 1 / 4], [0.1, 0.03])
