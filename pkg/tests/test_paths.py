import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import pqg
from pqg import families as fam
from pqg.errors import BadEpsilon, EndpointMismatch, EndsMismatch, RowCountMismatch
from pqg.integrator import k_pairing, line_integral
from pqg.oracles import slerp_by_rotation
from pqg.paths import (
    SampledHomotopy,
    concat,
    concat_homotopy,
    constant_path,
    eval_path,
    lift_cone_points,
    linear_homotopy,
    make_path,
    reverse,
    reverse_homotopy_s,
    reverse_homotopy_t,
    smash_reparam,
    smoothstep,
    smoothstep_inverse,
)


class TestEvalPath:
    def test_midpoint(self, eu):
        g = make_path(eu, [0, 1], [(0, 0), (2, 4)])
        assert np.allclose(eval_path(g, 0.5), (1, 2))

    def test_source_map(self, eu):
        g = fam.polyline(eu, [(0, 0), (1, 2), (3, 0)], 8)
        assert np.allclose(eval_path(g, 0.0), (0, 0))
        assert np.allclose(eval_path(g, 1.0), (3, 0))

    def test_clamped_outside(self, eu):
        g = make_path(eu, [0, 1], [(0, 0), (1, 0)])
        assert np.allclose(eval_path(g, -0.5), (0, 0))
        assert np.allclose(eval_path(g, 1.5), (1, 0))

    def test_slerp_oracle(self, sp):
        g = fam.great_arc(sp, (1, 0, 0), (0, 1, 0), 2)
        assert np.allclose(eval_path(g, 0.5), slerp_by_rotation((1, 0, 0), (0, 1, 0), 0.5),
                           atol=1e-12)
        assert np.allclose(eval_path(g, 0.5), (1 / np.sqrt(2), 1 / np.sqrt(2), 0), atol=1e-12)


class TestConcat:
    def test_constant(self, eu):
        c = constant_path(eu, (0.5, 0.5), 4)
        cc = concat(c, c)
        assert np.allclose(cc.points, (0.5, 0.5))

    def test_ends_contract(self, eu, rng):
        a = fam.random_planar_paths(eu, rng, 1, (0, 0), (1, 0))[0]
        b = fam.random_planar_paths(eu, rng, 1, (1, 0), (2, 1))[0]
        ab = concat(a, b)
        assert np.allclose(ab.start(), a.start())
        assert np.allclose(ab.end(), b.end())

    def test_line_integral_additive(self, eu):
        # alpha = x dy over two unit segments
        a = fam.segment(eu, (1, 0), (1, 1), 8)
        b = fam.segment(eu, (1, 1), (2, 1), 8)
        alpha = eu.primitive()
        total = line_integral(alpha, concat(a, b))
        assert total == pytest.approx(line_integral(alpha, a) + line_integral(alpha, b),
                                      abs=1e-12)
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_mismatch(self, eu):
        a = fam.segment(eu, (0, 0), (1, 0), 4)
        b = fam.segment(eu, (2, 0), (3, 0), 4)
        with pytest.raises(EndpointMismatch):
            concat(a, b)

    def test_cone_seam_mod_deck(self, cone3):
        a = fam.segment(cone3, (1.0, 0.1), (1.5, 0.0), 8)
        end_rot = np.array([1.5 * np.cos(2 * np.pi / 3), 1.5 * np.sin(2 * np.pi / 3)])
        b = fam.segment(cone3, end_rot, end_rot * 1.2, 8)
        ab = concat(a, b)  # seam matches only mod deck
        steps = np.linalg.norm(np.diff(ab.points, axis=0), axis=1)
        assert np.max(steps) < 0.5  # continuity-lifted, no deck jumps


class TestReverse:
    def test_involution(self, eu, rng):
        g = fam.random_planar_paths(eu, rng, 1)[0]
        rr = reverse(reverse(g))
        assert np.array_equal(rr.points, g.points)
        assert np.array_equal(rr.times, g.times)

    def test_ends_swap(self, eu):
        g = fam.segment(eu, (0, 0), (1, 2), 6)
        r = reverse(g)
        assert np.allclose(r.start(), g.end()) and np.allclose(r.end(), g.start())

    def test_line_integral_negates(self, eu, rng):
        g = fam.random_planar_paths(eu, rng, 1)[0]
        alpha = eu.primitive()
        assert line_integral(alpha, reverse(g)) == pytest.approx(-line_integral(alpha, g),
                                                                 abs=1e-14)


class TestSmash:
    def test_ends_unchanged(self, eu, rng):
        g = fam.random_planar_paths(eu, rng, 1)[0]
        s = smash_reparam(g, 0.2)
        assert np.allclose(s.start(), g.start()) and np.allclose(s.end(), g.end())

    def test_constant_unchanged(self, eu):
        c = constant_path(eu, (1, 1), 8)
        s = smash_reparam(c, 0.1)
        assert np.allclose(s.points, (1, 1))

    def test_integral_invariance(self, eu, rng):
        g = fam.random_planar_paths(eu, rng, 1)[0]
        alpha = eu.primitive()
        for eps in (0.05, 0.2, 0.4):
            assert line_integral(alpha, smash_reparam(g, eps)) == pytest.approx(
                line_integral(alpha, g), abs=1e-8)

    def test_bad_epsilon(self, eu):
        g = fam.segment(eu, (0, 0), (1, 0), 4)
        for eps in (0.0, 0.5, 0.7, -0.1):
            with pytest.raises(BadEpsilon):
                smash_reparam(g, eps)

    def test_ramp_monotone_with_plateaus(self):
        t = np.linspace(0, 1, 1001)
        lam = smoothstep((t - 0.2) / 0.6)
        assert np.all(np.diff(lam) >= 0)
        assert np.all(lam[t <= 0.2] == 0.0)
        assert np.all(lam[t >= 0.8] == 1.0)

    @given(st.floats(0, 1))
    @settings(max_examples=50, deadline=None)
    def test_smoothstep_inverse(self, y):
        assert smoothstep(smoothstep_inverse(y)) == pytest.approx(y, abs=1e-12)


class TestLinearHomotopy:
    def test_same_path_constant_rows(self, eu, rng):
        g = fam.random_planar_paths(eu, rng, 1)[0]
        sig = linear_homotopy(g, g, 4)
        assert np.allclose(sig.grid, sig.grid[0][None])

    def test_rows_hit_inputs(self, eu, rng):
        a, b = fam.random_planar_paths(eu, rng, 2)
        sig = linear_homotopy(a, b, 8)
        assert np.allclose(sig.grid[0], a.points)
        assert np.allclose(sig.grid[-1], b.points)

    def test_square_detour_pairing(self, eu):
        # sweeping the detour back to the straight segment covers the unit square
        g = fam.segment(eu, (0, 0), (1, 0), 64)
        det = fam.polyline(eu, [(0, 0), (0, 1), (1, 1), (1, 0)], 22)
        sig = linear_homotopy(g, det, 32)
        assert abs(k_pairing(eu.two_form(), sig)) == pytest.approx(1.0, abs=1e-9)

    def test_ends_mismatch(self, eu):
        a = fam.segment(eu, (0, 0), (1, 0), 4)
        b = fam.segment(eu, (0, 0), (1, 1), 4)
        with pytest.raises(EndsMismatch):
            linear_homotopy(a, b, 4)

    def test_antipodal_interpolation(self, sp):
        a = fam.great_arc(sp, (1, 0, 0), (0, 1, 0), 32)
        pts = a.points.copy()
        pts[1:-1] = -pts[1:-1]  # the mirrored interior is antipodal pointwise
        b = pqg.SampledPath(sp, a.times, pts)
        with pytest.raises(pqg.errors.AntipodalInterpolation):
            linear_homotopy(a, b, 4)


class TestHomotopyOps:
    def test_concat_constant_rows(self, eu):
        a = fam.segment(eu, (0, 0), (1, 0), 8)
        b = fam.segment(eu, (1, 0), (2, 0), 8)
        sa = linear_homotopy(a, a, 4)
        sb = linear_homotopy(b, b, 4)
        both = concat_homotopy(sa, sb)
        assert np.allclose(both.grid, both.grid[0][None])
        assert np.allclose(both.grid[0, 0], (0, 0)) and np.allclose(both.grid[0, -1], (2, 0))

    def test_row_count_mismatch(self, eu):
        a = fam.segment(eu, (0, 0), (1, 0), 8)
        b = fam.segment(eu, (1, 0), (2, 0), 8)
        with pytest.raises(RowCountMismatch):
            concat_homotopy(linear_homotopy(a, a, 4), linear_homotopy(b, b, 5))

    def test_reverse_homotopies_involutive(self, eu, rng):
        a, b = fam.random_planar_paths(eu, rng, 2)
        sig = linear_homotopy(a, b, 6)
        assert np.array_equal(reverse_homotopy_t(reverse_homotopy_t(sig)).grid, sig.grid)
        assert np.array_equal(reverse_homotopy_s(reverse_homotopy_s(sig)).grid, sig.grid)
        assert np.array_equal(reverse_homotopy_s(sig).grid, sig.grid[::-1])
        assert np.array_equal(reverse_homotopy_t(sig).grid, sig.grid[:, ::-1])


class TestInvariants:
    def test_concat_associative_up_to_reparam(self, eu, rng):
        a = fam.random_planar_paths(eu, rng, 1, (0, 0), (1, 0))[0]
        b = fam.random_planar_paths(eu, rng, 1, (1, 0), (2, 1))[0]
        c = fam.random_planar_paths(eu, rng, 1, (2, 1), (0.5, 2))[0]
        alpha = eu.primitive()
        left = concat(concat(a, b), c)
        right = concat(a, concat(b, c))
        assert line_integral(alpha, left) == pytest.approx(line_integral(alpha, right),
                                                           abs=1e-8)
        # the two parametrizations of the same curve cobound a flat sweep;
        # sample on a common refinement of both knot lattices so the rows
        # are the same polygon
        sig = linear_homotopy(left, right, 16, n_cols=256)
        assert abs(k_pairing(eu.two_form(), sig)) <= 1e-8

    def test_cone_lifting_continuity(self):
        m = 4
        ang = np.linspace(0, 2.2 * np.pi / m, 30)
        raw = np.stack([np.cos(ang), np.sin(ang)], axis=-1)
        from pqg.spaces import orbifold_canonical
        canonical = orbifold_canonical(m, raw)  # folds back into one sector
        lifted = lift_cone_points(m, canonical)
        steps = np.linalg.norm(np.diff(lifted, axis=0), axis=1)
        assert np.max(steps) < 0.2

    @given(st.integers(2, 6), st.integers(2, 8))
    @settings(max_examples=30, deadline=None)
    def test_operations_preserve_invariants(self, rows, half_knots):
        eu = pqg.euclidean(1)
        rng = np.random.default_rng(rows * 100 + half_knots)
        a, b = fam.random_planar_paths(eu, rng, 2, n_knots=2 * half_knots)
        sig = linear_homotopy(a, b, rows)
        # constructors validate: re-wrapping raises nothing
        pqg.SampledPath(eu, a.times, a.points)
        SampledHomotopy(eu, sig.grid, fixed_ends=True)
        r = reverse(a)
        assert r.times[0] == 0.0 and r.times[-1] == 1.0
        assert np.all(np.diff(r.times) > 0)
