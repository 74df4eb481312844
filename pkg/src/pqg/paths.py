"""Finite sampled plots of path space and of homotopies between paths.

A SampledPath is a strictly increasing knot sequence t_0 = 0 < ... <
t_N = 1 with one point per knot; evaluation interpolates piecewise
(affine on euclidean and the cone cover, great-circle on the sphere).
A SampledHomotopy is an (S+1) x (T+1) grid of points whose row s is the
path gamma_s sampled at uniform t.

Cone-orbifold data is stored as continuity-lifted cover representatives:
each knot is the deck image closest to its predecessor, which keeps
integrals well defined near the singular origin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AntipodalInterpolation,
    AntipodalPoints,
    BadEpsilon,
    EndpointMismatch,
    EndsMismatch,
    RowCountMismatch,
    RowEndpointMismatch,
)
from .spaces import (
    ANTIPODAL_TOL,
    SpaceModel,
    as_coords,
    check_same_space,
    deck_align,
    deck_rotate,
    interpolate,
    points_equal,
    slerp,
    sphere_normalize,
    validate_point,
)

SEAM_TOL = 1e-9


def lift_cone_points(m: int, pts: np.ndarray) -> np.ndarray:
    """Continuity-lift a sequence of cover representatives."""
    pts = np.array(pts, dtype=float)
    for i in range(1, len(pts)):
        imgs = np.stack([deck_rotate(m, pts[i], k) for k in range(m)])
        d = np.linalg.norm(imgs - pts[i - 1], axis=-1)
        pts[i] = imgs[int(np.argmin(d))]
    return pts


@dataclass(frozen=True)
class SampledPath:
    """Knot sequence (times, points) with space-aware interpolation."""

    space: SpaceModel
    times: np.ndarray   # (N,), t_0 = 0, t_N = 1, strictly increasing
    points: np.ndarray  # (N, dim)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        p = np.asarray(self.points, dtype=float)
        if t.ndim != 1 or len(t) < 2:
            raise ValueError("a path needs at least 2 knots")
        if abs(t[0]) > 1e-15 or abs(t[-1] - 1.0) > 1e-15:
            raise ValueError("knot times must start at 0 and end at 1")
        if np.any(np.diff(t) <= 0):
            raise ValueError("knot times must be strictly increasing")
        if p.shape != (len(t), self.space.dim):
            raise ValueError("points shape does not match times/space")
        validate_point(self.space, p)
        if self.space.kind == "sphere2":
            dots = np.sum(p[:-1] * p[1:], axis=-1)
            if np.any(dots <= -1.0 + ANTIPODAL_TOL):
                raise AntipodalPoints("consecutive knots are antipodal")
        t.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "points", p)

    @property
    def knot_count(self) -> int:
        return len(self.times)

    def start(self) -> np.ndarray:
        return self.points[0]

    def end(self) -> np.ndarray:
        return self.points[-1]

    def ends(self) -> tuple[np.ndarray, np.ndarray]:
        return self.points[0], self.points[-1]


def make_path(space: SpaceModel, times, points) -> SampledPath:
    """Build a SampledPath, continuity-lifting cone representatives."""
    pts = np.asarray(points, dtype=float)
    if space.kind == "cone":
        pts = lift_cone_points(space.m, pts)
    return SampledPath(space, np.asarray(times, dtype=float), pts)


def path_from_function(space: SpaceModel, fn, n_knots: int = 65) -> SampledPath:
    """Sample t -> fn(t) on a uniform grid of n_knots knots."""
    t = np.linspace(0.0, 1.0, n_knots)
    pts = np.stack([as_coords(fn(ti)) for ti in t])
    if space.kind == "sphere2":
        pts = sphere_normalize(pts)
    return make_path(space, t, pts)


def constant_path(space: SpaceModel, x, n_knots: int = 2) -> SampledPath:
    x = as_coords(x)
    t = np.linspace(0.0, 1.0, n_knots)
    return make_path(space, t, np.tile(x, (n_knots, 1)))


def eval_path(gamma: SampledPath, t) -> np.ndarray:
    """Interpolated point gamma(t); t clamped to [0, 1] (stationary ends)."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    knots_t = gamma.times
    idx = np.clip(np.searchsorted(knots_t, t, side="right") - 1, 0, len(knots_t) - 2)
    t0 = knots_t[idx]
    t1 = knots_t[idx + 1]
    u = (t - t0) / (t1 - t0)
    a = gamma.points[idx]
    b = gamma.points[idx + 1]
    return interpolate(gamma.space, a, b, u)


def resample(gamma: SampledPath, n_intervals: int) -> SampledPath:
    """Resample onto a uniform grid of n_intervals + 1 knots."""
    t = np.linspace(0.0, 1.0, n_intervals + 1)
    return SampledPath(gamma.space, t, eval_path(gamma, t))


def ends_equal(space: SpaceModel, p, q, tol: float = SEAM_TOL) -> bool:
    return points_equal(space, p, q, tol)


def concat(gamma: SampledPath, gamma2: SampledPath) -> SampledPath:
    """Concatenation at t = 1/2; cone seams align mod deck rotation."""
    check_same_space(gamma.space, gamma2.space)
    space = gamma.space
    if space.kind == "cone":
        try:
            k = deck_align(space, gamma.end(), gamma2.start(), SEAM_TOL)
        except Exception as exc:
            raise EndpointMismatch(str(exc)) from exc
        pts2 = deck_rotate(space.m, gamma2.points, k)
    else:
        if not ends_equal(space, gamma.end(), gamma2.start()):
            raise EndpointMismatch("gamma(1) != gamma2(0)")
        pts2 = gamma2.points
    t = np.concatenate([0.5 * gamma.times, 0.5 + 0.5 * gamma2.times[1:]])
    p = np.concatenate([gamma.points, pts2[1:]], axis=0)
    return SampledPath(space, t, p)


def reverse(gamma: SampledPath) -> SampledPath:
    t = 1.0 - gamma.times[::-1]
    p = gamma.points[::-1].copy()
    return SampledPath(gamma.space, t, p)


def smoothstep(u):
    u = np.clip(u, 0.0, 1.0)
    return u * u * (3.0 - 2.0 * u)


def smoothstep_inverse(y):
    """Inverse of 3u^2 - 2u^3 on [0, 1] (closed trigonometric form)."""
    y = np.clip(np.asarray(y, dtype=float), 0.0, 1.0)
    return 0.5 - np.sin(np.arcsin(1.0 - 2.0 * y) / 3.0)


def smash_reparam(gamma: SampledPath, eps: float, n_intervals: int | None = None) -> SampledPath:
    """Reparametrize by the plateau ramp: constant on [0, eps] and
    [1 - eps, 1], smoothstep in between.

    The new knot grid includes the preimages of the original knots, so
    the sampled image curve is unchanged and integrals are preserved
    exactly, not only to quadrature tolerance.
    """
    if not (0.0 < eps < 0.5):
        raise BadEpsilon("eps must lie in (0, 1/2)")
    if n_intervals is None:
        n_intervals = max(2 * (gamma.knot_count - 1), 32)
    base = np.linspace(0.0, 1.0, n_intervals + 1)
    interior = gamma.times[(gamma.times > 0.0) & (gamma.times < 1.0)]
    pre = eps + (1.0 - 2.0 * eps) * smoothstep_inverse(interior)
    t = np.unique(np.concatenate([base, pre]))
    lam = smoothstep((t - eps) / (1.0 - 2.0 * eps))
    return SampledPath(gamma.space, t, eval_path(gamma, lam))


@dataclass(frozen=True)
class SampledHomotopy:
    """(S+1) x (T+1) grid: row s is the path gamma_s at uniform t."""

    space: SpaceModel
    grid: np.ndarray  # (S+1, T+1, dim)
    fixed_ends: bool = True

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        if g.ndim != 3 or g.shape[0] < 2 or g.shape[1] < 2:
            raise ValueError("homotopy grid needs S >= 1 and T >= 1")
        if g.shape[2] != self.space.dim:
            raise ValueError("grid dim does not match space")
        validate_point(self.space, g)
        if self.space.kind == "sphere2":
            dots = np.sum(g[:, :-1] * g[:, 1:], axis=-1)
            if np.any(dots <= -1.0 + ANTIPODAL_TOL):
                raise AntipodalPoints("antipodal adjacent grid knots")
        if self.fixed_ends:
            for col in (0, -1):
                if not np.allclose(g[:, col], g[0, col], atol=1e-9):
                    raise EndsMismatch("fixed_ends homotopy has moving ends")
        g.setflags(write=False)
        object.__setattr__(self, "grid", g)

    @property
    def rows(self) -> int:
        return self.grid.shape[0] - 1

    @property
    def cols(self) -> int:
        return self.grid.shape[1] - 1

    def row_path(self, s_index: int) -> SampledPath:
        t = np.linspace(0.0, 1.0, self.grid.shape[1])
        return SampledPath(self.space, t, self.grid[s_index].copy())


def homotopy_from_rows(space: SpaceModel, rows, fixed_ends: bool = True) -> SampledHomotopy:
    """Stack equally sampled row paths into a homotopy grid."""
    grids = []
    for r in rows:
        if isinstance(r, SampledPath):
            grids.append(r.points)
        else:
            grids.append(np.asarray(r, dtype=float))
    T = {g.shape[0] for g in grids}
    if len(T) != 1:
        raise RowCountMismatch("rows are sampled at different resolutions")
    return SampledHomotopy(space, np.stack(grids), fixed_ends=fixed_ends)


def linear_homotopy(gamma: SampledPath, gamma2: SampledPath, n_rows: int,
                    n_cols: int | None = None) -> SampledHomotopy:
    """Canonical connecting homotopy: pointwise affine/slerp rows.

    Row 0 is gamma, row n_rows is gamma2; both are resampled to a common
    uniform grid.  On the sphere an interpolated pair that is antipodal
    aborts with AntipodalInterpolation (supply an explicit homotopy).
    """
    check_same_space(gamma.space, gamma2.space)
    space = gamma.space
    if space.kind == "cone":
        k = deck_align(space, gamma.start(), gamma2.start(), SEAM_TOL)
        gamma2 = SampledPath(space, gamma2.times, deck_rotate(space.m, gamma2.points, k))
        if np.linalg.norm(gamma.end() - gamma2.end()) > SEAM_TOL:
            raise EndsMismatch("cone ends do not align under one deck rotation")
    else:
        a0, a1 = gamma.ends()
        b0, b1 = gamma2.ends()
        if not (ends_equal(space, a0, b0) and ends_equal(space, a1, b1)):
            raise EndsMismatch("paths do not share their ends")
    if n_rows < 1:
        raise ValueError("a homotopy needs at least one row interval")
    T = n_cols if n_cols is not None else max(gamma.knot_count, gamma2.knot_count) - 1
    t = np.linspace(0.0, 1.0, T + 1)
    P = eval_path(gamma, t)
    Q = eval_path(gamma2, t)
    if space.kind == "sphere2":
        dots = np.sum(P * Q, axis=-1)
        if np.any(dots <= -1.0 + ANTIPODAL_TOL):
            raise AntipodalInterpolation("pointwise slerp hits antipodes")
    u = np.linspace(0.0, 1.0, n_rows + 1)
    if space.kind == "sphere2":
        grid = np.stack([slerp(P, Q, ui) for ui in u])
    else:
        grid = P[None] + u[:, None, None] * (Q - P)[None]
    return SampledHomotopy(space, grid, fixed_ends=True)


def concat_homotopy(sigma: SampledHomotopy, sigma2: SampledHomotopy) -> SampledHomotopy:
    """Row-wise concatenation (gamma_s followed by gamma2_s for each s)."""
    check_same_space(sigma.space, sigma2.space)
    space = sigma.space
    if sigma.rows != sigma2.rows:
        raise RowCountMismatch(f"{sigma.rows} vs {sigma2.rows} rows")
    g2 = sigma2.grid
    if space.kind == "cone":
        k = deck_align(space, sigma.grid[0, -1], g2[0, 0], SEAM_TOL)
        g2 = deck_rotate(space.m, g2, k)
    seam = np.linalg.norm(sigma.grid[:, -1] - g2[:, 0], axis=-1)
    if np.any(seam > SEAM_TOL):
        raise RowEndpointMismatch("row seams do not match")
    grid = np.concatenate([sigma.grid, g2[:, 1:]], axis=1)
    fixed = sigma.fixed_ends and sigma2.fixed_ends
    return SampledHomotopy(space, grid, fixed_ends=fixed)


def reverse_homotopy_t(sigma: SampledHomotopy) -> SampledHomotopy:
    return SampledHomotopy(sigma.space, sigma.grid[:, ::-1].copy(),
                           fixed_ends=sigma.fixed_ends)


def reverse_homotopy_s(sigma: SampledHomotopy) -> SampledHomotopy:
    return SampledHomotopy(sigma.space, sigma.grid[::-1].copy(),
                           fixed_ends=sigma.fixed_ends)


def stack_homotopies(sigma: SampledHomotopy, sigma2: SampledHomotopy) -> SampledHomotopy:
    """Concatenate in the s direction (run sigma, then sigma2)."""
    check_same_space(sigma.space, sigma2.space)
    if sigma.cols != sigma2.cols:
        raise RowCountMismatch("stacked homotopies need equal column counts")
    if not np.allclose(sigma.grid[-1], sigma2.grid[0], atol=SEAM_TOL):
        raise RowEndpointMismatch("last row of first != first row of second")
    grid = np.concatenate([sigma.grid, sigma2.grid[1:]], axis=0)
    fixed = sigma.fixed_ends and sigma2.fixed_ends
    return SampledHomotopy(sigma.space, grid, fixed_ends=fixed)


def constant_homotopy(gamma: SampledPath, n_rows: int, n_cols: int | None = None) -> SampledHomotopy:
    T = n_cols if n_cols is not None else gamma.knot_count - 1
    t = np.linspace(0.0, 1.0, T + 1)
    row = eval_path(gamma, t)
    return SampledHomotopy(gamma.space, np.tile(row, (n_rows + 1, 1, 1)),
                           fixed_ends=True)
