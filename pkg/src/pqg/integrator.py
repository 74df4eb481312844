"""Quadrature kernels.

Everything is a composite midpoint rule on sampled data:

* line_integral  -- one-form along a sampled path, chord tangents;
* k_pairing      -- double integral of omega(d/dt, d/ds) over a sampled
  homotopy, cell-center evaluation with central-difference tangents;
* sphere_sweep_integral -- the full-sphere latitude sweep, whose
  continuum value is the integral of omega over the sphere;
* kdk_identity_residual -- discrete check that the curl of the homotopy
  pairing equals the two-form evaluated at path endpoints.

All reductions run through one fixed pairwise summation tree, so results
are bit-identical regardless of tiling or thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGrid, InsufficientResolutions, SpaceMismatch
from .paths import SampledHomotopy, SampledPath, eval_path, resample
from .spaces import SpaceModel, check_same_space, interpolate, sphere_normalize


@dataclass(frozen=True)
class QuadratureConfig:
    """Accuracy and reduction knobs for all kernels."""

    refine: int = 1            # supersampling factor per cell
    reduction: str = "pairwise"  # fixed-tree summation, always on
    tol_report: float = 1e-9

    def __post_init__(self):
        if self.refine < 1:
            raise ValueError("refine must be >= 1")


DEFAULT_CFG = QuadratureConfig()


def thread_count() -> int:
    """Worker cap: PQ_THREADS if set, else the hardware count."""
    env = os.environ.get("PQ_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def pairwise_sum(values: np.ndarray) -> float:
    """Sum in a fixed pairwise tree (deterministic, tiling-independent)."""
    x = np.asarray(values, dtype=float).ravel()
    if x.size == 0:
        return 0.0
    while x.size > 1:
        m = x.size // 2
        head = x[: 2 * m : 2] + x[1 : 2 * m : 2]
        x = head if x.size % 2 == 0 else np.append(head, x[-1])
    return float(x[0])


def _tile_fill(out: np.ndarray, block_fn, n_blocks_hint: int | None = None) -> None:
    """Fill out[i0:i1] = block_fn(i0, i1) over row tiles, maybe threaded.

    Values are independent of the tiling; threads only fill disjoint
    slices of the preallocated array.
    """
    n = out.shape[0]
    workers = min(thread_count(), n)
    if workers <= 1:
        block_fn(0, n, out)
        return
    bounds = np.linspace(0, n, workers + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futs = [pool.submit(block_fn, int(a), int(b), out)
                for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        for f in futs:
            f.result()


def refine_grid(space: SpaceModel, grid: np.ndarray, r: int) -> np.ndarray:
    """Supersample a homotopy grid by factor r along both axes."""
    if r == 1:
        return grid

    def refine_axis(g, axis):
        g = np.moveaxis(g, axis, 0)
        n = g.shape[0] - 1
        out = np.empty((n * r + 1,) + g.shape[1:], dtype=float)
        out[::r] = g
        for f in range(1, r):
            out[f::r] = interpolate(space, g[:-1], g[1:], f / r)
        return np.moveaxis(out, 0, axis)

    return refine_axis(refine_axis(grid, 1), 0)


def _cell_values(two_form, space: SpaceModel, grid: np.ndarray) -> np.ndarray:
    """Per-cell midpoint contributions omega(center; m_t, m_s).

    m_t and m_s are the differences of opposite edge midpoints; they
    already carry the cell widths, so the plain sum of the returned
    values is the integral.
    """
    A = grid[:-1, :-1]
    B = grid[:-1, 1:]
    C = grid[1:, 1:]
    D = grid[1:, :-1]
    mt = 0.5 * (B + C - A - D)
    ms = 0.5 * (D + C - A - B)
    ctr = 0.25 * (A + B + C + D)
    if space.kind == "sphere2":
        ctr = sphere_normalize(ctr)
    vals = np.empty(ctr.shape[:-1], dtype=float)

    def block(i0, i1, out):
        out[i0:i1] = two_form(ctr[i0:i1], mt[i0:i1], ms[i0:i1])

    _tile_fill(vals, block)
    return vals


def k_pairing(two_form, sigma: SampledHomotopy, cfg: QuadratureConfig = DEFAULT_CFG) -> float:
    """Pairing of the two-form with a homotopy: integral of
    omega(d/dt gamma_s(t), d/ds gamma_s(t)) over the grid."""
    check_same_space(two_form.space, sigma.space)
    grid = refine_grid(sigma.space, sigma.grid, cfg.refine)
    vals = _cell_values(two_form, sigma.space, grid)
    return pairwise_sum(vals)


def pairing_additivity_residual(two_form, sigma: SampledHomotopy, sigma2: SampledHomotopy,
                                cfg: QuadratureConfig = DEFAULT_CFG) -> float:
    """|pairing(sigma * sigma2) - pairing(sigma) - pairing(sigma2)|."""
    from .paths import concat_homotopy

    both = concat_homotopy(sigma, sigma2)
    return abs(k_pairing(two_form, both, cfg)
               - k_pairing(two_form, sigma, cfg)
               - k_pairing(two_form, sigma2, cfg))


def line_integral(one_form, gamma: SampledPath, cfg: QuadratureConfig = DEFAULT_CFG) -> float:
    """Composite midpoint line integral of a one-form along a path.

    Each knot interval contributes alpha at the segment midpoint applied
    to the chord; refine subdivides every interval.
    """
    check_same_space(one_form.space, gamma.space)
    t = gamma.times
    r = cfg.refine
    if r > 1:
        steps = np.arange(r) / r
        t = np.append((t[:-1, None] + np.diff(t)[:, None] * steps).ravel(), 1.0)
    pts = eval_path(gamma, t)
    mid = interpolate(gamma.space, pts[:-1], pts[1:], 0.5)
    delta = pts[1:] - pts[:-1]
    return pairwise_sum(one_form(mid, delta))


def latitude_sweep_grid(n_rows: int, n_cols: int, s_span=(0.0, 1.0)) -> np.ndarray:
    """Grid of latitude circles, polar angle s*pi for s in s_span.

    Circles are traversed with decreasing azimuth so that the full sweep
    pairs to +integral(omega) over the sphere.
    """
    s0, s1 = s_span
    theta = np.pi * np.linspace(s0, s1, n_rows + 1)
    phi = -2.0 * np.pi * np.arange(n_cols + 1) / n_cols
    st, ct = np.sin(theta), np.cos(theta)
    grid = np.empty((n_rows + 1, n_cols + 1, 3))
    grid[..., 0] = st[:, None] * np.cos(phi)[None, :]
    grid[..., 1] = st[:, None] * np.sin(phi)[None, :]
    grid[..., 2] = ct[:, None] * np.ones_like(phi)[None, :]
    return grid


def sphere_sweep_integral(two_form, resolution, cfg: QuadratureConfig = DEFAULT_CFG,
                          s_span=(0.0, 1.0)) -> float:
    """Pairing over the latitude sweep; continuum value is the integral
    of the two-form over the swept band (the whole sphere by default)."""
    if two_form.space.kind != "sphere2":
        raise SpaceMismatch("latitude sweep needs the sphere")
    S, T = resolution
    grid = latitude_sweep_grid(S, T, s_span)
    sigma = SampledHomotopy(two_form.space, grid, fixed_ends=False)
    return k_pairing(two_form, sigma, cfg)


@dataclass(frozen=True)
class PathFamily:
    """Two-parameter grid of sampled paths, uniform in (u, v).

    values has shape (U, V, T+1, dim); h_u and h_v are the parameter
    spacings between adjacent paths.
    """

    space: SpaceModel
    values: np.ndarray
    h_u: float = 0.0  # 0 -> 1/(U-1)
    h_v: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 4 or v.shape[3] != self.space.dim:
            raise ValueError("family values must have shape (U, V, T+1, dim)")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.h_u == 0.0:
            object.__setattr__(self, "h_u", 1.0 / max(v.shape[0] - 1, 1))
        if self.h_v == 0.0:
            object.__setattr__(self, "h_v", 1.0 / max(v.shape[1] - 1, 1))


def family_from_paths(space: SpaceModel, paths, h_u: float = 0.0, h_v: float = 0.0) -> PathFamily:
    """Build a PathFamily from a nested list of SampledPath, resampling
    to the largest knot count."""
    T = max(p.knot_count - 1 for row in paths for p in row)
    vals = np.stack([np.stack([resample(p, T).points for p in row]) for row in paths])
    return PathFamily(space, vals, h_u, h_v)


def strip_pairings(two_form, space: SpaceModel, values: np.ndarray, axis: int) -> np.ndarray:
    """Pairing of each adjacent-path strip along the given parameter axis.

    For axis 0 the result has shape (U-1, V): entry (i, j) is the
    integral of omega(d/dt, d/du) over the strip between paths (i, j)
    and (i+1, j).
    """
    v = values if axis == 0 else np.swapaxes(values, 0, 1)
    A = v[:-1, :, :-1]   # (U-1, V, T, d)
    B = v[:-1, :, 1:]
    C = v[1:, :, 1:]
    D = v[1:, :, :-1]
    mt = 0.5 * (B + C - A - D)
    ms = 0.5 * (D + C - A - B)
    ctr = 0.25 * (A + B + C + D)
    if space.kind == "sphere2":
        ctr = sphere_normalize(ctr)
    cells = two_form(ctr, mt, ms)
    out = np.empty(cells.shape[:2], dtype=float)
    for i in range(out.shape[0]):
        for j in range(out.shape[1]):
            out[i, j] = pairwise_sum(cells[i, j])
    return out


def endpoint_cell_form(two_form, space: SpaceModel, pts: np.ndarray) -> np.ndarray:
    """Midpoint-rule cell values of the two-form on a (U, V, dim) point
    grid, used for the endpoint side of the curl identity."""
    # axis 0 is u, axis 1 is v
    A = pts[:-1, :-1]
    B = pts[:-1, 1:]
    C = pts[1:, 1:]
    D = pts[1:, :-1]
    mu_u = 0.5 * (D + C - A - B)
    mu_v = 0.5 * (B + C - A - D)
    ctr = 0.25 * (A + B + C + D)
    if space.kind == "sphere2":
        ctr = sphere_normalize(ctr)
    return two_form(ctr, mu_u, mu_v)


def kdk_identity_residual(two_form, family: PathFamily,
                          cfg: QuadratureConfig = DEFAULT_CFG) -> float:
    """Residual of the discrete curl identity for the homotopy pairing.

    For every (u, v) plaquette, the circulation of the strip pairings
    around the plaquette is compared with the two-form evaluated on the
    plaquette at the paths' endpoints minus the same at their starts
    (both by the midpoint cell rule).  Returns the maximum cell error
    normalized by cell area and by max(1, |endpoint term|).
    """
    check_same_space(two_form.space, family.space)
    U, V = family.values.shape[0], family.values.shape[1]
    if U < 3 or V < 3:
        raise DegenerateGrid("need at least a 3 x 3 family grid")
    vals = family.values
    if cfg.refine > 1:
        r = cfg.refine
        t_new = np.empty((U, V, (vals.shape[2] - 1) * r + 1, vals.shape[3]))
        g = vals
        t_new[:, :, ::r] = g
        for f in range(1, r):
            t_new[:, :, f::r] = interpolate(family.space, g[:, :, :-1], g[:, :, 1:], f / r)
        vals = t_new
    g_u = strip_pairings(two_form, family.space, vals, axis=0)          # (U-1, V)
    g_v_t = strip_pairings(two_form, family.space, vals, axis=1)        # (V-1, U)
    g_v = g_v_t.T                                                        # (U, V-1)
    circ = (g_u[:, :-1] + g_v[1:, :] - g_u[:, 1:] - g_v[:-1, :])         # (U-1, V-1)
    rhs = (endpoint_cell_form(two_form, family.space, vals[:, :, -1, :])
           - endpoint_cell_form(two_form, family.space, vals[:, :, 0, :]))
    area = family.h_u * family.h_v
    scale = max(1.0, float(np.max(np.abs(rhs))) / area)
    return float(np.max(np.abs(circ - rhs)) / (area * scale))


def convergence_order(step_sizes, errors, floor: float = 1e-12):
    """Least-squares slope of log error against log step size.

    Returns None when every error is below the floor (nothing left to
    fit; the integrand was exact at all resolutions).
    """
    h = np.asarray(step_sizes, dtype=float)
    e = np.abs(np.asarray(errors, dtype=float))
    if len(h) < 3 or len(h) != len(e):
        raise InsufficientResolutions("need >= 3 matching resolutions")
    if np.all(e < floor):
        return None
    e = np.maximum(e, floor)
    slope = np.polyfit(np.log(h), np.log(e), 1)[0]
    return float(slope)


def self_convergence_errors(values) -> np.ndarray:
    """Richardson-style error proxies |v_k - v_{k+1}| for a refinement
    sequence (the last value stands in for the limit)."""
    v = np.asarray(values, dtype=float)
    if len(v) < 3:
        raise InsufficientResolutions("need >= 3 values")
    return np.abs(v[:-1] - v[-1])
