"""Builders for the sampled paths, homotopies, and path families used by
the verification suites and the demos.

Everything here is deterministic given its arguments (random variants
take an explicit seeded generator).
"""

from __future__ import annotations

import numpy as np

from .integrator import PathFamily
from .paths import (
    SampledHomotopy,
    SampledPath,
    homotopy_from_rows,
    linear_homotopy,
    make_path,
    stack_homotopies,
)
from .spaces import SpaceModel, slerp, sphere_normalize

# --------------------------------------------------------------------------
# basic paths
# --------------------------------------------------------------------------


def segment(space: SpaceModel, a, b, n_knots: int = 64) -> SampledPath:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    t = np.linspace(0.0, 1.0, n_knots + 1)
    return make_path(space, t, a[None] + t[:, None] * (b - a)[None])


def polyline(space: SpaceModel, vertices, n_knots_per_leg: int = 32) -> SampledPath:
    """Piecewise straight path through the listed vertices."""
    verts = [np.asarray(v, dtype=float) for v in vertices]
    pts = [verts[0][None]]
    for a, b in zip(verts[:-1], verts[1:]):
        u = np.linspace(0.0, 1.0, n_knots_per_leg + 1)[1:]
        pts.append(a[None] + u[:, None] * (b - a)[None])
    pts = np.concatenate(pts, axis=0)
    t = np.linspace(0.0, 1.0, len(pts))
    return make_path(space, t, pts)


def circle(space: SpaceModel, radius: float = 1.0, center=(0.0, 0.0),
           n_knots: int = 64, turns: float = 1.0) -> SampledPath:
    """Counterclockwise planar circle (euclidean n=1 or cone cover)."""
    t = np.linspace(0.0, 1.0, n_knots + 1)
    ang = 2.0 * np.pi * turns * t
    c = np.asarray(center, dtype=float)
    pts = c[None] + radius * np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    return make_path(space, t, pts)


def cone_sector_loop(space: SpaceModel, radius: float = 1.0,
                     n_knots: int = 2048) -> SampledPath:
    """Loop once around the cone point: a cover arc of angle 2*pi/m."""
    t = np.linspace(0.0, 1.0, n_knots + 1)
    ang = (2.0 * np.pi / space.m) * t
    pts = radius * np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    return make_path(space, t, pts)


def great_arc(space: SpaceModel, a, b, n_knots: int = 64) -> SampledPath:
    t = np.linspace(0.0, 1.0, n_knots + 1)
    return SampledPath(space, t, slerp(np.asarray(a, float), np.asarray(b, float), t))


def meridian(space: SpaceModel, longitude: float = 0.0, n_knots: int = 96) -> SampledPath:
    """Half great circle from the north pole to the south pole."""
    t = np.linspace(0.0, 1.0, n_knots + 1)
    th = np.pi * t
    pts = np.stack([np.sin(th) * np.cos(longitude),
                    np.sin(th) * np.sin(longitude),
                    np.cos(th)], axis=-1)
    return SampledPath(space, t, pts)


def octant_paths(space: SpaceModel, n_knots: int = 96):
    """The equatorial quarter arc (1,0,0)->(0,1,0) and the two-leg detour
    over the north pole between the same endpoints."""
    x = np.array([1.0, 0.0, 0.0])
    x2 = np.array([0.0, 1.0, 0.0])
    pole = np.array([0.0, 0.0, 1.0])
    direct = great_arc(space, x, x2, n_knots)
    half = n_knots // 2
    t1 = np.linspace(0.0, 1.0, half + 1)
    leg1 = slerp(x, pole, t1)
    leg2 = slerp(pole, x2, t1)
    pts = np.concatenate([leg1, leg2[1:]], axis=0)
    t = np.linspace(0.0, 1.0, len(pts))
    detour = SampledPath(space, t, pts)
    return direct, detour


# --------------------------------------------------------------------------
# homotopies
# --------------------------------------------------------------------------


def meridian_sweep(space: SpaceModel, lon_from: float, lon_to: float,
                   n_rows: int = 96, n_knots: int = 96) -> SampledHomotopy:
    """Homotopy between two meridians through intermediate meridians."""
    lons = np.linspace(lon_from, lon_to, n_rows + 1)
    rows = [meridian(space, lo, n_knots) for lo in lons]
    return homotopy_from_rows(space, rows, fixed_ends=True)


def pivot_paths_loop(space: SpaceModel, x, x2, n_rows: int = 192,
                     n_knots: int = 96) -> SampledHomotopy:
    """Fixed-ends self-homotopy of a two-leg path whose pivot travels a
    full great circle; its pairing with the sphere form is one full
    period (the swept surface covers the sphere once).

    The pivot circle passes through the north pole and the normalized
    midpoint direction of (x, x2), staying clear of +-x and +-x2.
    """
    x = sphere_normalize(np.asarray(x, float))
    x2 = sphere_normalize(np.asarray(x2, float))
    n = np.array([0.0, 0.0, 1.0])
    u = sphere_normalize(x + x2)
    if abs(np.dot(n, u)) > 1 - 1e-9:
        u = sphere_normalize(x + np.array([0.3, 0.1, 0.0]))
    # orthonormal plane basis for the pivot circle
    e1 = n
    e2 = sphere_normalize(u - np.dot(u, e1) * e1)
    ang = 2.0 * np.pi * np.linspace(0.0, 1.0, n_rows + 1)
    half = n_knots // 2
    tt = np.linspace(0.0, 1.0, half + 1)
    rows = []
    for a in ang:
        m = np.cos(a) * e1 + np.sin(a) * e2
        leg1 = slerp(x, m, tt)
        leg2 = slerp(m, x2, tt)
        rows.append(np.concatenate([leg1, leg2[1:]], axis=0))
    return SampledHomotopy(space, np.stack(rows), fixed_ends=True)


def two_leg_path(space: SpaceModel, x, pivot, x2, n_knots: int = 96) -> SampledPath:
    half = n_knots // 2
    tt = np.linspace(0.0, 1.0, half + 1)
    leg1 = slerp(np.asarray(x, float), np.asarray(pivot, float), tt)
    leg2 = slerp(np.asarray(pivot, float), np.asarray(x2, float), tt)
    pts = np.concatenate([leg1, leg2[1:]], axis=0)
    t = np.linspace(0.0, 1.0, len(pts))
    return SampledPath(space, t, pts)


def wrapped_homotopy(space: SpaceModel, gamma: SampledPath, gamma2: SampledPath,
                     n_rows: int = 96) -> SampledHomotopy:
    """A second, inequivalent fixed-ends homotopy from gamma to gamma2:
    the direct one pre-composed with a full-sphere pivot loop, so the raw
    pairing differs from the direct route by one period."""
    x, x2 = gamma.ends()
    T = max(gamma.knot_count, gamma2.knot_count) - 1
    mid = two_leg_path(space, x, np.array([0.0, 0.0, 1.0]), x2, T)
    a = linear_homotopy(gamma, mid, n_rows, n_cols=T)
    w = pivot_paths_loop(space, x, x2, 2 * n_rows, T)
    b = linear_homotopy(mid, gamma2, n_rows, n_cols=T)
    return stack_homotopies(stack_homotopies(a, w), b)


def direct_homotopy(space: SpaceModel, gamma: SampledPath, gamma2: SampledPath,
                    n_rows: int = 96) -> SampledHomotopy:
    """Route matching wrapped_homotopy but without the pivot loop."""
    x, x2 = gamma.ends()
    T = max(gamma.knot_count, gamma2.knot_count) - 1
    mid = two_leg_path(space, x, np.array([0.0, 0.0, 1.0]), x2, T)
    a = linear_homotopy(gamma, mid, n_rows, n_cols=T)
    b = linear_homotopy(mid, gamma2, n_rows, n_cols=T)
    return stack_homotopies(a, b)


# --------------------------------------------------------------------------
# two-parameter path families for the curvature identities
# --------------------------------------------------------------------------


def translating_segment_family(space: SpaceModel, U: int, V: int, T: int,
                               span: float = 1.0) -> PathFamily:
    """Segments from the origin to b + (u, v, 0, ...): endpoint term is
    exactly the standard pairing; every stencil is exact."""
    d = space.dim
    b = np.zeros(d)
    b[0] = b[1] = 1.0
    u = span * np.linspace(0.0, 1.0, U)
    v = span * np.linspace(0.0, 1.0, V)
    t = np.linspace(0.0, 1.0, T + 1)
    ends = np.zeros((U, V, d))
    ends[..., 0] = b[0] + u[:, None]
    ends[..., 1] = b[1] + v[None, :]
    vals = t[None, None, :, None] * ends[:, :, None, :]
    return PathFamily(space, vals, u[1] - u[0], v[1] - v[0])


def curved_segment_family(space: SpaceModel, U: int, V: int, T: int,
                          amp: float = 0.2) -> PathFamily:
    """Segments with a smoothly twisted endpoint sheet; the residual of
    the curvature identity decays at second order in the grid step."""
    d = space.dim
    u = np.linspace(0.0, 1.0, U)
    v = np.linspace(0.0, 1.0, V)
    t = np.linspace(0.0, 1.0, T + 1)
    ends = np.zeros((U, V, d))
    ends[..., 0] = 1.0 + u[:, None] + amp * np.sin(np.pi * v)[None, :]
    ends[..., 1] = 1.0 + v[None, :] + amp * np.sin(np.pi * u)[:, None]
    vals = t[None, None, :, None] * ends[:, :, None, :]
    return PathFamily(space, vals, u[1] - u[0], v[1] - v[0])


def sphere_arc_family(space: SpaceModel, U: int, V: int, T: int,
                      span: float = 0.8) -> PathFamily:
    """Great arcs from a fixed point to a smoothly varying endpoint patch
    away from the antipode."""
    a = np.array([1.0, 0.0, 0.0])
    u = span * np.linspace(-0.5, 0.5, U)
    v = span * np.linspace(-0.5, 0.5, V)
    t = np.linspace(0.0, 1.0, T + 1)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    # endpoint patch around the +z pole direction, tilted by (u, v)
    ends = np.empty((U, V, 3))
    ends[..., 0] = np.sin(0.9 + 0.4 * uu) * np.cos(0.3 + 0.5 * vv)
    ends[..., 1] = np.sin(0.9 + 0.4 * uu) * np.sin(0.3 + 0.5 * vv)
    ends[..., 2] = np.cos(0.9 + 0.4 * uu)
    vals = np.empty((U, V, T + 1, 3))
    for i in range(U):
        for j in range(V):
            vals[i, j] = slerp(a, ends[i, j], t)
    return PathFamily(space, vals, u[1] - u[0], v[1] - v[0])


def fixed_ends_loop_family(space: SpaceModel, U: int, V: int, T: int) -> PathFamily:
    """Planar loops through the origin with shape parameters (u, v);
    all endpoints coincide, so the endpoint term vanishes."""
    d = space.dim
    u = np.linspace(0.5, 1.5, U)
    v = np.linspace(0.5, 1.5, V)
    t = np.linspace(0.0, 1.0, T + 1)
    ang = 2.0 * np.pi * t
    vals = np.zeros((U, V, T + 1, d))
    base_x = (1.0 - np.cos(ang))
    base_y = np.sin(ang)
    vals[..., 0] = u[:, None, None] * base_x[None, None, :]
    vals[..., 1] = v[None, :, None] * base_y[None, None, :]
    return PathFamily(space, vals, u[1] - u[0], v[1] - v[0])


# --------------------------------------------------------------------------
# randomized inputs (seeded)
# --------------------------------------------------------------------------


def random_planar_paths(space: SpaceModel, rng, count: int, x=(0.0, 0.0),
                        x2=(1.0, 0.0), n_knots: int = 64, amp: float = 0.6):
    """Same-ends wiggly polylines in the plane (shared knot count)."""
    x = np.asarray(x, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    t = np.linspace(0.0, 1.0, n_knots + 1)
    envelope = np.sin(np.pi * t)
    out = []
    d = space.dim
    base = x[None] + t[:, None] * (x2 - x)[None]
    for _ in range(count):
        wig = np.zeros((n_knots + 1, d))
        for k in (1, 2, 3):
            coefs = rng.uniform(-amp, amp, size=d) / k
            wig += np.sin(np.pi * k * t)[:, None] * coefs[None, :]
        out.append(make_path(space, t, base + wig * envelope[:, None]))
    return out


def random_sphere_paths(space: SpaceModel, rng, count: int, x=None, x2=None,
                        n_knots: int = 96, amp: float = 0.35):
    """Same-ends wiggly great-arc perturbations on the sphere."""
    x = np.array([1.0, 0.0, 0.0]) if x is None else np.asarray(x, float)
    x2 = np.array([0.0, 1.0, 0.0]) if x2 is None else np.asarray(x2, float)
    t = np.linspace(0.0, 1.0, n_knots + 1)
    base = slerp(x, x2, t)
    envelope = np.sin(np.pi * t)
    out = []
    for _ in range(count):
        wig = np.zeros((n_knots + 1, 3))
        for k in (1, 2):
            coefs = rng.uniform(-amp, amp, size=3) / k
            wig += np.sin(np.pi * k * t)[:, None] * coefs[None, :]
        pts = sphere_normalize(base + wig * envelope[:, None])
        out.append(SampledPath(space, t, pts))
    return out


def random_composable_homotopy_pair(space: SpaceModel, rng, n_rows: int = 16,
                                    n_knots: int = 32):
    """Two fixed-ends homotopies with matching row seams (for pairing
    additivity checks)."""
    mid = np.array([1.0, 0.0]) if space.dim == 2 else None
    if space.dim != 2:
        raise ValueError("builder supports planar spaces")
    a = random_planar_paths(space, rng, 2, (0.0, 0.0), tuple(mid), n_knots)
    b = random_planar_paths(space, rng, 2, tuple(mid), (2.0, 0.5), n_knots)
    sigma = linear_homotopy(a[0], a[1], n_rows)
    sigma2 = linear_homotopy(b[0], b[1], n_rows)
    return sigma, sigma2
