"""Concrete base spaces: points, tangents, two-forms, primitives, geodesics.

Three space kinds are built in:

* ``euclidean``  -- R^{2n} with the standard pairing sum(dx_i ^ dy_i),
  coordinates ordered (x1, y1, ..., xn, yn);
* ``sphere2``    -- the unit sphere in R^3 with half the Euclidean area
  form, so the total integral is 2*pi at normalization 1;
* ``cone``       -- the plane quotient by an order-m rotation, computed
  entirely in the covering chart where the two-form is dx ^ dy.

All evaluation functions are vectorized: points and tangents may be
arrays of shape (..., dim).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AntipodalPoints, NoPrimitive, NonFiniteInput, SpaceMismatch

SPHERE_RADIAL_TOL = 1e-12
ANTIPODAL_TOL = 1e-9  # inner-product margin; slerp denominator conditioning


@dataclass(frozen=True)
class SpaceModel:
    """Descriptor of one of the built-in parasymplectic spaces."""

    kind: str                 # "euclidean" | "sphere2" | "cone"
    n: int = 1                # euclidean: half-dimension
    m: int = 2                # cone: rotation order
    normalization: float = 1.0

    def __post_init__(self):
        if self.kind not in ("euclidean", "sphere2", "cone"):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind == "euclidean" and self.n < 1:
            raise ValueError("euclidean space needs n >= 1")
        if self.kind == "cone" and (int(self.m) != self.m or self.m < 2):
            raise ValueError("cone order m must be an integer >= 2")
        if not (self.normalization > 0):
            raise ValueError("normalization must be positive")

    @property
    def dim(self) -> int:
        return {"euclidean": 2 * self.n, "sphere2": 3, "cone": 2}[self.kind]

    @property
    def tag(self) -> str:
        if self.kind == "euclidean":
            return f"euclidean({self.n})"
        if self.kind == "cone":
            return f"cone({self.m})"
        return "sphere2"

    def two_form(self, scale: float = 1.0) -> "TwoForm":
        return TwoForm(self, scale)

    def primitive(self, scale: float = 1.0) -> "OneForm":
        if self.kind == "sphere2":
            raise NoPrimitive("sphere2 carries no global primitive")
        return OneForm(self, scale)


def euclidean(n: int = 1, normalization: float = 1.0) -> SpaceModel:
    return SpaceModel("euclidean", n=n, normalization=normalization)


def sphere2(normalization: float = 1.0) -> SpaceModel:
    return SpaceModel("sphere2", normalization=normalization)


def cone(m: int, normalization: float = 1.0) -> SpaceModel:
    return SpaceModel("cone", m=m, normalization=normalization)


@dataclass(frozen=True)
class Point:
    """A point record: owning space tag plus coordinates."""

    space_tag: str
    coords: tuple

    def __array__(self, dtype=None, copy=None):
        return np.array(self.coords, dtype=dtype or float)


def as_coords(p) -> np.ndarray:
    """Coerce a Point or array-like to a float ndarray."""
    if isinstance(p, Point):
        return np.asarray(p.coords, dtype=float)
    return np.asarray(p, dtype=float)


def make_point(space: SpaceModel, coords) -> Point:
    c = as_coords(coords)
    validate_point(space, c)
    return Point(space.tag, tuple(float(v) for v in c))


def validate_point(space: SpaceModel, p) -> np.ndarray:
    p = as_coords(p)
    if p.shape[-1] != space.dim:
        raise SpaceMismatch(f"point of dim {p.shape[-1]} in {space.tag}")
    if not np.all(np.isfinite(p)):
        raise NonFiniteInput("non-finite point coordinates")
    if space.kind == "sphere2":
        r = np.linalg.norm(p, axis=-1)
        if np.any(np.abs(r - 1.0) > SPHERE_RADIAL_TOL):
            raise SpaceMismatch("sphere2 point is off the unit sphere")
    return p


def check_same_space(a: SpaceModel, b: SpaceModel) -> None:
    if a != b:
        raise SpaceMismatch(f"{a.tag} vs {b.tag}")


def sphere_normalize(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    n = np.sqrt(np.einsum("...i,...i->...", p, p))[..., None]
    return p / n


def project_tangent(space: SpaceModel, p, w) -> np.ndarray:
    """Project an ambient vector onto the tangent space at p.

    Identity except on the sphere, where the radial component is removed.
    """
    p = as_coords(p)
    w = np.asarray(w, dtype=float)
    if space.kind != "sphere2":
        return w
    return w - np.sum(w * p, axis=-1, keepdims=True) * p


class TwoForm:
    """Pointwise evaluation rule of the space's closed two-form.

    ``scale`` multiplies the space normalization; omega(c * scale) is used
    by linearity tests.
    """

    def __init__(self, space: SpaceModel, scale: float = 1.0):
        self.space = space
        self.scale = float(scale)

    def scaled(self, c: float) -> "TwoForm":
        return TwoForm(self.space, self.scale * c)

    @property
    def factor(self) -> float:
        return self.space.normalization * self.scale

    def __call__(self, p, u, v) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        k = self.space.kind
        if k == "sphere2":
            # det[p, u, v] is unchanged by adding multiples of p to u or
            # v, so tangent projection would be a no-op here
            cx = u[..., 1] * v[..., 2] - u[..., 2] * v[..., 1]
            cy = u[..., 2] * v[..., 0] - u[..., 0] * v[..., 2]
            cz = u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]
            det = p[..., 0] * cx + p[..., 1] * cy + p[..., 2] * cz
            return 0.5 * self.factor * det
        # euclidean / cone cover chart: sum over (x_i, y_i) pairs
        ux, uy = u[..., 0::2], u[..., 1::2]
        vx, vy = v[..., 0::2], v[..., 1::2]
        return self.factor * np.sum(ux * vy - uy * vx, axis=-1)


class OneForm:
    """Primitive of the two-form where one exists.

    euclidean: sum x_i dy_i.  cone cover chart: (x dy - y dx) / 2, the
    rotation-invariant primitive that descends to the quotient.
    """

    def __init__(self, space: SpaceModel, scale: float = 1.0):
        if space.kind == "sphere2":
            raise NoPrimitive("sphere2 carries no global primitive")
        self.space = space
        self.scale = float(scale)

    @property
    def factor(self) -> float:
        return self.space.normalization * self.scale

    def __call__(self, p, u) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        u = np.asarray(u, dtype=float)
        if self.space.kind == "cone":
            val = 0.5 * (p[..., 0] * u[..., 1] - p[..., 1] * u[..., 0])
            return self.factor * val
        px = p[..., 0::2]
        uy = u[..., 1::2]
        return self.factor * np.sum(px * uy, axis=-1)


def eval_two_form(space: SpaceModel, p, u, v) -> float | np.ndarray:
    """omega_p(u, v) with validation; sphere tangents are projected."""
    p = validate_point(space, p)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise NonFiniteInput("non-finite tangent input")
    out = space.two_form()(p, u, v)
    return float(out) if out.ndim == 0 else out


def eval_one_form(space: SpaceModel, p, u) -> float | np.ndarray:
    p = validate_point(space, p)
    out = space.primitive()(p, np.asarray(u, dtype=float))
    return float(out) if out.ndim == 0 else out


def deck_rotate(m: int, p, k: int) -> np.ndarray:
    """Apply the k-th deck rotation to cover-chart points."""
    p = np.asarray(p, dtype=float)
    a = 2.0 * np.pi * (k % m) / m
    c, s = np.cos(a), np.sin(a)
    out = np.empty_like(p)
    out[..., 0] = c * p[..., 0] - s * p[..., 1]
    out[..., 1] = s * p[..., 0] + c * p[..., 1]
    return out


def orbifold_canonical(m: int, z) -> np.ndarray:
    """Canonical cover representative with argument in [0, 2*pi/m).

    Used for equality tests only; integrals always run on
    continuity-lifted representatives.
    """
    z = np.asarray(z, dtype=float)
    r = np.hypot(z[..., 0], z[..., 1])
    if np.all(r == 0):
        return z.copy()
    theta = np.arctan2(z[..., 1], z[..., 0]) % (2.0 * np.pi)
    sector = 2.0 * np.pi / m
    theta = theta % sector
    out = np.empty_like(z)
    out[..., 0] = r * np.cos(theta)
    out[..., 1] = r * np.sin(theta)
    # the singular origin is its own representative
    out = np.where(r[..., None] == 0.0, 0.0, out)
    return out


def points_equal(space: SpaceModel, p, q, tol: float = 1e-9) -> bool:
    """Equality in the space (cone: up to a deck rotation)."""
    p = as_coords(p)
    q = as_coords(q)
    if space.kind != "cone":
        return bool(np.linalg.norm(p - q) <= tol)
    dists = [np.linalg.norm(p - deck_rotate(space.m, q, k)) for k in range(space.m)]
    return bool(min(dists) <= tol)


def deck_align(space: SpaceModel, p, q, tol: float = 1e-9) -> int:
    """Deck power k with rotate(q, k) ~ p, or raise SpaceMismatch."""
    p = as_coords(p)
    q = as_coords(q)
    dists = [np.linalg.norm(p - deck_rotate(space.m, q, k)) for k in range(space.m)]
    k = int(np.argmin(dists))
    if dists[k] > tol:
        raise SpaceMismatch("cone points are not deck-equivalent")
    return k


def slerp(a, b, t) -> np.ndarray:
    """Constant-speed great-circle interpolation on the unit sphere.

    Broadcasts over leading axes of a, b and over t.  Raises on
    antipodal endpoint pairs.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    t = np.asarray(t, dtype=float)
    dot = np.clip(np.sum(a * b, axis=-1), -1.0, 1.0)
    if np.any(dot <= -1.0 + ANTIPODAL_TOL):
        raise AntipodalPoints("slerp between (nearly) antipodal points")
    ang = np.arccos(dot)
    small = ang < 1e-12
    sin_ang = np.where(small, 1.0, np.sin(ang))
    wa = np.where(small, 1.0 - t, np.sin((1.0 - t) * ang) / sin_ang)
    wb = np.where(small, t, np.sin(t * ang) / sin_ang)
    out = wa[..., None] * a + wb[..., None] * b if np.ndim(wa) else wa * a + wb * b
    return sphere_normalize(out)


def geodesic(space: SpaceModel, a, b, t) -> np.ndarray:
    """Constant-speed minimal geodesic from a to b, t in [0, 1].

    Straight segment on euclidean and in the cone cover chart; great
    circle on the sphere (error on antipodal inputs).
    """
    a = validate_point(space, a)
    b = validate_point(space, b)
    t = np.asarray(t, dtype=float)
    if space.kind == "sphere2":
        return slerp(a, b, t)
    if t.ndim:
        return a + t[..., None] * (b - a)
    return a + t * (b - a)


def interpolate(space: SpaceModel, a, b, u) -> np.ndarray:
    """Pointwise interpolation rule used by homotopies (slerp or affine)."""
    if space.kind == "sphere2":
        return slerp(a, b, u)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    u = np.asarray(u, dtype=float)
    if u.ndim:
        return a + u[..., None] * (b - a)
    return a + u * (b - a)
