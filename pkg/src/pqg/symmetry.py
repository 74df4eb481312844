"""Finite-dimensional symmetry actions, invariance checks, moment maps.

Diffeos are rotations of the sphere, symplectic affine maps of the
plane spaces, and deck rotations of the cone.  Moment values are
pairings of the two-form against explicit generator fields:

    paths_moment(gamma, xi) = integral of omega(xi(gamma(t)), dgamma/dt)

with the generator in the first slot, so that for a Hamiltonian field
the value telescopes to H(end) - H(start).  For the z-axis rotation
field on the sphere this gives (z' - z)/2 at normalization 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpaceMismatch
from .integrator import DEFAULT_CFG, QuadratureConfig, pairwise_sum
from .paths import SampledHomotopy, SampledPath, eval_path
from .prequantum import ReferenceScheme, cocycle_phi
from .spaces import SpaceModel, as_coords, check_same_space, deck_rotate, interpolate


def _standard_j(n: int) -> np.ndarray:
    """Block-diagonal symplectic matrix for coordinates (x1, y1, ...)."""
    J = np.zeros((2 * n, 2 * n))
    for i in range(n):
        J[2 * i, 2 * i + 1] = 1.0
        J[2 * i + 1, 2 * i] = -1.0
    return J


@dataclass(frozen=True)
class Diffeo:
    """A structure-preserving map of one of the built-in spaces.

    variant "rotation3": orthogonal R with det 1 acting on the sphere;
    variant "symplectic_affine": p -> S p + b with S^T J S = J;
    variant "deck": the k-th deck rotation of the cone.
    Validation can be disabled to build negative controls.
    """

    space: SpaceModel
    variant: str
    matrix: tuple = ()
    offset: tuple = ()
    power: int = 0

    @staticmethod
    def rotation3(space: SpaceModel, R, check: bool = True) -> "Diffeo":
        R = np.asarray(R, dtype=float)
        if check:
            if space.kind != "sphere2":
                raise SpaceMismatch("rotation3 acts on the sphere")
            if not np.allclose(R.T @ R, np.eye(3), atol=1e-10) or abs(np.linalg.det(R) - 1) > 1e-10:
                raise ValueError("matrix is not a rotation")
        return Diffeo(space, "rotation3", matrix=tuple(map(tuple, R)))

    @staticmethod
    def symplectic_affine(space: SpaceModel, S, b=None, check: bool = True) -> "Diffeo":
        S = np.asarray(S, dtype=float)
        n = S.shape[0] // 2
        b = np.zeros(2 * n) if b is None else np.asarray(b, dtype=float)
        if check:
            if space.kind != "euclidean":
                raise SpaceMismatch("symplectic affine maps act on euclidean space")
            J = _standard_j(n)
            if not np.allclose(S.T @ J @ S, J, atol=1e-10):
                raise ValueError("matrix is not symplectic")
        return Diffeo(space, "symplectic_affine", matrix=tuple(map(tuple, S)),
                      offset=tuple(b))

    @staticmethod
    def deck(space: SpaceModel, k: int) -> "Diffeo":
        if space.kind != "cone":
            raise SpaceMismatch("deck rotations act on the cone")
        return Diffeo(space, "deck", power=int(k) % space.m)

    def linear_part(self) -> np.ndarray:
        if self.variant == "deck":
            a = 2.0 * np.pi * self.power / self.space.m
            c, s = np.cos(a), np.sin(a)
            return np.array([[c, -s], [s, c]])
        return np.asarray(self.matrix, dtype=float)

    def apply(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if self.variant == "deck":
            return deck_rotate(self.space.m, p, self.power)
        M = self.linear_part()
        out = p @ M.T
        if self.variant == "symplectic_affine":
            out = out + np.asarray(self.offset)
        return out

    def push_tangent(self, w) -> np.ndarray:
        return np.asarray(w, dtype=float) @ self.linear_part().T


def act_point(g: Diffeo, p) -> np.ndarray:
    return g.apply(as_coords(p))


def act_path(g: Diffeo, gamma: SampledPath) -> SampledPath:
    check_same_space(g.space, gamma.space)
    return SampledPath(gamma.space, gamma.times, g.apply(gamma.points))


def act_homotopy(g: Diffeo, sigma: SampledHomotopy) -> SampledHomotopy:
    check_same_space(g.space, sigma.space)
    return SampledHomotopy(sigma.space, g.apply(sigma.grid),
                           fixed_ends=sigma.fixed_ends)


def rotation_from_axis_angle(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix about a unit axis."""
    u = np.asarray(axis, dtype=float)
    u = u / np.linalg.norm(u)
    K = np.array([[0, -u[2], u[1]], [u[2], 0, -u[0]], [-u[1], u[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * (K @ K)


def random_rotation(rng) -> np.ndarray:
    axis = rng.normal(size=3)
    return rotation_from_axis_angle(axis, rng.uniform(0, 2 * np.pi))


def random_symplectic_affine(rng, n: int = 1, spread: float = 0.8):
    """Random element of SL(2)^n-style block symplectic maps plus a shift."""
    blocks = []
    for _ in range(n):
        a = rng.uniform(0.5, 1.5) * rng.choice([-1.0, 1.0])
        b = rng.uniform(-spread, spread)
        c = rng.uniform(-spread, spread)
        d = (1.0 + b * c) / a
        blocks.append(np.array([[a, b], [c, d]]))
    S = np.zeros((2 * n, 2 * n))
    for i, B in enumerate(blocks):
        S[2 * i:2 * i + 2, 2 * i:2 * i + 2] = B
    shift = rng.uniform(-1.0, 1.0, size=2 * n)
    return S, shift


@dataclass(frozen=True)
class LieGenerator:
    """A one-parameter symmetry generator field.

    variant "rotation": xi(p) = axis x p on the sphere;
    variant "hamiltonian": xi = J grad H on euclidean space, H affine or
    quadratic with stored coefficients H(p) = const + g.p + p.Q p / 2.
    """

    space: SpaceModel
    variant: str
    axis: tuple = ()
    lin: tuple = ()
    quad: tuple = ()

    @staticmethod
    def rotation(space: SpaceModel, axis) -> "LieGenerator":
        if space.kind != "sphere2":
            raise SpaceMismatch("rotation generators act on the sphere")
        u = np.asarray(axis, dtype=float)
        u = u / np.linalg.norm(u)
        return LieGenerator(space, "rotation", axis=tuple(u))

    @staticmethod
    def hamiltonian(space: SpaceModel, lin=None, quad=None) -> "LieGenerator":
        if space.kind != "euclidean":
            raise SpaceMismatch("hamiltonian generators act on euclidean space")
        d = space.dim
        g = np.zeros(d) if lin is None else np.asarray(lin, dtype=float)
        Q = np.zeros((d, d)) if quad is None else np.asarray(quad, dtype=float)
        return LieGenerator(space, "hamiltonian", lin=tuple(g),
                            quad=tuple(map(tuple, Q)))

    def field(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if self.variant == "rotation":
            return np.cross(np.asarray(self.axis), p)
        grad = np.asarray(self.lin) + p @ np.asarray(self.quad).T
        J = _standard_j(self.space.dim // 2)
        # xi = J grad H, so that omega(xi, .) = dH
        return grad @ (-J)

    def hamiltonian_value(self, p) -> np.ndarray:
        """H(p) for hamiltonian generators; z/2-style height for rotations."""
        p = np.asarray(p, dtype=float)
        if self.variant == "rotation":
            return 0.5 * self.space.normalization * (p @ np.asarray(self.axis))
        g = np.asarray(self.lin)
        Q = np.asarray(self.quad)
        return self.space.normalization * (p @ g + 0.5 * np.sum((p @ Q.T) * p, axis=-1))


@dataclass(frozen=True)
class MomentValue:
    """Pairings of one morphism/path against a tuple of generators."""

    coefficients: tuple

    def __post_init__(self):
        if not all(np.isfinite(self.coefficients)):
            raise ValueError("non-finite moment coefficients")


def omega_invariance_residual(g: Diffeo, n_samples: int = 1000, seed: int = 0) -> float:
    """Max |omega_{g(p)}(dg u, dg v) - omega_p(u, v)| over random triples."""
    space = g.space
    rng = np.random.default_rng(seed)
    d = space.dim
    if space.kind == "sphere2":
        p = rng.normal(size=(n_samples, 3))
        p /= np.linalg.norm(p, axis=1, keepdims=True)
    else:
        p = rng.uniform(-2, 2, size=(n_samples, d))
    u = rng.normal(size=(n_samples, d))
    v = rng.normal(size=(n_samples, d))
    omega = space.two_form()
    before = omega(p, u, v)
    after = omega(g.apply(p), g.push_tangent(u), g.push_tangent(v))
    return float(np.max(np.abs(after - before)))


def cocycle_invariance_residual(space: SpaceModel, g: Diffeo,
                                gamma: SampledPath, gamma2: SampledPath,
                                cfg: QuadratureConfig = DEFAULT_CFG,
                                rows: int = 64) -> float:
    """|phi(g gamma, g gamma2) - phi(gamma, gamma2)| reduced mod periods."""
    ph = cocycle_phi(space, gamma, gamma2, cfg=cfg, rows=rows)
    ph_g = cocycle_phi(space, act_path(g, gamma), act_path(g, gamma2), cfg=cfg, rows=rows)
    return ph.group.distance(ph_g.value - ph.value)


def _segment_samples(gamma: SampledPath, refine: int):
    t = gamma.times
    if refine > 1:
        steps = np.arange(refine) / refine
        t = np.append((t[:-1, None] + np.diff(t)[:, None] * steps).ravel(), 1.0)
    pts = eval_path(gamma, t)
    mid = interpolate(gamma.space, pts[:-1], pts[1:], 0.5)
    return mid, pts[1:] - pts[:-1]


def paths_moment(space: SpaceModel, gamma: SampledPath, xi: LieGenerator,
                 cfg: QuadratureConfig = DEFAULT_CFG) -> float:
    """Pairing of the path with a generator: integral of
    omega(xi(gamma(t)), dgamma/dt) by the midpoint kernel."""
    check_same_space(space, gamma.space)
    check_same_space(space, xi.space)
    mid, delta = _segment_samples(gamma, cfg.refine)
    vals = space.two_form()(mid, xi.field(mid), delta)
    return pairwise_sum(vals)


def two_point_moment(space: SpaceModel, x, x2, xi: LieGenerator,
                     cfg: QuadratureConfig = DEFAULT_CFG,
                     scheme: ReferenceScheme = ReferenceScheme()) -> float:
    """Moment pairing between two points along the reference path.

    Path-independence (the vanishing of the universal holonomy) is a
    tested property, not an assumption.
    """
    ref = scheme(space, x, x2)
    return paths_moment(space, ref, xi, cfg)


def moment_additivity_residual(space: SpaceModel, gamma: SampledPath,
                               gamma2: SampledPath, xi: LieGenerator,
                               cfg: QuadratureConfig = DEFAULT_CFG) -> float:
    from .paths import concat

    both = concat(gamma, gamma2)
    return abs(paths_moment(space, both, xi, cfg)
               - paths_moment(space, gamma, xi, cfg)
               - paths_moment(space, gamma2, xi, cfg))


def one_point_moment(space: SpaceModel, x, xi: LieGenerator, basepoint,
                     cfg: QuadratureConfig = DEFAULT_CFG,
                     scheme: ReferenceScheme = ReferenceScheme()) -> float:
    """Primitive of the two-point moment, fixed by the basepoint choice."""
    return two_point_moment(space, basepoint, x, xi, cfg, scheme)


def moment_vector(space: SpaceModel, gamma: SampledPath, generators,
                  cfg: QuadratureConfig = DEFAULT_CFG) -> MomentValue:
    coeffs = tuple(paths_moment(space, gamma, xi, cfg) for xi in generators)
    return MomentValue(coeffs)
