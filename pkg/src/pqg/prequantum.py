"""Period groups, phases, the path cocycle, and groupoid morphism algebra.

Orientation conventions used throughout (every formula below is stated
against them):

* ``cocycle_phi(gamma, gamma2)`` is the pairing over a fixed-ends
  homotopy whose row 0 is ``gamma`` and whose last row is ``gamma2``.
  In the exact case it equals integral(alpha, gamma) minus
  integral(alpha, gamma2).
* ``isotropy_phase(loop)`` is the pairing over a homotopy that starts at
  the loop and contracts it to a constant loop; in the exact case it
  equals the line integral of the primitive around the loop.  A
  counterclockwise latitude circle at polar angle theta, contracted to
  the north pole, has phase normalization * pi * (1 - cos(theta)).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    AntipodalPoints,
    ComposeMismatch,
    ContractionUnavailable,
    DegenerateGrid,
    EndsMismatch,
    GroupMismatch,
    NotALoop,
)
from .integrator import (
    DEFAULT_CFG,
    PathFamily,
    QuadratureConfig,
    endpoint_cell_form,
    strip_pairings,
    k_pairing,
    line_integral,
    sphere_sweep_integral,
)
from .paths import (
    SEAM_TOL,
    SampledHomotopy,
    SampledPath,
    concat,
    eval_path,
    linear_homotopy,
    resample,
)
from .spaces import (
    ANTIPODAL_TOL,
    SpaceModel,
    as_coords,
    deck_align,
    deck_rotate,
    geodesic,
    points_equal,
    validate_point,
)

# --------------------------------------------------------------------------
# period groups and phases
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodGroup:
    """Subgroup of the reals: {0}, a*Z, or a finitely generated dense group.

    For generated groups, reduction searches integer combinations with a
    bounded coefficient budget; "not reducible" always means "not within
    the bound at the requested tolerance".
    """

    variant: str  # "zero" | "cyclic" | "generated"
    a: float = 0.0
    generators: tuple = ()
    coefficient_bound: int = 10**6

    def __post_init__(self):
        if self.variant == "cyclic" and not self.a > 0:
            raise ValueError("cyclic group needs a > 0")
        if self.variant == "generated":
            gens = tuple(sorted(float(g) for g in self.generators))
            if len(gens) < 2 or any(g <= 0 for g in gens):
                raise ValueError("generated group needs >= 2 positive generators")
            object.__setattr__(self, "generators", gens)
            _warn_near_commensurable(gens)

    def reduce(self, value: float) -> float:
        """Deterministic canonical representative of value mod the group."""
        if self.variant == "zero":
            return float(value)
        if self.variant == "cyclic":
            return float(value) % self.a
        v, _ = _generated_reduce(float(value), self.generators, self.coefficient_bound)
        return v

    def distance(self, value: float) -> float:
        """Distance from value to the group under the bounded reduction."""
        if self.variant == "zero":
            return abs(float(value))
        if self.variant == "cyclic":
            r = float(value) % self.a
            return min(r, self.a - r)
        v, _ = _generated_reduce(float(value), self.generators, self.coefficient_bound)
        return abs(v)

    def contains(self, value: float, tol: float) -> bool:
        return self.distance(value) <= tol


def zero_group() -> PeriodGroup:
    return PeriodGroup("zero")


def cyclic_group(a: float) -> PeriodGroup:
    return PeriodGroup("cyclic", a=float(a))


def generated_group(*gens: float, coefficient_bound: int = 10**6) -> PeriodGroup:
    return PeriodGroup("generated", generators=tuple(gens),
                       coefficient_bound=coefficient_bound)


def _warn_near_commensurable(gens) -> None:
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            ratio = gens[i] / gens[j]
            fr = Fraction(ratio).limit_denominator(1000)
            if abs(ratio - float(fr)) < 1e-9:
                warnings.warn(
                    f"generators {gens[i]} and {gens[j]} are nearly "
                    f"commensurable (ratio ~ {fr}); the group is close to cyclic",
                    stacklevel=3,
                )


def _reduce_chain(v: float, a: float, b: float, bound: int):
    """Reduce v modulo integer combinations of a and b.

    The Euclidean remainder chain on (a, b) enumerates the
    continued-fraction step sizes |q*b - p*a| with growing coefficients;
    v is swept with nearest-integer multiples of each step from the
    largest down, while the coefficient budget lasts.  Returns (signed
    residue, smallest step used); members of the group with coefficients
    inside the budget reduce to ~0.
    """
    rems = [a, b % a]
    qs = [0, 1]
    while rems[-1] > 1e-15 * a and qs[-1] <= bound:
        k = int(rems[-2] // rems[-1])
        rems.append(rems[-2] - k * rems[-1])
        qs.append(k * qs[-1] + qs[-2])
    if rems[-1] <= 1e-15 * a or qs[-1] > bound:
        rems.pop()
    for r in rems:
        if r <= 0:
            break
        v = v - np.round(v / r) * r
    return v, rems[-1]


def _generated_reduce(v: float, gens, bound: int):
    """Fold v through the generator list pairwise; returns (signed
    residue, smallest step)."""
    grid = gens[0]
    for g in gens[1:]:
        v, grid = _reduce_chain(v, grid, g, bound)
    return v, grid


@dataclass(frozen=True)
class Phase:
    """An element of R modulo a period group.

    ``value`` keeps the raw real (useful for finite differencing across
    families); ``canonical`` is the reduced representative.
    """

    value: float
    group: PeriodGroup

    @property
    def raw(self) -> float:
        return self.value

    @property
    def canonical(self) -> float:
        return self.group.reduce(self.value)


def phase_add(p: Phase, q: Phase) -> Phase:
    if p.group != q.group:
        raise GroupMismatch("phases live in different period groups")
    return Phase(p.group.reduce(p.canonical + q.canonical), p.group)


def phase_neg(p: Phase) -> Phase:
    return Phase(p.group.reduce(-p.canonical), p.group)


def phase_eq(p: Phase, q: Phase, tol: float = 1e-9) -> bool:
    if p.group != q.group:
        raise GroupMismatch("phases live in different period groups")
    return p.group.contains(p.value - q.value, tol)


# --------------------------------------------------------------------------
# period detection
# --------------------------------------------------------------------------


def standard_period_group(space: SpaceModel) -> PeriodGroup:
    """The structural period group of each built-in space."""
    if space.kind == "sphere2":
        return cyclic_group(2.0 * np.pi * space.normalization)
    return zero_group()


def detect_periods(space: SpaceModel, resolution=(256, 512),
                   cfg: QuadratureConfig = DEFAULT_CFG,
                   pin_exact: bool = False) -> PeriodGroup:
    """Measure the period group.

    Exact spaces report the zero group.  The sphere reports the raw
    latitude-sweep estimate of the generator (no snapping) unless
    pin_exact requests the closed-form value.
    """
    if space.kind in ("euclidean", "cone"):
        return zero_group()
    if pin_exact:
        return cyclic_group(2.0 * np.pi * space.normalization)
    est = abs(sphere_sweep_integral(space.two_form(), resolution, cfg))
    return cyclic_group(est)


def period_generator_estimate(space: SpaceModel, resolution=(256, 512),
                              cfg: QuadratureConfig = DEFAULT_CFG):
    """Sphere generator estimate with a Richardson error bound."""
    if space.kind != "sphere2":
        return 0.0, 0.0
    S, T = resolution
    fine = abs(sphere_sweep_integral(space.two_form(), (S, T), cfg))
    half = abs(sphere_sweep_integral(space.two_form(), (max(S // 2, 2), max(T // 2, 2)), cfg))
    return fine, abs(fine - half) / 3.0


# --------------------------------------------------------------------------
# reference scheme and morphisms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ReferenceScheme:
    """Canonical path between two points, determined by endpoints alone.

    Straight segment on euclidean and the cone cover; shortest geodesic
    on the sphere (error on antipodes).
    """

    n_knots: int = 64  # intervals

    def __call__(self, space: SpaceModel, x, x2) -> SampledPath:
        x = validate_point(space, as_coords(x))
        x2 = validate_point(space, as_coords(x2))
        t = np.linspace(0.0, 1.0, self.n_knots + 1)
        if np.linalg.norm(x - x2) <= SEAM_TOL:
            pts = np.tile(x, (self.n_knots + 1, 1))
            return SampledPath(space, t, pts)
        if space.kind == "sphere2" and float(np.dot(x, x2)) <= -1.0 + ANTIPODAL_TOL:
            raise AntipodalPoints("no canonical geodesic between antipodes")
        return SampledPath(space, t, geodesic(space, x, x2, t))


@dataclass(frozen=True)
class Morphism:
    """A groupoid arrow in trivialized form: (src, phase, dst).

    ``trivialization`` records which chart the phase lives in:
    "reference" phases come from comparing against the reference-scheme
    path, "primitive" phases are line integrals of the space's
    primitive (exact case only).
    """

    space: SpaceModel
    src: tuple
    dst: tuple
    phase: Phase
    trivialization: str = "reference"

    def src_point(self) -> np.ndarray:
        return np.asarray(self.src, dtype=float)

    def dst_point(self) -> np.ndarray:
        return np.asarray(self.dst, dtype=float)


def _as_endpoint(space, p) -> tuple:
    return tuple(float(v) for v in validate_point(space, as_coords(p)))


# --------------------------------------------------------------------------
# the cocycle
# --------------------------------------------------------------------------


def cocycle_phi(space: SpaceModel, gamma: SampledPath, gamma2: SampledPath,
                sigma: SampledHomotopy | None = None,
                cfg: QuadratureConfig = DEFAULT_CFG,
                group: PeriodGroup | None = None,
                rows: int = 64) -> Phase:
    """Phase of gamma relative to gamma2 (same ends).

    Computed as the pairing over a fixed-ends homotopy from gamma to
    gamma2; the default homotopy is the pointwise affine/slerp one.
    Satisfies the additive relation
    phi(a, b) + phi(b, c) = phi(a, c) modulo the period group.
    """
    g0, g1 = gamma.ends()
    h0, h1 = gamma2.ends()
    if not (points_equal(space, g0, h0, SEAM_TOL) and points_equal(space, g1, h1, SEAM_TOL)):
        raise EndsMismatch("paths do not share endpoints")
    if sigma is None:
        sigma = linear_homotopy(gamma, gamma2, rows)
    else:
        s0, s1 = sigma.grid[0, 0], sigma.grid[0, -1]
        if not (points_equal(space, s0, g0, 1e-6) and points_equal(space, s1, g1, 1e-6)):
            raise EndsMismatch("supplied homotopy does not share the paths' ends")
    value = k_pairing(space.two_form(), sigma, cfg)
    return Phase(value, group or standard_period_group(space))


def class_of_path(space: SpaceModel, gamma: SampledPath,
                  scheme: ReferenceScheme = ReferenceScheme(),
                  cfg: QuadratureConfig = DEFAULT_CFG,
                  group: PeriodGroup | None = None,
                  rows: int = 64) -> Morphism:
    """Trivialized class of a path: phase relative to the reference path
    between its endpoints."""
    x, x2 = gamma.ends()
    ref = scheme(space, x, x2)
    ph = cocycle_phi(space, gamma, ref, cfg=cfg, group=group, rows=rows)
    return Morphism(space, _as_endpoint(space, x), _as_endpoint(space, x2), ph,
                    trivialization="reference")


def identity_morphism(space: SpaceModel, x, group: PeriodGroup | None = None,
                      trivialization: str = "reference") -> Morphism:
    g = group or standard_period_group(space)
    xe = _as_endpoint(space, x)
    return Morphism(space, xe, xe, Phase(0.0, g), trivialization)


def inverse(m: Morphism) -> Morphism:
    """Arrow reversal: swap ends and negate the phase.

    No extra correction is needed because both built-in reference
    schemes satisfy ref(x2, x) = reverse(ref(x, x2)).
    """
    return Morphism(m.space, m.dst, m.src, phase_neg(m.phase), m.trivialization)


def trivialization_correction(space: SpaceModel, x, x2, x3,
                              scheme: ReferenceScheme = ReferenceScheme(),
                              cfg: QuadratureConfig = DEFAULT_CFG,
                              group: PeriodGroup | None = None,
                              rows: int = 64) -> Phase:
    """Correction cocycle c(x, x2, x3): phase of the two-leg reference
    path through x2 relative to the direct reference path.

    On the sphere this is the enclosed geodesic-triangle area times the
    normalization; it vanishes whenever the three reference paths
    factor through one geodesic.
    """
    two_leg = concat(scheme(space, x, x2), scheme(space, x2, x3))
    direct = scheme(space, x, x3)
    return cocycle_phi(space, two_leg, direct, cfg=cfg, group=group, rows=rows)


def compose(m: Morphism, m2: Morphism,
            scheme: ReferenceScheme = ReferenceScheme(),
            cfg: QuadratureConfig = DEFAULT_CFG,
            rows: int = 64) -> Morphism:
    """Groupoid composition in trivialized coordinates.

    Reference trivialization adds the phases plus the correction
    cocycle of the endpoint triple; primitive trivialization is exactly
    additive.
    """
    if m.space != m2.space:
        raise ComposeMismatch("morphisms live on different spaces")
    if m.phase.group != m2.phase.group:
        raise ComposeMismatch("morphisms carry different period groups")
    if m.trivialization != m2.trivialization:
        raise ComposeMismatch("cannot mix trivializations")
    space = m.space
    dst = m.dst_point()
    src2 = m2.src_point()
    m2_src, m2_dst = src2, m2.dst_point()
    if space.kind == "cone":
        try:
            k = deck_align(space, dst, src2, SEAM_TOL)
        except Exception as exc:
            raise ComposeMismatch(str(exc)) from exc
        m2_src = deck_rotate(space.m, src2, k)
        m2_dst = deck_rotate(space.m, m2.dst_point(), k)
    elif not points_equal(space, dst, src2, SEAM_TOL):
        raise ComposeMismatch("dst of the first != src of the second")
    if m.trivialization == "primitive":
        ph = Phase(m.phase.value + m2.phase.value, m.phase.group)
        return Morphism(space, m.src, tuple(float(v) for v in m2_dst), ph, "primitive")
    corr = trivialization_correction(space, m.src_point(), dst, m2_dst,
                                     scheme, cfg, m.phase.group, rows)
    ph = phase_add(phase_add(m.phase, m2.phase), corr)
    return Morphism(space, m.src, tuple(float(v) for v in m2_dst), ph, "reference")


# --------------------------------------------------------------------------
# isotropy
# --------------------------------------------------------------------------


def _is_loop(space: SpaceModel, gamma: SampledPath, tol: float = SEAM_TOL) -> bool:
    a, b = gamma.ends()
    return points_equal(space, a, b, tol)


def default_contraction(space: SpaceModel, loop: SampledPath, n_rows: int = 64) -> SampledHomotopy:
    """Contraction of a loop to a constant loop (row 0 is the loop).

    Sphere and euclidean contract along geodesics toward the basepoint;
    the cone scales radially toward the origin, which is the only
    default that keeps every intermediate row closed modulo deck
    rotations.
    """
    T = loop.knot_count - 1
    t = np.linspace(0.0, 1.0, T + 1)
    pts = eval_path(loop, t)
    u = 1.0 - np.linspace(0.0, 1.0, n_rows + 1)
    if space.kind == "cone":
        grid = u[:, None, None] * pts[None]
        return SampledHomotopy(space, grid, fixed_ends=False)
    base = pts[0]
    if space.kind == "sphere2":
        dots = pts @ base
        if np.any(dots <= -1.0 + ANTIPODAL_TOL):
            raise ContractionUnavailable(
                "geodesic contraction to the basepoint hits antipodes; "
                "supply an explicit contraction homotopy")
    base_tiled = np.tile(base, (T + 1, 1))
    grid = np.stack([geodesic(space, base_tiled, pts, ui) for ui in u])
    return SampledHomotopy(space, grid, fixed_ends=False)


def isotropy_phase(space: SpaceModel, loop: SampledPath,
                   sigma: SampledHomotopy | None = None,
                   cfg: QuadratureConfig = DEFAULT_CFG,
                   group: PeriodGroup | None = None,
                   rows: int = 64) -> Phase:
    """Phase of a loop: pairing over a contraction from the loop down to
    a constant loop, modulo the period group."""
    if not _is_loop(space, loop):
        raise NotALoop("path does not close up")
    if sigma is None:
        sigma = default_contraction(space, loop, rows)
    else:
        last = sigma.grid[-1]
        if not np.allclose(last, last[0], atol=1e-7):
            raise ContractionUnavailable("last homotopy row is not a constant loop")
    value = k_pairing(space.two_form(), sigma, cfg)
    return Phase(value, group or standard_period_group(space))


def latitude_loop(space: SpaceModel, theta: float, n_knots: int = 128) -> SampledPath:
    """Latitude circle at polar angle theta, counterclockwise seen from
    the north pole."""
    t = np.linspace(0.0, 1.0, n_knots + 1)
    phi = 2.0 * np.pi * t
    st, ct = np.sin(theta), np.cos(theta)
    pts = np.stack([st * np.cos(phi), st * np.sin(phi), np.full_like(phi, ct)], axis=-1)
    return SampledPath(space, t, pts)


def cap_contraction(space: SpaceModel, theta: float, n_rows: int = 64,
                    n_knots: int = 128) -> SampledHomotopy:
    """Contract the latitude loop at polar angle theta to the north pole
    through shrinking latitude circles (row 0 is the loop)."""
    t = np.linspace(0.0, 1.0, n_knots + 1)
    phi = 2.0 * np.pi * t
    th = theta * (1.0 - np.linspace(0.0, 1.0, n_rows + 1))
    st, ct = np.sin(th), np.cos(th)
    grid = np.empty((n_rows + 1, n_knots + 1, 3))
    grid[..., 0] = st[:, None] * np.cos(phi)[None, :]
    grid[..., 1] = st[:, None] * np.sin(phi)[None, :]
    grid[..., 2] = ct[:, None] * np.ones_like(phi)[None, :]
    return SampledHomotopy(space, grid, fixed_ends=False)


def cap_contraction_for(space: SpaceModel, loop: SampledPath, n_rows: int = 64) -> SampledHomotopy:
    """Cap contraction matched to a latitude loop built by latitude_loop."""
    z = float(np.mean(loop.points[:, 2]))
    theta = float(np.arccos(np.clip(z, -1.0, 1.0)))
    return cap_contraction(space, theta, n_rows, loop.knot_count - 1)


def isotropy_surjectivity_witness(space: SpaceModel, target, tol: float = 1e-6,
                                  cfg: QuadratureConfig = DEFAULT_CFG,
                                  n_rows: int = 64, n_knots: int = 128) -> SampledPath:
    """Latitude loop whose measured phase matches the target.

    Monotone bisection on the polar angle against the same quadrature
    kernel that isotropy_phase uses, so the returned loop reproduces the
    target at the caller's configuration.
    """
    if space.kind != "sphere2":
        raise ContractionUnavailable("witness construction is a sphere operation")
    group = standard_period_group(space)
    tval = target.canonical if isinstance(target, Phase) else group.reduce(float(target))

    def measured(theta: float) -> float:
        sig = cap_contraction(space, theta, n_rows, n_knots)
        return k_pairing(space.two_form(), sig, cfg)

    lo, hi = 1e-6, np.pi - 1e-6
    f_lo, f_hi = measured(lo), measured(hi)
    if tval <= f_lo:
        return latitude_loop(space, lo, n_knots)
    if tval >= f_hi:
        return latitude_loop(space, hi, n_knots)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-14:
            break
        if measured(mid) < tval:
            lo = mid
        else:
            hi = mid
    return latitude_loop(space, 0.5 * (lo + hi), n_knots)


# --------------------------------------------------------------------------
# the exact case
# --------------------------------------------------------------------------


def exact_morphism(space: SpaceModel, gamma: SampledPath,
                   cfg: QuadratureConfig = DEFAULT_CFG) -> Morphism:
    """Primitive-trivialized class: phase is the line integral of the
    space's primitive along the path; composition is exactly additive."""
    alpha = space.primitive()  # raises NoPrimitive on the sphere
    value = line_integral(alpha, gamma, cfg)
    x, x2 = gamma.ends()
    return Morphism(space, _as_endpoint(space, x), _as_endpoint(space, x2),
                    Phase(value, zero_group()), trivialization="primitive")


def exact_lambda_eval(space: SpaceModel, plot, s: float, ds: float = 1e-5) -> float:
    """Value of the exact-case connection form on a one-parameter plot.

    ``plot(s)`` returns (x, t, x2): two points of the space and a real.
    The form is alpha at the third component minus d/ds of the middle
    real minus alpha at the first component, with central differences.
    """
    alpha = space.primitive()
    xm, tm, x2m = plot(s - ds)
    xp, tp, x2p = plot(s + ds)
    x0, _, x20 = plot(s)
    dx = (as_coords(xp) - as_coords(xm)) / (2.0 * ds)
    dx2 = (as_coords(x2p) - as_coords(x2m)) / (2.0 * ds)
    dt = (tp - tm) / (2.0 * ds)
    return float(alpha(as_coords(x20), dx2) - dt - alpha(as_coords(x0), dx))


# --------------------------------------------------------------------------
# curvature of the trivialized phase
# --------------------------------------------------------------------------


def curvature_check(space: SpaceModel, scheme: ReferenceScheme, family: PathFamily,
                    cfg: QuadratureConfig = DEFAULT_CFG,
                    rows: int = 32) -> float:
    """Discrete curvature identity at the morphism level.

    Every family member is classified; the connection edge values are
    reconstructed as (reference strip pairing) minus (difference of raw
    phases), and their plaquette circulation is compared with the
    two-form at the member endpoints minus the same at the starts.
    Returns the maximum plaquette error normalized by plaquette area and
    by max(1, |endpoint term|).
    """
    U, V = family.values.shape[0], family.values.shape[1]
    if U < 3 or V < 3:
        raise DegenerateGrid("need at least a 3 x 3 family grid")
    T = family.values.shape[2] - 1
    t_grid = np.linspace(0.0, 1.0, T + 1)

    tau = np.empty((U, V))
    ref_pts = np.empty_like(family.values)
    for i in range(U):
        for j in range(V):
            path = SampledPath(space, t_grid, family.values[i, j].copy())
            ref = resample(scheme(space, path.start(), path.end()), T)
            ref_pts[i, j] = ref.points
            tau[i, j] = cocycle_phi(space, path, ref, cfg=cfg, rows=rows).raw

    omega = space.two_form()
    r_u = strip_pairings(omega, space, ref_pts, axis=0)       # (U-1, V)
    r_v = strip_pairings(omega, space, ref_pts, axis=1).T     # (U, V-1)
    e_u = r_u - (tau[1:, :] - tau[:-1, :])
    e_v = r_v - (tau[:, 1:] - tau[:, :-1])
    circ = e_u[:, :-1] + e_v[1:, :] - e_u[:, 1:] - e_v[:-1, :]
    rhs = (endpoint_cell_form(omega, space, family.values[:, :, -1, :])
           - endpoint_cell_form(omega, space, family.values[:, :, 0, :]))
    area = family.h_u * family.h_v
    scale = max(1.0, float(np.max(np.abs(rhs))) / area)
    return float(np.max(np.abs(circ - rhs)) / (area * scale))
