"""Closed-form and brute-force reference values.

These are the independent formulas the test suite and the fixture
regeneration command check the quadrature kernels against.  Nothing in
this module calls the kernels.
"""

from __future__ import annotations

import numpy as np


def shoelace_area(points) -> float:
    """Signed area of a closed planar polygon (last vertex may repeat
    the first)."""
    p = np.asarray(points, dtype=float)
    if np.allclose(p[0], p[-1]):
        p = p[:-1]
    x, y = p[:, 0], p[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_fan_area(points) -> float:
    """Signed area of the triangle fan from the origin over an open
    polyline (the exact swept area of its radial contraction)."""
    p = np.asarray(points, dtype=float)
    cross = p[:-1, 0] * p[1:, 1] - p[:-1, 1] * p[1:, 0]
    return 0.5 * float(np.sum(cross))


def sector_area(radius: float, angle: float) -> float:
    return 0.5 * radius * radius * angle


def spherical_cap_area(theta: float) -> float:
    """Area of the polar cap down to polar angle theta."""
    return 2.0 * np.pi * (1.0 - np.cos(theta))


def lune_area(dihedral: float) -> float:
    return 2.0 * dihedral


def spherical_triangle_area(a, b, c) -> float:
    """Spherical excess of the geodesic triangle with unit-vector
    vertices, via the angle sum (Girard)."""
    def corner(p, q, r):
        tq = q - np.dot(q, p) * p
        tr = r - np.dot(r, p) * p
        cosang = np.dot(tq, tr) / (np.linalg.norm(tq) * np.linalg.norm(tr))
        return np.arccos(np.clip(cosang, -1.0, 1.0))

    a = np.asarray(a, float); b = np.asarray(b, float); c = np.asarray(c, float)
    return float(corner(a, b, c) + corner(b, c, a) + corner(c, a, b) - np.pi)


def slerp_by_rotation(a, b, t: float) -> np.ndarray:
    """Great-circle interpolation via an explicit rotation matrix, as an
    independent check on the direct slerp formula."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    axis = np.cross(a, b)
    norm = np.linalg.norm(axis)
    ang = np.arctan2(norm, np.dot(a, b))
    if norm < 1e-15:
        return a.copy()
    u = axis / norm
    K = np.array([[0, -u[2], u[1]], [u[2], 0, -u[0]], [-u[1], u[0], 0]])
    R = np.eye(3) + np.sin(t * ang) * K + (1 - np.cos(t * ang)) * (K @ K)
    return R @ a


def gram_schmidt_tangent(p, w) -> np.ndarray:
    """Tangent projection by explicit orthonormal completion."""
    p = np.asarray(p, float)
    w = np.asarray(w, float)
    basis = []
    for e in np.eye(len(p)):
        v = e - np.dot(e, p) * p
        for u in basis:
            v = v - np.dot(v, u) * u
        if np.linalg.norm(v) > 1e-9:
            basis.append(v / np.linalg.norm(v))
    return sum(np.dot(w, u) * u for u in basis)


def brute_force_group_distance(value: float, generators, bound: int) -> float:
    """Exhaustive min |value - n1 g1 - n2 g2| over |n2| <= bound with the
    optimal n1 chosen per candidate (two-generator groups only)."""
    g1, g2 = generators
    n2 = np.arange(-bound, bound + 1)
    rem = value - n2 * g2
    n1 = np.round(rem / g1)
    return float(np.min(np.abs(rem - n1 * g1)))


def finite_difference_two_form_of_primitive(alpha, p, u, v, h: float = 1e-4) -> float:
    """d(alpha) evaluated at p on (u, v) by central differences:
    D_u[alpha(.)(v)] - D_v[alpha(.)(u)]."""
    p = np.asarray(p, float)
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    a_v_plus = alpha(p + h * u, v)
    a_v_minus = alpha(p - h * u, v)
    a_u_plus = alpha(p + h * v, u)
    a_u_minus = alpha(p - h * v, u)
    return float((a_v_plus - a_v_minus) / (2 * h) - (a_u_plus - a_u_minus) / (2 * h))


def least_squares_order(step_sizes, errors) -> float:
    h = np.log(np.asarray(step_sizes, float))
    e = np.log(np.maximum(np.abs(np.asarray(errors, float)), 1e-300))
    return float(np.polyfit(h, e, 1)[0])
