"""Reference numpy implementations of the numeric kernels.

These are the hot evaluators: closed-form section curves of the tilted
cylinder and double cone, 3D radial/support closed forms, and cap-sum
profiles for bumpy spheres.  The compiled backend in ``_fast`` mirrors the
same signatures; either backend may be active at runtime.

Angle convention for section curves: the formulas are written in terms of
sin^2(u) and |cos(u)|, which makes them automatically even in u and
symmetric under u -> pi - u, matching the mirror symmetries of the bodies.
"""

import math

import numpy as np

BACKEND = "python"

_TINY = 1e-14


def cone_section_radial(theta, u):
    """Radial curve of the section of the double cone (base 1, apex 1).

    The cutting plane is tilted by ``theta`` in [0, pi/2] away from the
    equatorial plane; ``u`` is the in-plane polar angle measured from the
    tilt direction.
    """
    u = np.asarray(u, dtype=float)
    cu = np.abs(np.cos(u))
    su2 = np.sin(u) ** 2
    st = math.sin(theta)
    ct2 = math.cos(theta) ** 2
    return 1.0 / (st * cu + np.sqrt(su2 + ct2 * cu * cu))


def cylinder_section_radial(r, theta, u):
    """Radial curve of the section of the cylinder (radius r, halfheight r).

    For tilts up to pi/4 the section is an ellipse.  Beyond pi/4 the plane
    leaves through the caps and the curve flattens: it follows r/(sin(theta)
    |cos u|) out to the corner angle and the ellipse arc after it.
    """
    u = np.asarray(u, dtype=float)
    cu2 = np.cos(u) ** 2
    su2 = np.sin(u) ** 2
    st = math.sin(theta)
    ct2 = math.cos(theta) ** 2
    ell = r / np.sqrt(su2 + ct2 * cu2)
    flat_gap = st * st - ct2
    if flat_gap <= 0.0:
        return ell
    flat = r / np.maximum(st * np.sqrt(cu2), _TINY)
    return np.where(su2 <= flat_gap * cu2, flat, ell)


def cylinder_radial(r, hh, dirs):
    """Radial function of an upright cylinder at unit directions ``dirs``."""
    dirs = np.asarray(dirs, dtype=float)
    s = np.hypot(dirs[..., 0], dirs[..., 1])
    az = np.abs(dirs[..., 2])
    side = np.where(s > _TINY, r / np.maximum(s, _TINY), np.inf)
    cap = np.where(az > _TINY, hh / np.maximum(az, _TINY), np.inf)
    return np.minimum(side, cap)


def double_cone_radial(a, c, dirs):
    """Radial function of the double cone with base radius a, apex height c."""
    dirs = np.asarray(dirs, dtype=float)
    s = np.hypot(dirs[..., 0], dirs[..., 1])
    az = np.abs(dirs[..., 2])
    return 1.0 / (s / a + az / c)


def cylinder_support(r, hh, dirs):
    dirs = np.asarray(dirs, dtype=float)
    return r * np.hypot(dirs[..., 0], dirs[..., 1]) + hh * np.abs(dirs[..., 2])


def double_cone_support(a, c, dirs):
    dirs = np.asarray(dirs, dtype=float)
    return np.maximum(a * np.hypot(dirs[..., 0], dirs[..., 1]), c * np.abs(dirs[..., 2]))


def cap_profile(x):
    """C^2 cap profile (1 - x^2)^3 on [0, 1], zero beyond."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    return (1.0 - x * x) ** 3


def bump_sum(dirs, centers, radii, heights):
    """Sum of spherical cap bumps evaluated at unit directions.

    ``centers`` is (B, n) with unit rows; each bump contributes
    ``height * cap_profile(geodesic_distance / radius)``.  Only directions
    inside a cap pay for the arccos.
    """
    dirs = np.asarray(dirs, dtype=float)
    flat = dirs.reshape(-1, dirs.shape[-1])
    out = np.zeros(flat.shape[0])
    for b in range(centers.shape[0]):
        dots = flat @ centers[b]
        mask = dots > math.cos(radii[b])
        if np.any(mask):
            d = np.arccos(np.clip(dots[mask], -1.0, 1.0))
            out[mask] += heights[b] * cap_profile(d / radii[b])
    return out.reshape(dirs.shape[:-1])


def ring_sum(dirs, height, halfwidth):
    """Equatorial ridge: cap profile in the latitude distance to the equator."""
    dirs = np.asarray(dirs, dtype=float)
    if height == 0.0:
        return np.zeros(dirs.shape[:-1])
    lat = np.arcsin(np.clip(np.abs(dirs[..., -1]), 0.0, 1.0))
    return height * cap_profile(lat / halfwidth)
