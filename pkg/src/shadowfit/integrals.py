"""Spherical integration: volumes, surface area, and volume-comparison reports.

Volumes come from the radial oracle, vol = (1/n) * integral of rho^n over
the unit sphere.  Catalog bodies with equatorial creases (cylinder, double
cone and their polars) are integrated on product grids whose Gauss-Legendre
panels split exactly at the crease latitudes, which restores spectral
accuracy.  On top of the quadrature sit the report builders that first
check a shadow-fitting hypothesis (every section, or every projection, of
one body fits rotated inside the other's) and then evaluate the volume
comparison that the hypothesis does or does not force.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._par import ordered_map
from ._report import csv_text, kv_text
from .bodies import (
    Ball,
    BumpSphere,
    Cylinder,
    DilatedBody,
    DoubleCone,
    PolarOf,
    RotatedBody,
    convex_body,
    spec_dim,
    star_body,
    support,
)
from .errors import DomainError, HypothesisFailed, UnsupportedDimension
from .fitting import FitConfig, best_rotation_fit
from .geom import frame_for, sphere_grid
from .shadows import projection_shadow, section_shadow, shadow_area


def kink_cosines(spec, oracle="radial"):
    """Polar cosines where the named oracle of a catalog body has creases.

    Quadrature panels are split at these latitudes so each panel sees an
    analytic integrand.  Returns a tuple (possibly empty), or None when the
    crease locations are unknown, for example after a rotation that moves
    them off latitude circles.
    """
    if oracle not in ("radial", "support"):
        raise DomainError("oracle must be 'radial' or 'support'")
    if isinstance(spec, Ball):
        return ()
    if isinstance(spec, Cylinder):
        if oracle == "radial":
            c = spec.halfheight / math.hypot(spec.radius, spec.halfheight)
            return (-c, c)
        return (0.0,)
    if isinstance(spec, DoubleCone):
        if oracle == "radial":
            return (0.0,)
        c = spec.base_radius / math.hypot(spec.base_radius, spec.apex_height)
        return (-c, c)
    if isinstance(spec, BumpSphere):
        return ()  # the cap profile joins the sphere with two flat derivatives
    if isinstance(spec, PolarOf):
        other = "support" if oracle == "radial" else "radial"
        return kink_cosines(spec.inner, other)
    if isinstance(spec, DilatedBody):
        return kink_cosines(spec.inner, oracle)
    if isinstance(spec, RotatedBody):
        inner = kink_cosines(spec.inner, oracle)
        if not inner:
            return inner
        image = spec.rotation.matrix @ np.array([0.0, 0.0, 1.0])
        if abs(image[0]) < 1e-12 and abs(image[1]) < 1e-12:
            if image[2] > 0.0:
                return inner
            return tuple(sorted(-c for c in inner))
        return None
    return None


def volume_grid(spec, resolution=48, oracle="radial"):
    """Product grid for ``spec`` with panels split at the oracle's creases."""
    if spec_dim(spec) != 3:
        raise UnsupportedDimension("split product grids are 3D only")
    cuts = kink_cosines(spec, oracle)
    return sphere_grid(3, resolution=resolution, split_cos=cuts or ())


def volume(body, grid):
    """Volume of a star body: (1/n) times the weighted sum of rho^n."""
    if hasattr(body, "rho"):
        dim, rho = body.dim, body.rho
    else:
        dim, rho = spec_dim(body), star_body(body).rho
    if grid.dim != dim:
        raise DomainError(
            "grid dimension %d does not match body dimension %d" % (grid.dim, dim)
        )
    vals = np.asarray(rho(grid.nodes), dtype=float)
    return float(np.dot(grid.weights, vals**dim)) / dim


def surface_area_cauchy(body, dir_grid, shadow_resolution=2048):
    """Surface area of a 3D convex body from its projections.

    The surface area equals (1/pi) times the average projected area, here
    the weighted sum of projection shadow areas over the direction grid.
    Accuracy is limited by the shadow polygonization, roughly
    7/shadow_resolution^2 in relative terms.
    """
    if not hasattr(body, "h"):
        body = convex_body(body)
    if body.dim != 3 or dir_grid.dim != 3:
        raise UnsupportedDimension("the projection formula is implemented for n = 3")

    def area_at(i):
        frame = frame_for(dir_grid.nodes[i])
        return shadow_area(projection_shadow(body, frame), shadow_resolution)

    areas = ordered_map(area_at, range(len(dir_grid)))
    return float(np.dot(dir_grid.weights, np.asarray(areas))) / math.pi


def mean_support(body, grid):
    """Integral of the support function against the grid weights.

    Dividing by the sphere area 4 pi gives the mean; the undivided integral
    is the form in which equal-projection bodies have equal values.
    """
    if not hasattr(body, "h"):
        body = convex_body(body)
    if grid.dim != body.dim:
        raise DomainError("grid dimension does not match body dimension")
    return float(np.dot(grid.weights, np.asarray(body.h(grid.nodes), dtype=float)))


def constant_width_check(body, grid, tol=1e-6):
    """Constant-width test plus the width-volume identity residual.

    Width in direction u is h(u) + h(-u); the body has constant width over
    the grid when max minus min stays within ``tol``.  The residual is
    |2 vol - w S + (2 pi / 3) w^3| with w the weighted mean width, volume
    from the radial oracle on a crease-split grid, and S from the
    projection formula.  The residual is reported even when the width test
    fails, so callers can see how far the identity is off.
    """
    if not hasattr(body, "h"):
        body = convex_body(body)
    if body.dim != 3 or grid.dim != 3:
        raise UnsupportedDimension("the width identity is implemented for n = 3")
    widths = np.asarray(body.h(grid.nodes), float) + np.asarray(body.h(-grid.nodes), float)
    is_cw = float(widths.max() - widths.min()) <= tol
    w_mean = float(np.dot(grid.weights, widths)) / float(np.sum(grid.weights))
    vol = volume(body, volume_grid(body.spec, resolution=48, oracle="radial"))
    area = surface_area_cauchy(body, sphere_grid(3, resolution=16), 2048)
    residual = abs(2.0 * vol - w_mean * area + (2.0 * math.pi / 3.0) * w_mean**3)
    return is_cw, residual


@dataclass(frozen=True, eq=False)
class VolumeReport:
    """Outcome of a hypothesis-plus-volume comparison.

    In "sections" mode ``vol_K``/``vol_L`` are the body volumes and
    ``satisfied`` means vol_K <= vol_L + tolerance.  In "projections" mode
    they are the volumes of the polar bodies and ``satisfied`` means
    vol_K >= vol_L - tolerance.  ``resolution`` is the per-panel polar
    resolution of the hypothesis grid; ``directions_checked`` its node
    count; ``min_fit_margin`` the worst containment margin among the
    sampled shadow fits.
    """

    mode: str
    vol_K: float
    vol_L: float
    satisfied: bool
    resolution: int
    tolerance: float
    directions_checked: int
    min_fit_margin: float

    _COLUMNS = (
        "mode",
        "vol_K",
        "vol_L",
        "satisfied",
        "resolution",
        "tolerance",
        "directions_checked",
        "min_fit_margin",
    )

    def to_csv(self):
        row = tuple(getattr(self, name) for name in self._COLUMNS)
        return csv_text(self._COLUMNS, [row])

    def to_text(self):
        rule = "vol_K <= vol_L + tol" if self.mode == "sections" else "vol_K >= vol_L - tol"
        pairs = [(name, getattr(self, name)) for name in self._COLUMNS]
        pairs.insert(1, ("comparison", rule))
        return kv_text(pairs)


def _polar_volume(spec, resolution):
    """Volume of the polar body, integrating radial = 1/support directly."""
    grid = volume_grid(spec, resolution, oracle="support")
    h = np.asarray(support(spec, grid.nodes), dtype=float)
    return float(np.dot(grid.weights, h**-3.0)) / 3.0


def volume_comparison_report(
    K,
    L,
    mode="sections",
    grid=None,
    cfg=None,
    tolerance=1e-3,
    volume_resolution=48,
):
    """Check a shadow-fitting hypothesis, then the matching volume comparison.

    In "sections" mode every sampled central section of ``K`` must fit,
    after an in-plane rotation, inside the matching section of ``L``; the
    volume comparison is then vol(K) <= vol(L) + tolerance.  In
    "projections" mode the fits are between orthogonal projections and the
    comparison moves to the polar bodies, vol(K*) >= vol(L*) - tolerance,
    with polar volumes integrated directly from radial = 1/support.

    ``K`` and ``L`` are body specs; ``grid`` samples the hypothesis
    directions (default: product grid of resolution 8, 128 nodes) while the
    volume quadrature uses its own crease-split grid of per-panel
    resolution ``volume_resolution``.  Raises HypothesisFailed, carrying
    the offending direction, when a sampled shadow does not fit.
    """
    if mode not in ("sections", "projections"):
        raise DomainError("mode must be 'sections' or 'projections'")
    dim = spec_dim(K)
    if spec_dim(L) != dim:
        raise DomainError("bodies live in different dimensions")
    if dim != 3:
        raise UnsupportedDimension("hypothesis sampling is implemented for n = 3")
    grid = grid if grid is not None else sphere_grid(3, resolution=8)
    cfg = cfg or FitConfig()
    if mode == "sections":
        body_k, body_l = star_body(K), star_body(L)
        shadow_of = section_shadow
    else:
        body_k, body_l = convex_body(K), convex_body(L)
        shadow_of = projection_shadow

    def fit_at(i):
        frame = frame_for(grid.nodes[i])
        res = best_rotation_fit(shadow_of(body_k, frame), shadow_of(body_l, frame), cfg)
        return res.found, res.min_margin

    results = ordered_map(fit_at, range(len(grid)))
    worst = math.inf
    for i, (found, margin) in enumerate(results):
        worst = min(worst, margin)
        if not found:
            raise HypothesisFailed(
                "sampled shadow does not fit after any in-plane rotation",
                direction=np.array(grid.nodes[i]),
            )

    if mode == "sections":
        vol_k = volume(body_k, volume_grid(K, volume_resolution, "radial"))
        vol_l = volume(body_l, volume_grid(L, volume_resolution, "radial"))
        satisfied = vol_k <= vol_l + tolerance
    else:
        vol_k = _polar_volume(K, volume_resolution)
        vol_l = _polar_volume(L, volume_resolution)
        satisfied = vol_k >= vol_l - tolerance
    res_knob = len(grid._polar_t) if grid.kind == "product" else len(grid)
    return VolumeReport(
        mode=mode,
        vol_K=vol_k,
        vol_L=vol_l,
        satisfied=satisfied,
        resolution=res_knob,
        tolerance=tolerance,
        directions_checked=len(grid),
        min_fit_margin=worst,
    )


def averaged_section_power(body, dir_grid, u_count=512, power=3):
    """Double integral of a section radial power.

    For each grid direction the radial of the central section in the
    orthogonal plane is raised to ``power`` and integrated over the circle;
    the results are then summed against the grid weights.  When every
    section of one body fits rotated inside another's, this quantity for
    the first body cannot exceed the second's, which is the averaging step
    of the section-based volume comparison.
    """
    rho = body.rho if hasattr(body, "rho") else star_body(body).rho
    if dir_grid.dim != 3:
        raise UnsupportedDimension("section averaging is implemented for n = 3")
    us = 2.0 * math.pi * np.arange(int(u_count)) / int(u_count)

    def one(i):
        frame = frame_for(dir_grid.nodes[i])
        vals = np.asarray(rho(frame.embed(us)), dtype=float)
        return float(np.sum(vals**power)) * (2.0 * math.pi / int(u_count))

    per_direction = ordered_map(one, range(len(dir_grid)))
    return float(np.dot(dir_grid.weights, np.asarray(per_direction)))
