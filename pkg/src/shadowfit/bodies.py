"""Body catalog: oracle-backed convex and star bodies.

A body is described by a small immutable spec (ball, cylinder, double cone,
bumpy sphere, or a polar/rotated/dilated wrapper around one) and queried
through two oracles:

* ``radial(spec, u)``: the gauge distance from the origin to the boundary
  along the unit direction u,
* ``support(spec, u)``: the maximum of <x, u> over the body.

Both accept single directions or row-stacked batches and are vectorized.
For a convex body with the origin inside, the polar body swaps the two
oracles: radial of the polar is 1/support and vice versa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _kernels as k
from .errors import DomainError, UnsupportedDimension
from .geom import Rotation, sphere_grid, unit

# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class Ball:
    radius: float = 1.0

    def __post_init__(self):
        if self.radius <= 0.0:
            raise DomainError("ball radius must be positive")


@dataclass(frozen=True)
class Cylinder:
    """Upright solid cylinder: x^2 + y^2 <= radius^2, |z| <= halfheight."""

    radius: float
    halfheight: float

    def __post_init__(self):
        if self.radius <= 0.0 or self.halfheight <= 0.0:
            raise DomainError("cylinder parameters must be positive")


@dataclass(frozen=True)
class DoubleCone:
    """Solid of revolution of the triangle (0, +-apex), (base, 0) about z.

    Boundary: sqrt(x^2 + y^2)/base_radius + |z|/apex_height = 1.
    """

    base_radius: float
    apex_height: float

    def __post_init__(self):
        if self.base_radius <= 0.0 or self.apex_height <= 0.0:
            raise DomainError("double cone parameters must be positive")


@dataclass(frozen=True, eq=False)
class BumpSphere:
    """Unit sphere plus disjoint cap bumps and an optional equatorial ridge."""

    centers: np.ndarray
    radii: np.ndarray
    heights: np.ndarray
    ring_height: float = 0.0
    ring_halfwidth: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "centers", np.atleast_2d(np.asarray(self.centers, float)))
        object.__setattr__(self, "radii", np.atleast_1d(np.asarray(self.radii, float)))
        object.__setattr__(self, "heights", np.atleast_1d(np.asarray(self.heights, float)))
        if self.ring_height < 0.0 or (self.ring_height > 0.0 and self.ring_halfwidth <= 0.0):
            raise DomainError("ring height/halfwidth must be positive when present")
        if np.any(self.radii <= 0.0) or np.any(self.heights < 0.0):
            raise DomainError("bump radii must be positive and heights nonnegative")

    @property
    def dim(self):
        return self.centers.shape[1]


@dataclass(frozen=True)
class PolarOf:
    inner: "BodySpec"


@dataclass(frozen=True, eq=False)
class RotatedBody:
    rotation: Rotation
    inner: "BodySpec"


@dataclass(frozen=True)
class DilatedBody:
    factor: float
    inner: "BodySpec"

    def __post_init__(self):
        if self.factor <= 0.0:
            raise DomainError("dilation factor must be positive")


BodySpec = Ball | Cylinder | DoubleCone | BumpSphere | PolarOf | RotatedBody | DilatedBody


def spec_dim(spec) -> int:
    if isinstance(spec, BumpSphere):
        return spec.dim
    if isinstance(spec, (PolarOf, DilatedBody, RotatedBody)):
        return spec_dim(spec.inner)
    return 3


# ---------------------------------------------------------------------------
# oracles


def _check_dirs(spec, u):
    u = np.asarray(u, dtype=float)
    if isinstance(spec, (Cylinder, DoubleCone)) and u.shape[-1] != 3:
        raise UnsupportedDimension("cylinder and double cone oracles are 3D")
    return u


def radial(spec, u):
    """Radial function of ``spec`` at unit direction(s) ``u``."""
    u = _check_dirs(spec, u)
    if isinstance(spec, Ball):
        return np.full(u.shape[:-1], spec.radius) if u.ndim > 1 else spec.radius
    if isinstance(spec, Cylinder):
        return k.cylinder_radial(spec.radius, spec.halfheight, u)
    if isinstance(spec, DoubleCone):
        return k.double_cone_radial(spec.base_radius, spec.apex_height, u)
    if isinstance(spec, BumpSphere):
        out = 1.0 + k.bump_sum(u, spec.centers, spec.radii, spec.heights)
        if spec.ring_height > 0.0:
            out = out + k.ring_sum(u, spec.ring_height, spec.ring_halfwidth)
        return out
    if isinstance(spec, PolarOf):
        return 1.0 / support(spec.inner, u)
    if isinstance(spec, RotatedBody):
        return radial(spec.inner, u @ spec.rotation.matrix)
    if isinstance(spec, DilatedBody):
        return spec.factor * radial(spec.inner, u)
    raise DomainError("unknown body spec %r" % (spec,))


def support(spec, u):
    """Support function of ``spec`` at unit direction(s) ``u``."""
    u = _check_dirs(spec, u)
    if isinstance(spec, Ball):
        return np.full(u.shape[:-1], spec.radius) if u.ndim > 1 else spec.radius
    if isinstance(spec, Cylinder):
        return k.cylinder_support(spec.radius, spec.halfheight, u)
    if isinstance(spec, DoubleCone):
        return k.double_cone_support(spec.base_radius, spec.apex_height, u)
    if isinstance(spec, PolarOf):
        return 1.0 / radial(spec.inner, u)
    if isinstance(spec, RotatedBody):
        return support(spec.inner, u @ spec.rotation.matrix)
    if isinstance(spec, DilatedBody):
        return spec.factor * support(spec.inner, u)
    if isinstance(spec, BumpSphere):
        return _numeric_support(spec, u)
    raise DomainError("unknown body spec %r" % (spec,))


def _numeric_support(spec, u, resolution=192):
    """Support by maximizing <rho(v) v, u> over a dense direction grid.

    Only used for bodies without a closed form (bumpy spheres).  Accuracy is
    limited by the grid, roughly (pi/resolution)^2 in relative terms.
    """
    if spec_dim(spec) != 3:
        raise UnsupportedDimension("numeric support is implemented for 3D bodies")
    grid = sphere_grid(3, resolution=resolution, kind="product")
    pts = grid.nodes * np.asarray(radial(spec, grid.nodes))[:, None]
    u = np.asarray(u, dtype=float)
    single = u.ndim == 1
    vals = pts @ np.atleast_2d(u).T
    out = vals.max(axis=0)
    return float(out[0]) if single else out.reshape(u.shape[:-1])


def polar(spec):
    """Polar body of ``spec`` as a catalog spec, simplified structurally.

    Cylinder and double cone are exact polars of each other with reciprocal
    parameters; rotation commutes with polarity; dilation inverts.  The
    double polar returns the original spec (valid for the convex catalog
    bodies with the origin interior).
    """
    if isinstance(spec, Ball):
        return Ball(1.0 / spec.radius)
    if isinstance(spec, Cylinder):
        return DoubleCone(1.0 / spec.radius, 1.0 / spec.halfheight)
    if isinstance(spec, DoubleCone):
        return Cylinder(1.0 / spec.base_radius, 1.0 / spec.apex_height)
    if isinstance(spec, PolarOf):
        return spec.inner
    if isinstance(spec, RotatedBody):
        return RotatedBody(spec.rotation, polar(spec.inner))
    if isinstance(spec, DilatedBody):
        return DilatedBody(1.0 / spec.factor, polar(spec.inner))
    return PolarOf(spec)


def apply_rotation(spec, rotation):
    """Rotate the body; nested rotations are collapsed into one."""
    if isinstance(spec, RotatedBody):
        return RotatedBody(rotation @ spec.rotation, spec.inner)
    if isinstance(spec, Ball):
        return spec
    return RotatedBody(rotation, spec)


def dilate(spec, factor):
    if isinstance(spec, DilatedBody):
        return DilatedBody(factor * spec.factor, spec.inner)
    return DilatedBody(factor, spec)


def width(spec, u):
    """Width of the body in direction u: support(u) + support(-u)."""
    u = np.asarray(u, dtype=float)
    return support(spec, u) + support(spec, -u)


def diameter_directions(spec, grid, tol):
    """Directions attaining the maximal width over ``grid``, within ``tol``.

    Qualifying nodes are canonicalized per antipodal pair (a diameter fixes
    a direction only up to sign) and grouped greedily: a node joins the
    first cluster whose representative lies within twice the grid spacing,
    otherwise it founds a new cluster.  One representative per cluster is
    returned, best width first.  Degenerate bodies report many clusters (a
    ball qualifies everywhere, a squat cylinder along a whole ring); treat
    a large count as a continuum, not a finite direction set.
    """
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    w = np.asarray(width(spec, grid.nodes))
    wmax = float(w.max())
    order = np.argsort(-w, kind="stable")
    radius = 2.0 * grid.spacing
    reps = []
    for i in order:
        if w[i] < wmax - tol:
            break
        v = grid.nodes[i].copy()
        for comp in v:
            if abs(comp) > 1e-12:
                if comp < 0.0:
                    v = -v
                break
        angles = [math.acos(min(1.0, abs(float(np.dot(v, r))))) for r in reps]
        if all(a > radius for a in angles):
            reps.append(v)
    return reps


def radial_lipschitz_bound(spec):
    """Conservative Lipschitz constant of the radial function on the sphere.

    These bounds let a grid containment margin be converted into a rigorous
    statement by hand: if rho_B - rho_A >= m on a grid of spacing h, then
    rho_B - rho_A >= m - (L_A + L_B) h everywhere.
    """
    if isinstance(spec, Ball):
        return 0.0
    if isinstance(spec, Cylinder):
        r, hh = spec.radius, spec.halfheight
        return (r * r + hh * hh) / min(r, hh)
    if isinstance(spec, DoubleCone):
        a, c = spec.base_radius, spec.apex_height
        return max(a, c) ** 2 * math.sqrt(1.0 / (a * a) + 1.0 / (c * c))
    if isinstance(spec, BumpSphere):
        slope = 0.0
        if spec.radii.size:
            slope = float(np.max(spec.heights * 1.7180 / spec.radii))
        if spec.ring_height > 0.0:
            slope = max(slope, spec.ring_height * 1.7180 / spec.ring_halfwidth)
        return 0.5 * math.pi * slope
    if isinstance(spec, PolarOf):
        inner = spec.inner
        if isinstance(inner, (Ball, Cylinder, DoubleCone)):
            return radial_lipschitz_bound(polar(inner))
        return None
    if isinstance(spec, RotatedBody):
        return radial_lipschitz_bound(spec.inner)
    if isinstance(spec, DilatedBody):
        b = radial_lipschitz_bound(spec.inner)
        return None if b is None else spec.factor * b
    return None


# ---------------------------------------------------------------------------
# oracle wrappers


@dataclass(frozen=True, eq=False)
class StarBody:
    """A star body given by a vectorized radial oracle."""

    dim: int
    rho: Callable[[np.ndarray], np.ndarray]
    lipschitz: Optional[float] = None
    spec: Optional[BodySpec] = None


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """A convex body given by radial and support oracles."""

    dim: int
    rho: Callable[[np.ndarray], np.ndarray]
    h: Callable[[np.ndarray], np.ndarray]
    spec: Optional[BodySpec] = None


def star_body(spec) -> StarBody:
    return StarBody(
        dim=spec_dim(spec),
        rho=lambda u, s=spec: radial(s, u),
        lipschitz=radial_lipschitz_bound(spec),
        spec=spec,
    )


def convex_body(spec) -> ConvexBody:
    return ConvexBody(
        dim=spec_dim(spec),
        rho=lambda u, s=spec: radial(s, u),
        h=lambda u, s=spec: support(s, u),
        spec=spec,
    )


# ---------------------------------------------------------------------------
# text format


def _fmt(x):
    return "%.17g" % float(x)


def format_body_spec(spec) -> str:
    """Serialize a catalog spec to the CLI text format."""
    if isinstance(spec, Ball):
        return "ball:R=%s" % _fmt(spec.radius)
    if isinstance(spec, Cylinder):
        return "cylinder:r=%s,hh=%s" % (_fmt(spec.radius), _fmt(spec.halfheight))
    if isinstance(spec, DoubleCone):
        return "double_cone:a=%s,c=%s" % (_fmt(spec.base_radius), _fmt(spec.apex_height))
    if isinstance(spec, PolarOf):
        return "polar:%s" % format_body_spec(spec.inner)
    if isinstance(spec, DilatedBody):
        return "dilated:c=%s:%s" % (_fmt(spec.factor), format_body_spec(spec.inner))
    if isinstance(spec, RotatedBody):
        axis, angle = _axis_angle_of(spec.rotation)
        return "rotated:axis=%s,angle=%s:%s" % (axis, _fmt(angle), format_body_spec(spec.inner))
    raise DomainError("spec %r has no text form" % (spec,))


def _axis_angle_of(rotation):
    m = rotation.matrix
    for name, ax in (("x", (1.0, 0, 0)), ("y", (0, 1.0, 0)), ("z", (0, 0, 1.0))):
        a = np.array(ax)
        angle = math.atan2(
            float(np.dot(a, [m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]])) / 2.0,
            (np.trace(m) - 1.0) / 2.0,
        )
        if np.allclose(Rotation.from_axis_angle(a, angle).matrix, m, atol=1e-12):
            return name, angle
    raise DomainError("only axis-aligned rotations have a text form")


def _parse_kv(text, keys):
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise DomainError("expected key=value, got %r" % part)
        key, _, val = part.partition("=")
        if key not in keys:
            raise DomainError("unknown key %r (expected %s)" % (key, "/".join(keys)))
        try:
            out[key] = float(val)
        except ValueError:
            raise DomainError("bad number %r" % val) from None
    missing = [key for key in keys if key not in out]
    if missing:
        raise DomainError("missing keys: %s" % ",".join(missing))
    return out


def parse_body_spec(text) -> BodySpec:
    """Parse the CLI body format, e.g. ``cylinder:r=0.51,hh=0.51`` or
    ``polar:double_cone:a=1,c=1`` or ``rotated:axis=z,angle=0.3:ball:R=1``."""
    head, _, rest = text.strip().partition(":")
    if head == "ball":
        return Ball(_parse_kv(rest, ("R",))["R"])
    if head == "cylinder":
        kv = _parse_kv(rest, ("r", "hh"))
        return Cylinder(kv["r"], kv["hh"])
    if head == "double_cone":
        kv = _parse_kv(rest, ("a", "c"))
        return DoubleCone(kv["a"], kv["c"])
    if head == "polar":
        if not rest:
            raise DomainError("polar: needs an inner body")
        return polar(parse_body_spec(rest))
    if head == "dilated":
        params, _, inner = rest.partition(":")
        if not inner:
            raise DomainError("dilated: needs an inner body")
        return dilate(parse_body_spec(inner), _parse_kv(params, ("c",))["c"])
    if head == "rotated":
        params, _, inner = rest.partition(":")
        if not inner:
            raise DomainError("rotated: needs an inner body")
        fields = dict(p.partition("=")[::2] for p in params.split(","))
        if set(fields) != {"axis", "angle"} or fields["axis"] not in "xyz":
            raise DomainError("rotated needs axis=x|y|z,angle=<radians>")
        axis = {"x": (1.0, 0, 0), "y": (0, 1.0, 0), "z": (0, 0, 1.0)}[fields["axis"]]
        try:
            angle = float(fields["angle"])
        except ValueError:
            raise DomainError("bad angle %r" % fields["angle"]) from None
        return apply_rotation(parse_body_spec(inner), Rotation.from_axis_angle(axis, angle))
    raise DomainError("unknown body kind %r" % head)
