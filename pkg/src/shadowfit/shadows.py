"""Two-dimensional shadows of a body: central plane sections and
orthogonal projections, each reduced to a single periodic function.

A section through the origin is described by the radial function of the
planar cut; a projection is described by the support function of the
projected set.  Either way a shadow is a pair (frame, f) with f defined
on angles measured inside the plane: the direction at angle u is
``cos(u) * frame.e1 + sin(u) * frame.e2``.

The polarity bridge used throughout: for a convex body K containing the
origin, the central section of the polar body equals the polar of the
projection, so ``section_shadow(polar(K), F).f == 1 / projection_shadow(K, F).f``
pointwise on every frame F.

Tilted sections of the upright cylinder and double cone have closed
forms (``cylinder_section_rho``, ``cone_section_rho``); these are kept
in the algebraically stable all-cosine arrangement, which also makes
them even and pi-periodic in u automatically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels as k
from . import bodies as _b
from .errors import DomainError, KindMismatch, NonConvexSupport
from .geom import PlaneFrame

SECTION = "radial"
PROJECTION = "support"


@dataclass(frozen=True, eq=False)
class Shadow2D:
    """A planar shadow: ``kind`` says how to read ``f``.

    kind == "radial":  f(u) is the distance to the boundary of the cut.
    kind == "support": f(u) is the support value of the projected set.
    ``f`` is vectorized over arrays of angles and 2*pi-periodic.
    """

    kind: str
    f: Callable[[np.ndarray], np.ndarray]
    frame: Optional[PlaneFrame] = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in (SECTION, PROJECTION):
            raise DomainError("shadow kind must be %r or %r" % (SECTION, PROJECTION))

    def values(self, u):
        """Evaluate ``f`` accepting scalars or arrays."""
        u = np.asarray(u, dtype=float)
        scalar = u.ndim == 0
        vals = np.asarray(self.f(np.atleast_1d(u)), dtype=float)
        return float(vals[0]) if scalar else vals


def _radial_oracle(body):
    if hasattr(body, "rho"):
        return body.rho
    return lambda u: _b.radial(body, u)


def _support_oracle(body):
    if hasattr(body, "h"):
        return body.h
    spec = getattr(body, "spec", body)
    if isinstance(spec, _b.BodySpec):
        return lambda u: _b.support(spec, u)
    raise KindMismatch("projection needs a support oracle, got a radial-only body")


def section_shadow(body, frame, label=""):
    """Central section of a star body by the plane of ``frame``."""
    rho = _radial_oracle(body)
    return Shadow2D(SECTION, lambda u: rho(frame.embed(u)), frame, label)


def projection_shadow(body, frame, label=""):
    """Orthogonal projection of a convex body onto the plane of ``frame``."""
    h = _support_oracle(body)
    return Shadow2D(PROJECTION, lambda u: h(frame.embed(u)), frame, label)


def rotated_shadow(s, phi, label=None):
    """The same shadow rotated by ``phi`` inside its plane: f(u - phi)."""
    inner = s.f
    return Shadow2D(
        s.kind,
        lambda u: inner(np.asarray(u, dtype=float) - phi),
        s.frame,
        s.label if label is None else label,
    )


def tilted_frame(theta):
    """Plane whose normal makes angle ``theta`` with the z-axis.

    Spanned by e1 = (cos t, 0, sin t) and e2 = (0, 1, 0); at theta = 0
    this is the equatorial plane, at theta = pi/2 the xz-plane.  The
    closed-form section curves below live on these frames.
    """
    st, ct = math.sin(theta), math.cos(theta)
    return PlaneFrame(
        normal=np.array([-st, 0.0, ct]),
        e1=np.array([ct, 0.0, st]),
        e2=np.array([0.0, 1.0, 0.0]),
    )


def cone_section_rho(theta, u):
    """Radial function of the tilted section of the double cone a = c = 1.

    Even and pi-periodic in u; equals 1 on the whole equator (theta = 0)
    and dips to 1/(sin t + cos t) at u = 0.
    """
    return k.cone_section_radial(theta, u)


def cylinder_section_rho(r, theta, u):
    """Radial function of the tilted section of the square cylinder
    (halfheight = radius = r).

    For theta <= pi/4 the cut is the ellipse with semiaxes r*sec(theta)
    and r; beyond pi/4 the cut meets the flat caps and the curve switches
    to the truncated branch on |u| < u0(theta).
    """
    return k.cylinder_section_radial(r, theta, u)


def u0(theta):
    """Angle where the tilted square-cylinder section leaves the flat cap.

    Defined for theta > pi/4 (below that the section misses the caps);
    increases to pi/4 at theta = pi/2.
    """
    theta = float(theta)
    rad = math.sin(theta) ** 2 - math.cos(theta) ** 2
    if rad <= 0.0:
        raise DomainError("u0 requires theta > pi/4")
    return math.atan(math.sqrt(rad))


def cone_tilt_section(theta, label=""):
    """``section_shadow(DoubleCone(1,1), tilted_frame(theta))`` via the
    closed form, skipping the embedding round trip."""
    return Shadow2D(SECTION, lambda u: k.cone_section_radial(theta, u), tilted_frame(theta), label)


def cylinder_tilt_section(r, theta, label=""):
    """Closed-form tilted section of the square cylinder as a shadow."""
    return Shadow2D(
        SECTION, lambda u: k.cylinder_section_radial(r, theta, u), tilted_frame(theta), label
    )


def shadow_area(s, resolution=4096):
    """Planar area enclosed by the shadow boundary.

    Radial shadows integrate f^2/2 with the composite trapezoid rule
    (spectrally accurate for smooth boundaries).  Support shadows walk the
    boundary x(u) = f(u)(cos u, sin u) + f'(u)(-sin u, cos u), with f'
    from central differences, and apply the shoelace rule; a negative
    signed area means the support oracle was not convex.
    """
    if resolution < 64:
        raise DomainError("resolution must be at least 64")
    du = 2.0 * math.pi / resolution
    u = np.arange(resolution) * du
    f = np.asarray(s.f(u), dtype=float)
    if s.kind == SECTION:
        return 0.5 * float(np.sum(f * f)) * du
    fp = (np.roll(f, -1) - np.roll(f, 1)) / (2.0 * du)
    cu, su = np.cos(u), np.sin(u)
    x = f * cu - fp * su
    y = f * su + fp * cu
    area = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    if area < 0.0:
        raise NonConvexSupport("negative shoelace area: support oracle is not convex")
    return area
