"""End-to-end verification pipelines for the two counterexample families.

Family one lives in R^3: the squat cylinder against the unit double cone.
Every tilted central section of the cylinder fits, after an in-plane
rotation, inside the matching section of the cone; yet no single 3D
rotation of the whole cylinder fits inside the cone.  The machinery here
computes the three critical tilt angles where the fitting strategy must
switch, verifies the strategies over a tilt grid, and produces the exact
escape witness for whole-body rotations.

Family two is the bumpy-sphere construction: two near-spherical star
bodies built from a round sphere plus small smooth cap bumps, arranged
so that every central section of the first fits rotated inside the
matching section of the second while whole-body containment fails for
every sampled rotation.  The asymptotic regime behind the original
argument is far below numerical resolution, so the construction here is
re-engineered at desk scale with all required properties (convexity of
nothing is assumed: bump heights are small enough for the midpoint
convexity check, ring and bump coverage margins beat the search grids)
verified numerically rather than assumed.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

import numpy as np

from . import shadows as _sh
from ._report import csv_text, kv_text
from .bodies import BumpSphere, star_body
from .errors import (
    ConvexityFailure,
    DegenerateConfig,
    DomainError,
    UnsupportedDimension,
)
from .fitting import (
    FitConfig,
    best_rotation_fit,
    containment_margin,
    refined_containment_margin,
)
from .geom import Rotation, frame_for, random_rotations, sphere_grid, unit

R_LOWER = 0.5
R_UPPER = math.sqrt(2.0 - math.sqrt(3.0))
# verify_cylinder_cone deliberately accepts radii a little beyond R_UPPER so
# the sharpness of the construction (the fit failing just past the boundary)
# can be demonstrated; anything larger is a domain error.
VERIFY_R_MAX = 0.55

# The equatorial ring of the second bump body must strictly dominate the
# pole bump of the first in every section, with enough angular slack for
# the rotation search grid to find the fit.  Height factor 2 gives the
# vertical headroom; width factor 7 makes the fit window several grid
# steps wide.
RING_HEIGHT_FACTOR = 2.0
RING_WIDTH_FACTOR = 7.0


# ---------------------------------------------------------------------------
# critical angles


@dataclass(frozen=True)
class CriticalAngles:
    """Tilt thresholds for the cylinder-in-cone section strategies.

    Below theta0 the cylinder section sits inside the cone section as is.
    The quarter-turn strategy works up to theta1; the slide-to-the-corner
    strategy works from theta2 on.  theta2 < theta1, so the two regimes
    overlap and together cover all tilts.
    """

    theta0: float
    theta1: float
    theta2: float


def _angles_any(r):
    root = math.sqrt(4.0 * r * r - 1.0)
    return CriticalAngles(
        theta0=math.atan((1.0 - r) / r),
        theta1=0.5 * math.acos(-1.0 + root / (2.0 * r * r)),
        theta2=0.5 * math.acos(-root / (2.0 * r * r)),
    )


def critical_angles(r):
    """The three strategy-switch tilt angles for cylinder radius ``r``.

    Valid on the open interval (1/2, sqrt(2 - sqrt(3))): below it the
    cylinder fits outright and the angles degenerate, above it the
    quarter-turn and corner regimes no longer overlap.

    theta2 is taken from its cosine-doubling identity
    cos(2 theta2) = -sqrt(4 r^2 - 1)/(2 r^2), which places it in
    (pi/4, pi/2); the equivalent arcsine form has a principal branch
    that lands below pi/4 and is not used.
    """
    r = float(r)
    if not R_LOWER < r < R_UPPER:
        raise DomainError(
            "r must lie strictly between 1/2 and sqrt(2 - sqrt(3)) ~= %.6f" % R_UPPER
        )
    return _angles_any(r)


def quarter_tilt_check(r, u_grid=4096):
    """Anchor check at tilt pi/4 for the quarter-turn strategy.

    Returns (discriminant r^4 (8 r^2 - 3) is negative, grid minimum of the
    gap between the cone section and the quarter-turned cylinder section at
    tilt pi/4).  Both must be affirmative (negative discriminant, positive
    minimum) for the strategy to start strictly inside.
    """
    r = float(r)
    if not R_LOWER < r < R_UPPER:
        raise DomainError("r must lie strictly between 1/2 and %.6f" % R_UPPER)
    disc = r**4 * (8.0 * r * r - 3.0)
    theta = 0.25 * math.pi
    a = _sh.rotated_shadow(_sh.cylinder_tilt_section(r, theta), 0.5 * math.pi)
    b = _sh.cone_tilt_section(theta)
    return disc < 0.0, containment_margin(a, b, u_grid)


def _strategy_for(theta, angles):
    """Strategy name and in-plane rotation angle for one tilt."""
    if theta <= angles.theta0:
        return "identity", 0.0
    mid = 0.5 * (angles.theta1 + angles.theta2)
    if theta <= mid:
        return "rot90", 0.5 * math.pi
    return "rot_u0", _sh.u0(theta)


def strategy_margin(r, theta, u_grid=2048, refine=False):
    """Containment margin of the designated strategy at one tilt.

    With ``refine`` the near-touching angles are polished, which matters
    when locating the zero of the margin rather than just its sign.
    Returns (strategy name, margin).
    """
    name, phi = _strategy_for(theta, _angles_any(r))
    a = _sh.rotated_shadow(_sh.cylinder_tilt_section(r, theta), phi)
    b = _sh.cone_tilt_section(theta)
    if refine:
        return name, refined_containment_margin(a, b, u_grid)
    return name, containment_margin(a, b, u_grid)


def _fixed_strategy_margin(r, theta, phi, u_grid):
    a = _sh.rotated_shadow(_sh.cylinder_tilt_section(r, theta), phi)
    return refined_containment_margin(a, _sh.cone_tilt_section(theta), u_grid)


def _bisect_zero(g, lo, hi, iters=80, xtol=1e-10):
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if (glo > 0.0) == (ghi > 0.0):
        raise DegenerateConfig("bisection bracket does not straddle a sign change")
    sign = 1.0 if glo > 0.0 else -1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if sign * g(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < xtol:
            break
    return 0.5 * (lo + hi)


def crosscheck_critical_angles(r, u_grid=2048):
    """Locate theta1 and theta2 from the fitting margins alone.

    theta1 is the zero, in tilt, of the quarter-turn strategy margin;
    theta2 the zero of the corner-slide strategy margin.  Both are found
    by bisection on refined margins, independently of the closed forms,
    and should agree with :func:`critical_angles` to well under 1e-6.
    """
    r = float(r)
    lo = 0.25 * math.pi + 1e-7
    hi = 0.5 * math.pi - 1e-7
    t1 = _bisect_zero(
        lambda th: _fixed_strategy_margin(r, th, 0.5 * math.pi, u_grid), lo, hi
    )
    t2 = _bisect_zero(
        lambda th: _fixed_strategy_margin(r, th, _sh.u0(th), u_grid), lo, hi
    )
    return t1, t2


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True, eq=False)
class CaseReport:
    """Outcome of one verification pipeline.

    ``rows`` hold the per-direction data named by ``columns``; ``params``
    records every input needed to reproduce the run.  The CSV rendering
    contains only reproducible data (no timing); the text rendering adds
    the verdict, the worst margin, and the wall time.
    """

    title: str
    params: tuple
    columns: tuple
    rows: tuple
    verdict: str
    min_margin: float
    runtime: float

    @property
    def verified(self):
        return self.verdict == "verified"

    def to_csv(self):
        return csv_text(self.columns, self.rows)

    def to_text(self):
        pairs = (
            (("case", self.title),)
            + tuple(self.params)
            + (
                ("rows", len(self.rows)),
                ("min_margin", self.min_margin),
                ("verdict", self.verdict),
                ("runtime_s", "%.2f" % self.runtime),
            )
        )
        return kv_text(pairs)


# ---------------------------------------------------------------------------
# cylinder against cone, section by section


def verify_cylinder_cone(r, theta_grid=200, cfg=None):
    """Check, tilt by tilt, that cylinder sections fit inside cone sections.

    For each tilt in a uniform grid of [0, pi/2] the designated strategy
    (identity below theta0, quarter turn up to the regime midpoint, corner
    slide beyond) is evaluated through its containment margin, and a blind
    rotation search must independently find a fit.  Radii slightly beyond
    the valid family are accepted so the expected failure there is
    observable; see ``VERIFY_R_MAX``.
    """
    r = float(r)
    if not R_LOWER < r <= VERIFY_R_MAX:
        raise DomainError("r must lie in (1/2, %.2f]" % VERIFY_R_MAX)
    cfg = cfg or FitConfig()
    start = time.perf_counter()
    angles = _angles_any(r)
    thetas = np.linspace(0.0, 0.5 * math.pi, int(theta_grid))
    rows = []
    worst = math.inf
    all_ok = True
    for theta in thetas:
        theta = float(theta)
        name, phi = _strategy_for(theta, angles)
        a = _sh.cylinder_tilt_section(r, theta)
        b = _sh.cone_tilt_section(theta)
        margin = containment_margin(_sh.rotated_shadow(a, phi), b, cfg.u_grid)
        blind = best_rotation_fit(a, b, cfg)
        rows.append((theta, name, margin, blind.witness_angle, blind.min_margin))
        worst = min(worst, margin, blind.min_margin)
        if margin < -cfg.tol or not blind.found:
            all_ok = False
    verdict = "verified" if all_ok else "failed: some tilt lacks a fitting rotation"
    return CaseReport(
        title="cylinder sections inside cone sections",
        params=(
            ("r", r),
            ("theta_grid", int(theta_grid)),
            ("theta0", angles.theta0),
            ("theta1", angles.theta1),
            ("theta2", angles.theta2),
            ("angle_grid", cfg.angle_grid),
            ("u_grid", cfg.u_grid),
            ("tol", cfg.tol),
        ),
        columns=("theta", "strategy", "strategy_margin", "blind_angle", "blind_margin"),
        rows=tuple(rows),
        verdict=verdict,
        min_margin=worst,
        runtime=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# whole-body escape witness


def rim_escape_witness(r, phi):
    """Exact witness that tilting the cylinder by ``phi`` pokes out of the cone.

    Rotating the cylinder about the x-axis by phi carries a well-chosen
    top-rim point to R(phi) = (r cos a0, r (cos phi - 1)/sin phi, r) with
    a0 = arcsin((1 - cos phi)/sin phi).  That image keeps planar distance
    exactly r from the z-axis while sitting at height r, so it lies outside
    the cone by margin z - (1 - sqrt(x^2 + y^2)) = 2r - 1, independent of
    phi.  Returns (image point, margin).
    """
    r = float(r)
    phi = float(phi)
    if r <= 0.5:
        raise DomainError("the escape argument needs r > 1/2")
    if not 0.0 < phi <= 0.5 * math.pi:
        raise DomainError("phi must lie in (0, pi/2]")
    sin_a0 = (1.0 - math.cos(phi)) / math.sin(phi)
    a0 = math.asin(sin_a0)
    point = np.array([r * math.cos(a0), r * (math.cos(phi) - 1.0) / math.sin(phi), r])
    planar = math.hypot(point[0], point[1])
    assert abs(planar - r) < 1e-12
    margin = point[2] - (1.0 - planar)
    return point, margin


# ---------------------------------------------------------------------------
# bump-sphere construction


@dataclass(frozen=True)
class BumpParams:
    """Construction parameters for the bumpy-sphere pair.

    ``n`` is both the ambient dimension and the number of small bumps;
    the small bumps sit at the vertices of a regular spherical simplex
    with side ``v``, the first vertex at the north pole.  ``delta`` and
    ``eps_small`` size the small bumps, ``delta_big`` and ``eps`` the
    large covering bumps; ``layers`` slices the top hemisphere into
    latitude bands (defaults to 2^n) of which only the even ones may
    carry large bumps.

    Defaults are desk-scale: heights are capped so the cap profile keeps
    the body convex (the profile's peak bending is 4.8/radius^2, so
    height * 4.8/radius^2 stays below 1 with safety), well away from the
    asymptotic regime of the underlying argument, and every required
    property is verified numerically downstream.
    """

    n: int = 3
    v: float = 0.3
    delta: float = 0.01
    delta_big: float = 0.14
    eps: float = 1e-4
    eps_small: float = 5e-6
    layers: int = 0

    def __post_init__(self):
        if self.n < 3:
            raise DomainError("n must be at least 3")
        if self.layers == 0:
            object.__setattr__(self, "layers", 2**self.n)
        if self.layers < 2:
            raise DomainError("layers must be at least 2")
        if not 0.0 < self.delta < self.delta_big:
            raise DomainError("need 0 < delta < delta_big")
        if not 2.0 * self.delta_big < self.v:
            raise DomainError("need 2*delta_big < v (disjoint bump disks)")
        if self.eps < 0.0 or self.eps_small < 0.0:
            raise DomainError("heights must be nonnegative")
        if self.eps > 0.0 and not self.eps_small < self.eps:
            raise DomainError("need eps_small < eps (large bumps must dominate)")
        if self.eps == 0.0 and self.eps_small != 0.0:
            raise DomainError("eps = 0 requires eps_small = 0")


def simplex_directions(n, v):
    """``n`` unit vectors in R^n, pairwise geodesic distance ``v``,
    the first at the north pole (0, ..., 0, 1)."""
    if n < 2:
        raise DomainError("need n >= 2")
    c = math.cos(v)
    if not -1.0 / (n - 1) < c < 1.0:
        raise DomainError("no spherical simplex with that side in this dimension")
    gram = np.full((n, n), c)
    np.fill_diagonal(gram, 1.0)
    rows = np.linalg.cholesky(gram)
    return np.roll(rows, -1, axis=1)


def _plane_rotation(a, b, angle):
    """Rotation by ``angle`` in the plane spanned by orthonormal a, b
    (a moves toward b), identity on the orthogonal complement."""
    outer_aa = np.outer(a, a)
    outer_bb = np.outer(b, b)
    mix = np.outer(b, a) - np.outer(a, b)
    dim = a.size
    m = np.eye(dim) + math.sin(angle) * mix + (math.cos(angle) - 1.0) * (outer_aa + outer_bb)
    return Rotation(m)


def _cap_inverse(level):
    """Geodesic fraction x of the cap radius where the profile drops to
    ``level``: solves (1 - x^2)^3 = level."""
    level = min(max(level, 0.0), 1.0)
    return math.sqrt(1.0 - level ** (1.0 / 3.0))


def _band_of(z, layers):
    if z < 0.0:
        return 0
    return min(layers, int(z * layers) + 1)


def _place_big_bumps(p, xi):
    """Centers for the large covering bumps of the second body.

    Each pole-containing proper subset of the simplex vertices is slid
    rigidly along the great circle through the pole and its anchor vertex
    (the slide keeps the subset on any section plane through pole and
    anchor, which is what makes the covering work), far enough that the
    pole's image lands mid-height in an admissible even latitude band.
    A band is admissible when every image of the subset lands in an even
    band, clear of the pole, of the small bumps, of the equatorial ring
    band, and of the latitude ring where a section's third simplex vertex
    can fall when two vertices ride the equator ring (the "apex" band);
    the last two exclusions keep the tall regions of the second body from
    admitting any congruent copy of the full simplex.
    """
    n, layers = p.n, p.layers
    pole = xi[0]
    deep = p.delta_big * _cap_inverse(p.eps_small / p.eps if p.eps > 0 else 1.0)
    ring_halfwidth = RING_WIDTH_FACTOR * p.delta
    ring_tall = _cap_inverse(0.5) * ring_halfwidth + p.delta
    apex = math.acos(math.cos(p.v) / math.cos(0.5 * p.v))
    placed = []

    def clear_of(lat_c, lo, hi):
        return lat_c - deep > hi or lat_c + deep < lo

    subsets = []
    for size in range(2, n):
        for others in itertools.combinations(range(1, n), size - 1):
            subsets.append((0,) + others)

    for subset in subsets:
        anchor = xi[subset[1]]
        b_axis = unit(anchor - float(np.dot(anchor, pole)) * pole)
        members = xi[list(subset)]
        chosen = None
        for k in range(2, layers + 1, 2):
            z_mid = (k - 0.5) / layers
            slide = math.acos(z_mid)
            rot = _plane_rotation(pole, -b_axis, slide)
            images = rot.apply(members)
            ok = True
            for img in images:
                z = float(img[-1])
                band = _band_of(z, layers)
                if band == 0 or band % 2 != 0:
                    ok = False
                    break
                polar = math.acos(min(1.0, max(-1.0, z)))
                lat = 0.5 * math.pi - polar
                if polar <= deep + p.delta:  # keep the pole bare
                    ok = False
                    break
                if not clear_of(lat, -ring_tall, ring_tall):
                    ok = False
                    break
                if not clear_of(lat, apex - ring_tall, apex + ring_tall):
                    ok = False
                    break
                for small in xi[1:]:
                    gap = math.acos(min(1.0, max(-1.0, float(np.dot(img, small)))))
                    if gap <= deep + p.delta:
                        ok = False
                        break
                if not ok:
                    break
                for prev in placed:
                    gap = math.acos(min(1.0, max(-1.0, float(np.dot(img, prev)))))
                    if gap <= 2.0 * p.delta_big:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                chosen = images
                break
        if chosen is None:
            raise DegenerateConfig(
                "no admissible even band for subset %r with these parameters" % (subset,)
            )
        placed.extend(list(chosen))
    return np.array(placed).reshape(len(placed), n)


def build_bump_bodies(p=None):
    """Build the bumpy-sphere pair (first body, second body).

    The first body is the unit sphere plus ``n`` small bumps at the
    simplex vertices.  The second carries the small bumps at every vertex
    except the pole, the large covering bumps placed by
    :func:`_place_big_bumps`, and a shallow equatorial ring that catches
    sections through the pole bump alone.  Both bodies must pass the
    midpoint convexity check or the build is rejected.
    """
    p = p or BumpParams()
    xi = simplex_directions(p.n, p.v)
    first_spec = BumpSphere(
        centers=xi,
        radii=np.full(p.n, p.delta),
        heights=np.full(p.n, p.eps_small),
    )
    if p.eps > 0.0:
        big = _place_big_bumps(p, xi)
        centers = np.vstack([xi[1:], big])
        radii = np.concatenate([np.full(p.n - 1, p.delta), np.full(len(big), p.delta_big)])
        heights = np.concatenate([np.full(p.n - 1, p.eps_small), np.full(len(big), p.eps)])
        ring_h = RING_HEIGHT_FACTOR * p.eps_small
        ring_w = RING_WIDTH_FACTOR * p.delta
    else:
        centers = xi[1:]
        radii = np.full(p.n - 1, p.delta)
        heights = np.zeros(p.n - 1)
        ring_h = 0.0
        ring_w = 0.0
    second_spec = BumpSphere(
        centers=centers, radii=radii, heights=heights,
        ring_height=ring_h, ring_halfwidth=ring_w,
    )
    for name, spec in (("first", first_spec), ("second", second_spec)):
        bad = _convexity_violation(star_body(spec), 20000, seed=0)
        if bad is not None:
            raise ConvexityFailure(
                "%s bump body fails the midpoint convexity check" % name, pair=bad
            )
    return star_body(first_spec), star_body(second_spec)


# ---------------------------------------------------------------------------
# convexity


def _perturbed_directions(rng, centers, spreads, count):
    """``count`` unit directions per center, geodesic offset up to the
    matching spread, area-uniform in the offset disk."""
    out = []
    for center, spread in zip(centers, spreads):
        frame = frame_for(center)
        t = spread * np.sqrt(rng.random(count))
        az = 2.0 * math.pi * rng.random(count)
        tangent = np.outer(np.cos(az), frame.e1) + np.outer(np.sin(az), frame.e2)
        out.append(np.cos(t)[:, None] * center + np.sin(t)[:, None] * tangent)
    return np.vstack(out)


def _convexity_violation(body, pair_samples, seed):
    """First midpoint-convexity violation, or None.

    Pairs mix three families: global uniform pairs, nearby pairs (a point
    and a small random perturbation of it), and, when the body is a known
    bump construction, pairs concentrated on each bump cap where a too
    tall bump would dent the boundary.  The structured families exist
    because a dent of angular size t occupies a fraction ~ t^4 of the
    uniform pair space and would otherwise need astronomically many
    samples to find.
    """
    if pair_samples < 10**4:
        raise DomainError("need at least 10^4 pair samples")
    rng = np.random.default_rng(seed)
    dim = body.dim
    half = pair_samples // 2

    g = rng.standard_normal((half, 2, dim))
    g /= np.linalg.norm(g, axis=2, keepdims=True)
    u_glob, w_glob = g[:, 0, :], g[:, 1, :]

    u_loc = rng.standard_normal((pair_samples - half, dim))
    u_loc /= np.linalg.norm(u_loc, axis=1, keepdims=True)
    step = rng.uniform(0.0, 0.35, size=(pair_samples - half, 1))
    w_loc = u_loc + step * rng.standard_normal((pair_samples - half, dim))
    w_loc /= np.linalg.norm(w_loc, axis=1, keepdims=True)

    us = [u_glob, u_loc]
    ws = [w_glob, w_loc]
    spec = getattr(body, "spec", None)
    if isinstance(spec, BumpSphere) and spec.radii.size and dim == 3:
        per = max(400, pair_samples // (4 * len(spec.radii)))
        us.append(_perturbed_directions(rng, spec.centers, 1.2 * spec.radii, per))
        ws.append(_perturbed_directions(rng, spec.centers, 2.0 * spec.radii, per))
        if spec.ring_height > 0.0:
            equator = np.zeros(3)
            equator[0] = 1.0
            ring_centers = np.array([equator])
            ring_spread = np.array([2.0 * spec.ring_halfwidth])
            us.append(_perturbed_directions(rng, ring_centers, ring_spread, per))
            ws.append(_perturbed_directions(rng, ring_centers, ring_spread, per))
    u = np.vstack(us)
    w = np.vstack(ws)

    pu = u * np.asarray(body.rho(u), float)[:, None]
    pw = w * np.asarray(body.rho(w), float)[:, None]
    mid = 0.5 * (pu + pw)
    norms = np.linalg.norm(mid, axis=1)
    safe = norms > 1e-9
    radial_at_mid = np.ones_like(norms)
    radial_at_mid[safe] = np.asarray(body.rho(mid[safe] / norms[safe, None]), float)
    bad = safe & (norms > radial_at_mid + 1e-12)
    if not np.any(bad):
        return None
    idx = int(np.argmax(bad))
    return pu[idx].copy(), pw[idx].copy()


def convexity_check(body, pair_samples=20000, seed=0):
    """Midpoint convexity test on sampled boundary pairs.

    For boundary points p, q the midpoint must stay inside the body:
    its norm may not exceed the radial value in its direction.  True when
    no sampled pair violates this.  Deterministic given the seed.
    """
    return _convexity_violation(body, pair_samples, seed) is None


# ---------------------------------------------------------------------------
# bump-case verification


def verify_bump_case(
    first,
    second,
    n_sections=500,
    n_rotations=10000,
    cfg=None,
    seed=42,
    violation_grid=640,
):
    """Sampled two-part verification of the bumpy-sphere pair.

    Part one: for seeded random section planes, the cut of the first body
    must fit, after an in-plane rotation, inside the cut of the second.
    Part two: for seeded random 3D rotations of the first body, some grid
    direction must stick out beyond the second body (checked first at the
    grid nodes nearest the rotated bump crests, then by full scan).  The
    verdict is "verified" only when every section fits and every rotation
    is rejected; the second part is sampling evidence, not a proof.
    """
    spec = getattr(first, "spec", None)
    if not isinstance(spec, BumpSphere) or first.dim != 3:
        raise UnsupportedDimension("bump-case verification is implemented for 3D bump bodies")
    cfg = cfg or FitConfig()
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    rows = []
    fit_worst = math.inf
    fits_ok = True

    normals = rng.standard_normal((int(n_sections), 3))
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    for i, normal in enumerate(normals):
        frame = frame_for(normal)
        res = best_rotation_fit(
            _sh.section_shadow(first, frame), _sh.section_shadow(second, frame), cfg
        )
        rows.append(
            (
                "section",
                i,
                float(normal[0]),
                float(normal[1]),
                float(normal[2]),
                res.witness_angle,
                res.min_margin,
            )
        )
        fit_worst = min(fit_worst, res.min_margin)
        fits_ok = fits_ok and res.found

    grid = sphere_grid(3, resolution=int(violation_grid))
    outer_vals = np.asarray(second.rho(grid.nodes), float) + cfg.tol
    crests = spec.centers
    rotations = random_rotations(int(n_rotations), seed + 1)
    min_excess = math.inf
    all_violated = True
    for idx, rot in enumerate(rotations):
        m = rot.matrix
        hit = None
        for crest in crests:
            node_idx = grid.nearest_index(m @ crest)
            node = grid.nodes[node_idx]
            excess = float(first.rho(node @ m)) - outer_vals[node_idx]
            if excess > 0.0:
                hit = (node_idx, excess)
                break
        if hit is None:
            vals = np.asarray(first.rho(grid.nodes @ m), float)
            diff = vals - outer_vals
            node_idx = int(np.argmax(diff))
            hit = (node_idx, float(diff[node_idx]))
        node_idx, excess = hit
        node = grid.nodes[node_idx]
        rows.append(
            (
                "rotation",
                idx,
                float(node[0]),
                float(node[1]),
                float(node[2]),
                0.0,
                excess,
            )
        )
        min_excess = min(min_excess, excess)
        if excess <= 0.0:
            all_violated = False

    if fits_ok and all_violated:
        verdict = "verified"
    elif not fits_ok:
        verdict = "failed: some section does not fit after rotation"
    else:
        verdict = "failed: some whole-body rotation was not rejected"
    return CaseReport(
        title="bump-sphere pair: sections fit, whole body does not",
        params=(
            ("n_sections", int(n_sections)),
            ("n_rotations", int(n_rotations)),
            ("seed", int(seed)),
            ("violation_grid", int(violation_grid)),
            ("angle_grid", cfg.angle_grid),
            ("u_grid", cfg.u_grid),
            ("tol", cfg.tol),
            ("min_rotation_excess", min_excess),
        ),
        columns=("phase", "index", "x", "y", "z", "angle", "margin"),
        rows=tuple(rows),
        verdict=verdict,
        min_margin=fit_worst,
        runtime=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# lune width


def lune_width(vi, vj, delta, samples=4000, seed=0):
    """Monte-Carlo width of the lune swept by great circles through two
    jittered points.

    Endpoints are sampled in the geodesic disks of radius ``delta`` around
    ``vi`` and ``vj``; each sampled pair spans a great circle whose maximal
    angular distance from the reference circle through vi, vj is the angle
    between the two plane normals.  Returns the maximum over samples,
    a lower estimate of the true sup that scales like delta / sin(spacing).
    """
    vi = unit(np.asarray(vi, float))
    vj = unit(np.asarray(vj, float))
    if vi.size != 3:
        raise UnsupportedDimension("lune geometry is implemented for n = 3")
    cross = np.cross(vi, vj)
    norm = float(np.linalg.norm(cross))
    if norm < 1e-9:
        raise DegenerateConfig("reference directions are parallel or antipodal")
    spacing = math.acos(min(1.0, max(-1.0, float(np.dot(vi, vj)))))
    if delta < 0.0 or delta >= spacing / 4.0:
        raise DomainError("delta must lie in [0, spacing/4)")
    if delta == 0.0:
        return 0.0
    normal = cross / norm
    rng = np.random.default_rng(seed)
    xs = _perturbed_directions(rng, [vi], [delta], int(samples))
    ys = _perturbed_directions(rng, [vj], [delta], int(samples))
    tilted = np.cross(xs, ys)
    tilted /= np.linalg.norm(tilted, axis=1, keepdims=True)
    cosines = np.clip(np.abs(tilted @ normal), -1.0, 1.0)
    return float(np.max(np.arccos(cosines)))
