"""Directions, plane frames, rotations, and quadrature grids on spheres.

Conventions used throughout the package:

* directions are numpy arrays of unit vectors; batches stack them as rows,
* a plane through the origin is represented by a :class:`PlaneFrame`
  (unit normal plus an orthonormal in-plane basis ``e1``, ``e2``),
* rotations act on column vectors by their matrix; for a row-stacked batch
  ``V`` the rotated batch is ``V @ R.matrix.T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UnsupportedDimension, ZeroVector

_NORM_EPS = 1e-12


def unit(v):
    """Normalize ``v`` to unit length.

    Raises ``ZeroVector`` if the norm is below 1e-12.
    """
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n < _NORM_EPS:
        raise ZeroVector("cannot normalize a vector of norm %.3e" % n)
    return v / n


@dataclass(frozen=True, eq=False)
class PlaneFrame:
    """A 2-plane through the origin with an orthonormal basis.

    ``normal`` is the unit normal; ``e1`` and ``e2`` span the plane.  The
    triple must be orthonormal within 1e-12.
    """

    normal: np.ndarray
    e1: np.ndarray
    e2: np.ndarray

    def __post_init__(self):
        for name in ("normal", "e1", "e2"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        vecs = (self.normal, self.e1, self.e2)
        for v in vecs:
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise DomainError("frame vectors must be unit length")
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(float(np.dot(vecs[i], vecs[j]))) > 1e-12:
                    raise DomainError("frame vectors must be pairwise orthogonal")

    @property
    def dim(self):
        return self.normal.shape[0]

    def embed(self, u):
        """Map planar angles ``u`` to ambient unit vectors cos(u) e1 + sin(u) e2."""
        u = np.asarray(u, dtype=float)
        return np.multiply.outer(np.cos(u), self.e1) + np.multiply.outer(np.sin(u), self.e2)


def frame_for(xi):
    """Deterministic :class:`PlaneFrame` for the hyperplane orthogonal to ``xi``.

    For a 3-vector of the form (x, 0, z) the frame is ``e1 = (z, 0, -x)``,
    ``e2 = (0, 1, 0)``, so planes tilted inside the xz-plane get the basis in
    which the tilt reads as a single angle.  Any other direction falls back to
    Gram-Schmidt against the first two standard basis vectors whose dot
    product with ``xi`` stays below 0.9 in absolute value.
    """
    xi = unit(xi)
    n = xi.shape[0]
    if n == 3 and abs(xi[1]) < 1e-14:
        e1 = unit(np.array([xi[2], 0.0, -xi[0]]))
        e2 = np.array([0.0, 1.0, 0.0])
        return PlaneFrame(xi, e1, e2)
    picked = []
    for i in range(n):
        cand = np.zeros(n)
        cand[i] = 1.0
        if abs(float(np.dot(cand, xi))) < 0.9:
            picked.append(cand)
        if len(picked) == 2:
            break
    e1 = unit(picked[0] - np.dot(picked[0], xi) * xi)
    e2 = picked[1] - np.dot(picked[1], xi) * xi - np.dot(picked[1], e1) * e1
    return PlaneFrame(xi, e1, unit(e2))


@dataclass(frozen=True, eq=False)
class Rotation:
    """A proper rotation, stored as its matrix.

    The matrix must be orthogonal within 1e-10 with determinant +1.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        n = m.shape[0]
        if m.shape != (n, n):
            raise DomainError("rotation matrix must be square")
        if not np.allclose(m @ m.T, np.eye(n), atol=1e-10):
            raise DomainError("rotation matrix is not orthogonal")
        if np.linalg.det(m) < 0.0:
            raise DomainError("rotation matrix must have determinant +1")

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n=3):
        return cls(np.eye(n))

    @classmethod
    def from_axis_angle(cls, axis, angle):
        """Rotation of ``angle`` radians about ``axis`` (3D, right handed)."""
        a = unit(axis)
        if a.shape[0] != 3:
            raise UnsupportedDimension("axis-angle form is 3D only")
        c, s = math.cos(angle), math.sin(angle)
        x, y, z = a
        k = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
        return cls(np.eye(3) + s * k + (1.0 - c) * (k @ k))

    def apply(self, v):
        """Rotate a single vector or a row-stacked batch."""
        v = np.asarray(v, dtype=float)
        if v.ndim == 1:
            return self.matrix @ v
        return v @ self.matrix.T

    def inverse(self):
        return Rotation(self.matrix.T.copy())

    def __matmul__(self, other):
        return Rotation(self.matrix @ other.matrix)


def random_rotations(count, seed, n=3):
    """Deterministic list of ``count`` uniform random rotations.

    For n = 3 each rotation is built from three uniform variates in the
    standard way: a rotation about the z-axis followed by the reflection
    composite through a random mirror plane, which together cover SO(3)
    uniformly.  Other dimensions use QR orthogonalization of a Gaussian
    matrix with the sign convention fixed.
    """
    rng = np.random.default_rng(seed)
    out = []
    if n == 3:
        x = rng.random((count, 3))
        for x1, x2, x3 in x:
            theta = 2.0 * math.pi * x1
            phi = 2.0 * math.pi * x2
            z = x3
            v = np.array(
                [math.cos(phi) * math.sqrt(z), math.sin(phi) * math.sqrt(z), math.sqrt(1.0 - z)]
            )
            rz = np.array(
                [
                    [math.cos(theta), -math.sin(theta), 0.0],
                    [math.sin(theta), math.cos(theta), 0.0],
                    [0.0, 0.0, 1.0],
                ]
            )
            out.append(Rotation((2.0 * np.outer(v, v) - np.eye(3)) @ rz))
        return out
    for _ in range(count):
        g = rng.standard_normal((n, n))
        q, r = np.linalg.qr(g)
        q = q * np.sign(np.diag(r))
        if np.linalg.det(q) < 0.0:
            q[:, 0] = -q[:, 0]
        out.append(Rotation(q))
    return out


def sphere_surface_area(n):
    """Surface area of the unit sphere S^(n-1) in R^n."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Quadrature nodes and weights on a unit sphere.

    Weights sum to the sphere surface area (checked at build time within
    1e-8).  Product grids cover S^2 with Gauss-Legendre nodes in the polar
    cosine crossed with uniform azimuths; Monte Carlo grids work in any
    dimension with equal weights.
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    _polar_t: np.ndarray | None = field(default=None, repr=False)
    _azimuth_count: int = field(default=0, repr=False)

    def __post_init__(self):
        total = float(np.sum(self.weights))
        if abs(total - sphere_surface_area(self.dim)) > 1e-8:
            raise DomainError("grid weights do not sum to the sphere area")

    @property
    def dim(self):
        return self.nodes.shape[1]

    @property
    def spacing(self):
        """Typical angular gap between neighboring nodes, in radians."""
        if self.kind == "product":
            return max(math.pi / max(len(self._polar_t), 1), 2.0 * math.pi / self._azimuth_count)
        return (sphere_surface_area(self.dim) / len(self)) ** (1.0 / (self.dim - 1))

    def __len__(self):
        return self.nodes.shape[0]

    def nearest_index(self, v):
        """Index of the node closest to direction ``v`` (product grids only)."""
        if self.kind != "product":
            raise DomainError("nearest_index is only available on product grids")
        v = unit(v)
        t = np.clip(v[2], -1.0, 1.0)
        i = int(np.argmin(np.abs(self._polar_t - t)))
        a = self._azimuth_count
        phi = math.atan2(v[1], v[0]) % (2.0 * math.pi)
        j = int(round(phi / (2.0 * math.pi / a))) % a
        return i * a + j


def sphere_grid(n, resolution=64, kind="product", seed=None, split_cos=()):
    """Build a :class:`SphereGrid`.

    Parameters
    ----------
    n : ambient dimension (the sphere is S^(n-1)).
    resolution : polar node count per panel for product grids; total node
        count for Monte Carlo grids.
    kind : "product" (n = 3 only) or "montecarlo".
    seed : RNG seed, required for Monte Carlo grids.
    split_cos : polar cosines where the integrand has kinks; each panel
        between consecutive split points gets its own Gauss-Legendre rule.
    """
    if kind == "product":
        if n != 3:
            raise UnsupportedDimension("product grids are implemented for n = 3 only")
        if resolution < 2:
            raise DomainError("resolution must be at least 2")
        cuts = sorted(set(float(t) for t in split_cos if -1.0 < t < 1.0))
        edges = [-1.0] + cuts + [1.0]
        x, w = np.polynomial.legendre.leggauss(resolution)
        ts = []
        tws = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            ts.append(0.5 * (hi - lo) * x + 0.5 * (hi + lo))
            tws.append(0.5 * (hi - lo) * w)
        t = np.concatenate(ts)
        tw = np.concatenate(tws)
        a = 2 * resolution
        phi = 2.0 * math.pi * np.arange(a) / a
        st = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
        nodes = np.empty((t.size * a, 3))
        nodes[:, 0] = np.outer(st, np.cos(phi)).ravel()
        nodes[:, 1] = np.outer(st, np.sin(phi)).ravel()
        nodes[:, 2] = np.repeat(t, a)
        weights = np.repeat(tw * (2.0 * math.pi / a), a)
        return SphereGrid(nodes, weights, "product", _polar_t=t, _azimuth_count=a)
    if kind == "montecarlo":
        if seed is None:
            raise DomainError("montecarlo grids require a seed")
        count = int(resolution)
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((count, n))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        nodes = g / norms
        weights = np.full(count, sphere_surface_area(n) / count)
        return SphereGrid(nodes, weights, "montecarlo")
    raise DomainError("unknown grid kind %r" % kind)
