"""Backend agreement: the compiled kernels must match the numpy reference."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

from shadowfit._kernels import _ref

_fast = pytest.importorskip(
    "shadowfit._kernels._fast", reason="compiled kernel backend did not build"
)


def test_compiled_backend_is_present():
    # the build is expected to produce the extension; importorskip above
    # already failed the collection if not, this documents the intent
    assert _fast.BACKEND == "compiled"
    assert _ref.BACKEND == "python"


def test_pure_env_switch_selects_reference_backend():
    env = dict(os.environ, SHADOWFIT_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import shadowfit; print(shadowfit.kernel_backend)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "python"


def _close(a, b, tol=1e-13):
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    assert a.shape == b.shape
    scale = np.maximum(1.0, np.abs(a))
    assert np.all(np.abs(a - b) <= tol * scale)


def test_section_curves_agree():
    rng = np.random.default_rng(0)
    u = rng.uniform(-7.0, 7.0, size=400)
    for theta in np.linspace(0.0, 0.5 * math.pi, 23):
        _close(_ref.cone_section_radial(theta, u), _fast.cone_section_radial(theta, u))
        for r in (0.51, 0.52, 0.7):
            _close(
                _ref.cylinder_section_radial(r, theta, u),
                _fast.cylinder_section_radial(r, theta, u),
            )


def test_body_oracles_agree():
    rng = np.random.default_rng(1)
    dirs = rng.standard_normal((500, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    # include the axis and equator limits where branches switch
    dirs = np.vstack([dirs, [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]]])
    for fn in ("cylinder_radial", "cylinder_support"):
        _close(getattr(_ref, fn)(0.51, 0.51, dirs), getattr(_fast, fn)(0.51, 0.51, dirs))
    for fn in ("double_cone_radial", "double_cone_support"):
        _close(getattr(_ref, fn)(1.0, 1.0, dirs), getattr(_fast, fn)(1.0, 1.0, dirs))
        _close(getattr(_ref, fn)(0.4, 2.0, dirs), getattr(_fast, fn)(0.4, 2.0, dirs))


def test_cap_profile_agrees_and_clips():
    x = np.array([-0.5, 0.0, 0.3, 0.999, 1.0, 2.5])
    _close(_ref.cap_profile(x), _fast.cap_profile(x))
    assert float(_fast.cap_profile(1.7)) == 0.0
    assert float(_fast.cap_profile(0.0)) == 1.0


def test_bump_and_ring_agree():
    rng = np.random.default_rng(2)
    dirs = rng.standard_normal((300, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    centers = rng.standard_normal((4, 3))
    centers /= np.linalg.norm(centers, axis=1, keepdims=True)
    radii = np.array([0.2, 0.5, 0.05, 1.0])
    heights = np.array([0.1, 0.02, 1.0, 0.3])
    _close(
        _ref.bump_sum(dirs, centers, radii, heights),
        _fast.bump_sum(dirs, centers, radii, heights),
    )
    _close(_ref.ring_sum(dirs, 0.25, 0.3), _fast.ring_sum(dirs, 0.25, 0.3))
    _close(_ref.ring_sum(dirs, 0.0, 0.3), _fast.ring_sum(dirs, 0.0, 0.3))


def test_scalar_and_batch_shapes_match():
    u = 0.37
    a = _ref.cone_section_radial(1.1, u)
    b = _fast.cone_section_radial(1.1, u)
    assert np.ndim(a) == np.ndim(b) == 0
    _close(a, b)
    d = np.array([0.6, 0.0, 0.8])
    _close(_ref.cylinder_radial(0.51, 0.51, d), _fast.cylinder_radial(0.51, 0.51, d))
    batch = np.stack([d, -d]).reshape(2, 1, 3)
    out = _fast.cylinder_support(0.51, 0.51, batch)
    assert out.shape == (2, 1)
    _close(_ref.cylinder_support(0.51, 0.51, batch), out)
