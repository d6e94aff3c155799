"""Spherical quadrature: volumes, Cauchy surface area, volume reports."""

import math

import numpy as np
import pytest

from shadowfit.bodies import (
    Ball,
    BumpSphere,
    Cylinder,
    DoubleCone,
    PolarOf,
    apply_rotation,
    convex_body,
    dilate,
    star_body,
)
from shadowfit.errors import DomainError, HypothesisFailed, UnsupportedDimension
from shadowfit.fitting import FitConfig
from shadowfit.geom import Rotation, sphere_grid
from shadowfit.integrals import (
    VolumeReport,
    averaged_section_power,
    constant_width_check,
    kink_cosines,
    mean_support,
    surface_area_cauchy,
    volume,
    volume_comparison_report,
    volume_grid,
)

SMALL_CFG = FitConfig(angle_grid=16, u_grid=64, refine_iters=5)


def test_kink_cosines_catalog():
    assert kink_cosines(Ball(1.0)) == ()
    r, hh = 0.7, 1.1
    c = hh / math.hypot(r, hh)
    assert kink_cosines(Cylinder(r, hh)) == (-c, c)
    assert kink_cosines(Cylinder(r, hh), "support") == (0.0,)
    a, h = 0.8, 1.2
    cc = a / math.hypot(a, h)
    assert kink_cosines(DoubleCone(a, h)) == (0.0,)
    assert kink_cosines(DoubleCone(a, h), "support") == (-cc, cc)
    bump = BumpSphere(np.array([[0.0, 0.0, 1.0]]), np.array([0.2]), np.array([0.01]))
    assert kink_cosines(bump) == ()
    # polarity swaps the oracle, dilation passes through
    assert kink_cosines(PolarOf(bump)) == ()
    assert kink_cosines(dilate(Cylinder(r, hh), 2.0)) == (-c, c)
    with pytest.raises(DomainError):
        kink_cosines(Ball(1.0), "weird")


def test_kink_cosines_rotation():
    r, hh = 0.7, 1.1
    c = hh / math.hypot(r, hh)
    z = np.array([0.0, 0.0, 1.0])
    x = np.array([1.0, 0.0, 0.0])
    spin = apply_rotation(Cylinder(r, hh), Rotation.from_axis_angle(z, 0.8))
    assert kink_cosines(spin) == (-c, c)
    flip = apply_rotation(Cylinder(r, hh), Rotation.from_axis_angle(x, math.pi))
    assert kink_cosines(flip) == (-c, c)
    tilted = apply_rotation(Cylinder(r, hh), Rotation.from_axis_angle(x, 0.3))
    assert kink_cosines(tilted) is None


def test_volume_closed_forms():
    assert abs(volume(star_body(Ball(1.3)), volume_grid(Ball(1.3))) - (4.0 / 3.0) * math.pi * 1.3**3) < 1e-8
    r, hh = 0.7, 1.1
    cyl = Cylinder(r, hh)
    v = volume(star_body(cyl), volume_grid(cyl))
    exact = 2.0 * math.pi * r * r * hh
    assert abs(v - exact) / exact < 1e-12
    # the cone integrand keeps a sqrt singularity at the poles, so the
    # quadrature converges polynomially there rather than spectrally
    a, c = 0.8, 1.2
    cone = DoubleCone(a, c)
    v = volume(star_body(cone), volume_grid(cone))
    exact = (2.0 / 3.0) * math.pi * a * a * c
    assert abs(v - exact) / exact < 1e-4


def test_volume_polar_and_dilated():
    r, hh = 0.7, 1.1
    pol = PolarOf(Cylinder(r, hh))
    v = volume(star_body(pol), volume_grid(pol))
    exact = (2.0 / 3.0) * math.pi / (r * r * hh)
    assert abs(v - exact) / exact < 1e-5
    big = dilate(Cylinder(r, hh), 1.5)
    v2 = volume(star_body(big), volume_grid(big))
    assert abs(v2 - 1.5**3 * 2.0 * math.pi * r * r * hh) / v2 < 1e-12


def test_volume_of_bump_body_barely_exceeds_sphere():
    bump = BumpSphere(np.array([[0.0, 0.0, 1.0]]), np.array([0.2]), np.array([0.01]))
    v = volume(star_body(bump), volume_grid(bump, resolution=64))
    ball = (4.0 / 3.0) * math.pi
    assert ball < v < ball + 1e-2


def test_volume_dimension_handling():
    flat4 = BumpSphere(np.eye(4)[:1], np.array([0.3]), np.array([0.0]))
    with pytest.raises(DomainError):
        volume(star_body(flat4), sphere_grid(3, resolution=16))
    with pytest.raises(UnsupportedDimension):
        volume_grid(flat4)
    # in 4D the weights integrate exactly: the round body gives pi^2/2
    g4 = sphere_grid(4, resolution=2000, kind="montecarlo", seed=3)
    assert abs(volume(star_body(flat4), g4) - math.pi**2 / 2.0) < 1e-12


def test_surface_area_cauchy_ball():
    s = surface_area_cauchy(convex_body(Ball(1.0)), sphere_grid(3, resolution=16))
    assert abs(s - 4.0 * math.pi) / (4.0 * math.pi) < 1e-5


def test_surface_area_cauchy_cylinder():
    # the projected-area integrand has an equatorial kink: split the grid
    r = 0.51
    grid = sphere_grid(3, resolution=16, split_cos=(0.0,))
    s = surface_area_cauchy(convex_body(Cylinder(r, r)), grid)
    exact = 6.0 * math.pi * r * r
    assert abs(s - exact) / exact < 1e-3


def test_surface_area_thread_invariant(monkeypatch):
    grid = sphere_grid(3, resolution=8)
    body = convex_body(Cylinder(0.6, 0.8))
    serial = surface_area_cauchy(body, grid)
    monkeypatch.setenv("SHADOWFIT_THREADS", "3")
    assert surface_area_cauchy(body, grid) == serial


def test_mean_support():
    g = sphere_grid(3, resolution=48)
    assert abs(mean_support(convex_body(Ball(1.0)), g) - 4.0 * math.pi) < 1e-8
    base = mean_support(convex_body(Cylinder(0.6, 0.8)), g)
    scaled = mean_support(convex_body(dilate(Cylinder(0.6, 0.8), 2.0)), g)
    assert abs(scaled - 2.0 * base) < 1e-10


def test_constant_width_check():
    ok, residual = constant_width_check(convex_body(Ball(1.0)), sphere_grid(3, resolution=16))
    assert ok and residual < 1e-3
    ok, residual = constant_width_check(convex_body(Cylinder(0.6, 0.8)), sphere_grid(3, resolution=16))
    assert not ok
    assert residual > 0.1  # the identity is far off for a non-constant width


def test_volume_report_renderings():
    rep = VolumeReport(
        mode="sections",
        vol_K=1.0,
        vol_L=2.0,
        satisfied=True,
        resolution=8,
        tolerance=1e-3,
        directions_checked=128,
        min_fit_margin=0.25,
    )
    lines = rep.to_csv().splitlines()
    assert lines[0] == "mode,vol_K,vol_L,satisfied,resolution,tolerance,directions_checked,min_fit_margin"
    assert lines[1].startswith("sections,1,2,1,8,")
    assert "vol_K <= vol_L + tol" in rep.to_text()
    proj = VolumeReport("projections", 1.0, 2.0, False, 8, 1e-3, 128, 0.0)
    assert "vol_K >= vol_L - tol" in proj.to_text()


def test_volume_comparison_report_sections():
    rep = volume_comparison_report(
        Ball(0.9), Ball(1.0), grid=sphere_grid(3, resolution=2), cfg=SMALL_CFG
    )
    assert rep.mode == "sections" and rep.satisfied
    assert abs(rep.vol_K - (4.0 / 3.0) * math.pi * 0.9**3) < 1e-6
    assert abs(rep.vol_L - (4.0 / 3.0) * math.pi) < 1e-6
    assert rep.resolution == 2 and rep.directions_checked == 8
    assert abs(rep.min_fit_margin - 0.1) < 1e-9


def test_volume_comparison_report_projections():
    rep = volume_comparison_report(
        Ball(0.9), Ball(1.0), mode="projections", grid=sphere_grid(3, resolution=2), cfg=SMALL_CFG
    )
    # polar volumes: the smaller body has the larger polar
    assert rep.satisfied
    assert abs(rep.vol_K - (4.0 / 3.0) * math.pi / 0.9**3) < 1e-6
    assert abs(rep.vol_L - (4.0 / 3.0) * math.pi) < 1e-6


def test_volume_comparison_report_hypothesis_failure():
    with pytest.raises(HypothesisFailed) as err:
        volume_comparison_report(
            Ball(1.2), Ball(1.0), grid=sphere_grid(3, resolution=2), cfg=SMALL_CFG
        )
    assert err.value.direction.shape == (3,)


def test_volume_comparison_report_validation():
    with pytest.raises(DomainError):
        volume_comparison_report(Ball(1.0), Ball(1.0), mode="weird")
    flat4 = BumpSphere(np.eye(4)[:1], np.array([0.3]), np.array([0.0]))
    with pytest.raises(DomainError):
        volume_comparison_report(flat4, Ball(1.0))
    with pytest.raises(UnsupportedDimension):
        volume_comparison_report(flat4, flat4)


def test_averaged_section_power():
    asp = averaged_section_power(star_body(Ball(1.0)), sphere_grid(3, resolution=8))
    assert abs(asp - 8.0 * math.pi**2) / (8.0 * math.pi**2) < 1e-12
    # power and radius scaling
    asp2 = averaged_section_power(star_body(Ball(1.3)), sphere_grid(3, resolution=8), power=2)
    assert abs(asp2 - 8.0 * math.pi**2 * 1.3**2) / asp2 < 1e-12
