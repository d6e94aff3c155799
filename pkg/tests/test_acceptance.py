"""End-to-end acceptance checks.

One test per criterion, in order; each prints a one-line verdict (visible
with ``pytest -s``) and the test name itself carries the criterion number
for the ``pytest -v`` listing.  The expensive pipelines (the 200-tilt
section sweep and the full bumpy-sphere run) are computed once in
module-scoped fixtures and reused, including for the thread-determinism
comparison at the end.
"""

import math
import os
import time

import numpy as np
import pytest

from shadowfit.bodies import (
    Ball,
    Cylinder,
    DoubleCone,
    convex_body,
    polar,
    radial,
    star_body,
    support,
)
from shadowfit.casestudies import (
    R_UPPER,
    _angles_any,
    build_bump_bodies,
    convexity_check,
    critical_angles,
    crosscheck_critical_angles,
    quarter_tilt_check,
    rim_escape_witness,
    verify_bump_case,
    verify_cylinder_cone,
)
from shadowfit.fitting import so3_fit_search
from shadowfit.geom import frame_for, random_rotations, sphere_grid, unit
from shadowfit.integrals import (
    constant_width_check,
    surface_area_cauchy,
    volume,
    volume_comparison_report,
    volume_grid,
)
from shadowfit.shadows import projection_shadow, section_shadow
from shadowfit._report import csv_text

R = 0.51
CYL = Cylinder(R, R)
CONE = DoubleCone(1.0, 1.0)


@pytest.fixture(autouse=True)
def _serial_env():
    # acceptance baselines run single-threaded; criterion 9 flips the
    # switch explicitly
    old = os.environ.pop("SHADOWFIT_THREADS", None)
    yield
    if old is not None:
        os.environ["SHADOWFIT_THREADS"] = old


@pytest.fixture(scope="module")
def verify3d_report():
    return verify_cylinder_cone(R, theta_grid=200)


def _witness_rows(phi_count):
    rows = []
    for i in range(phi_count):
        phi = (i + 1) * 0.5 * math.pi / phi_count
        point, margin = rim_escape_witness(R, phi)
        rows.append((phi, float(point[0]), float(point[1]), float(point[2]), margin))
    return rows


@pytest.fixture(scope="module")
def bump_bodies():
    return build_bump_bodies()


@pytest.fixture(scope="module")
def bump_report(bump_bodies):
    first, second = bump_bodies
    return verify_bump_case(first, second, n_sections=500, n_rotations=10000, seed=42)


def test_criterion_1_critical_angles_match_high_precision():
    import mpmath as mp

    start = time.perf_counter()
    ang = critical_angles(R)
    with mp.workdps(40):
        r = mp.mpf(R)
        root = mp.sqrt(4 * r * r - 1)
        t0 = mp.atan((1 - r) / r)
        t1 = mp.acos(-1 + root / (2 * r * r)) / 2
        t2 = mp.acos(-root / (2 * r * r)) / 2
        errs = (
            abs(ang.theta0 - float(t0)),
            abs(ang.theta1 - float(t1)),
            abs(ang.theta2 - float(t2)),
        )
    assert max(errs) < 1e-9
    b1, b2 = crosscheck_critical_angles(R)
    assert abs(b1 - ang.theta1) < 1e-6
    assert abs(b2 - ang.theta2) < 1e-6
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(
        "criterion 1: PASS (closed-form err %.1e, bisection err %.1e, %.1fs)"
        % (max(errs), max(abs(b1 - ang.theta1), abs(b2 - ang.theta2)), elapsed)
    )


def test_criterion_2_angle_ordering_across_radius_window():
    lo, hi = 0.5 + 1e-6, R_UPPER - 1e-6
    gaps = []
    for r in np.linspace(lo, hi, 50):
        ang = critical_angles(float(r))
        assert ang.theta2 < ang.theta1
        gaps.append(ang.theta1 - ang.theta2)
    end = _angles_any(R_UPPER)
    assert abs(end.theta1 - end.theta2) < 1e-6
    print(
        "criterion 2: PASS (min regime overlap %.3e, endpoint gap %.1e)"
        % (min(gaps), abs(end.theta1 - end.theta2))
    )


def test_criterion_3_section_sweep_verified(verify3d_report):
    rep = verify3d_report
    assert rep.verified
    assert len(rep.rows) == 200
    for theta, name, margin, blind_angle, blind_margin in rep.rows:
        assert margin >= 0.0
        assert blind_margin >= -1e-9
    neg_disc, quarter_margin = quarter_tilt_check(R)
    assert neg_disc
    assert quarter_margin > 0.0
    assert rep.runtime < 120.0
    print(
        "criterion 3: PASS (min strategy margin %.3e, quarter-tilt margin %.3e, %.1fs)"
        % (min(row[2] for row in rep.rows), quarter_margin, rep.runtime)
    )


def test_criterion_4_rim_escape_and_rotation_search():
    rows = _witness_rows(100)
    expected = 2.0 * R - 1.0
    worst = max(abs(row[4] - expected) for row in rows)
    assert worst < 1e-12
    hit = so3_fit_search(
        CYL, CONE, random_rotations(10000, seed=0), sphere_grid(3, resolution=64)
    )
    assert hit is None
    print(
        "criterion 4: PASS (100 witnesses at margin %.2f within %.1e, 10000 rotations rejected)"
        % (expected, worst)
    )


def test_criterion_5_volumes_and_polarity():
    ball_err = abs(volume(star_body(Ball(1.0)), volume_grid(Ball(1.0))) - 4.0 * math.pi / 3.0)
    assert ball_err < 1e-8
    cyl_exact = 2.0 * math.pi * R**3
    cyl_err = abs(volume(star_body(CYL), volume_grid(CYL)) - cyl_exact) / cyl_exact
    assert cyl_err < 1e-5
    cone_exact = 2.0 * math.pi / 3.0
    cone_err = abs(volume(star_body(CONE), volume_grid(CONE)) - cone_exact) / cone_exact
    assert cone_err < 1e-4

    rng = np.random.default_rng(123)
    dirs = rng.standard_normal((1000, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    round_err = 0.0
    for spec in (CYL, CONE, Ball(1.3)):
        prod = np.asarray(radial(polar(spec), dirs), float) * np.asarray(
            support(spec, dirs), float
        )
        round_err = max(round_err, float(np.max(np.abs(prod - 1.0))))
    assert round_err < 1e-10

    sec_err = 0.0
    u = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
    for _ in range(20):
        frame = frame_for(unit(rng.standard_normal(3)))
        s = section_shadow(polar(CYL), frame)
        p = projection_shadow(CYL, frame)
        sec_err = max(sec_err, float(np.max(np.abs(s.values(u) * p.values(u) - 1.0))))
    assert sec_err < 1e-10
    print(
        "criterion 5: PASS (vol errs %.1e/%.1e/%.1e, polar roundtrip %.1e, section polarity %.1e)"
        % (ball_err, cyl_err, cone_err, round_err, sec_err)
    )


def test_criterion_6_volume_comparison_reports():
    rep = volume_comparison_report(CYL, CONE, mode="sections")
    assert rep.satisfied
    assert rep.directions_checked == 128
    vol_k_exact = 2.0 * math.pi * R**3
    vol_l_exact = 2.0 * math.pi / 3.0
    assert abs(rep.vol_K - vol_k_exact) / vol_k_exact < 1e-3
    assert abs(rep.vol_L - vol_l_exact) / vol_l_exact < 1e-3
    assert rep.vol_K <= rep.vol_L + 1e-3

    rep_p = volume_comparison_report(CYL, CONE, mode="projections")
    assert rep_p.satisfied
    polar_k_exact = 2.0 * math.pi / (3.0 * R**3)
    polar_l_exact = 2.0 * math.pi
    assert abs(rep_p.vol_K - polar_k_exact) / polar_k_exact < 1e-3
    assert abs(rep_p.vol_L - polar_l_exact) / polar_l_exact < 1e-3
    assert rep_p.vol_K >= rep_p.vol_L - 1e-3
    print(
        "criterion 6: PASS (sections %.4f <= %.4f, polar volumes %.4f >= %.4f)"
        % (rep.vol_K, rep.vol_L, rep_p.vol_K, rep_p.vol_L)
    )


def test_criterion_7_surface_area_and_width_identity():
    ball_s = surface_area_cauchy(convex_body(Ball(1.0)), sphere_grid(3, resolution=16))
    ball_err = abs(ball_s - 4.0 * math.pi) / (4.0 * math.pi)
    assert ball_err < 1e-3
    cyl_s = surface_area_cauchy(
        convex_body(CYL), sphere_grid(3, resolution=16, split_cos=(0.0,))
    )
    cyl_exact = 6.0 * math.pi * R * R
    cyl_err = abs(cyl_s - cyl_exact) / cyl_exact
    assert cyl_err < 1e-3
    is_cw, residual = constant_width_check(convex_body(Ball(1.0)), sphere_grid(3, resolution=16))
    assert is_cw and residual < 1e-3
    print(
        "criterion 7: PASS (sphere area err %.1e, cylinder area err %.1e, width residual %.1e)"
        % (ball_err, cyl_err, residual)
    )


def test_criterion_8_bump_pair_dichotomy(bump_bodies, bump_report):
    first, second = bump_bodies
    assert convexity_check(first)
    assert convexity_check(second)
    rep = bump_report
    assert rep.verified
    sections = [row for row in rep.rows if row[0] == "section"]
    rotations = [row for row in rep.rows if row[0] == "rotation"]
    assert len(sections) == 500 and len(rotations) == 10000
    assert all(row[6] >= -1e-9 for row in sections)
    assert all(row[6] > 0.0 for row in rotations)
    assert rep.runtime < 300.0
    print(
        "criterion 8: PASS (min fit margin %.1e, min rotation excess %.2e, %.0fs)"
        % (rep.min_margin, dict(rep.params)["min_rotation_excess"], rep.runtime)
    )


def test_criterion_9_threaded_reruns_are_byte_identical(verify3d_report, bump_report):
    serial_3 = verify3d_report.to_csv().encode()
    serial_4 = csv_text(("phi", "x", "y", "z", "margin"), _witness_rows(100)).encode()
    serial_8 = bump_report.to_csv().encode()
    os.environ["SHADOWFIT_THREADS"] = "2"
    try:
        rerun_3 = verify_cylinder_cone(R, theta_grid=200).to_csv().encode()
        rerun_4 = csv_text(("phi", "x", "y", "z", "margin"), _witness_rows(100)).encode()
        first, second = build_bump_bodies()
        rerun_8 = (
            verify_bump_case(first, second, n_sections=500, n_rotations=10000, seed=42)
            .to_csv()
            .encode()
        )
    finally:
        os.environ.pop("SHADOWFIT_THREADS", None)
    assert rerun_3 == serial_3
    assert rerun_4 == serial_4
    assert rerun_8 == serial_8
    print(
        "criterion 9: PASS (CSV bytes stable across thread counts: %d/%d/%d bytes)"
        % (len(serial_3), len(serial_4), len(serial_8))
    )
