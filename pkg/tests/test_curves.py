"""Support curves: arc structure, validity, reconstruction, comparisons."""

import numpy as np
import pytest

from convexip import (ball, body_from_curve, canonicalize_2d, combine_curves,
                      corefine, hausdorff, minkowski_sum, point,
                      polytope_from_points, scale, subset, support,
                      support_curve)
from convexip.body import Ball, MinkowskiSum, Point, Polytope
from convexip.supportcurve import SupportCurve, sample_support, support_gap
from convexip.body import _freeze

from oracles import circle_grid, grid_hausdorff


def test_triangle_arc_structure(right_triangle):
    c = support_curve(right_triangle)
    assert c.arcs == 3
    # breakpoints are the outward edge normals, sorted
    assert c.angles == pytest.approx([np.pi / 4, np.pi, 3 * np.pi / 2])
    assert c.gens.tolist() == [[0.0, 1.0], [0.0, 0.0], [1.0, 0.0]]
    # derivative jumps equal the lengths of the entered edges
    assert c.jumps() == pytest.approx([np.sqrt(2.0), 1.0, 1.0])
    assert c.is_valid()


def test_ball_curve_single_arc():
    c = support_curve(ball([0.5, -0.5], 2.0))
    assert c.arcs == 1
    assert c.offs[0] == 2.0
    assert c.value(0.0) == pytest.approx(2.5)


def test_curve_values_match_support(unit_square, unit_ball):
    mix = minkowski_sum(scale(unit_square, 0.7), scale(unit_ball, 0.4))
    c = support_curve(mix)
    for theta in np.linspace(0, 2 * np.pi, 37):
        u = np.array([np.cos(theta), np.sin(theta)])
        assert c.value(theta) == pytest.approx(support(mix, u), abs=1e-12)


def test_evaluate_vector_homogeneous(right_triangle):
    c = support_curve(right_triangle)
    # non-unit argument scales the value; the origin gives zero
    assert c.evaluate_vector([1.0, 1.0]) == pytest.approx(np.sqrt(2.0) *
                                                          c.value(np.pi / 4))
    assert c.evaluate_vector([0.0, 0.0]) == 0.0


def test_combine_is_pointwise(unit_square, right_triangle):
    ca, cb = support_curve(unit_square), support_curve(right_triangle)
    mix = combine_curves([ca, cb], [0.5, 2.0])
    for theta in np.linspace(0, 2 * np.pi, 29):
        want = 0.5 * ca.value(theta) + 2.0 * cb.value(theta)
        assert mix.value(theta) == pytest.approx(want, abs=1e-12)


def test_negative_combination_can_be_invalid(unit_square, right_triangle):
    diff = combine_curves([support_curve(right_triangle),
                           support_curve(unit_square)], [1.0, -1.0])
    assert not diff.is_valid()


def test_corefine_shares_grid_and_values(unit_square, right_triangle, unit_ball):
    curves = [support_curve(b) for b in
              (unit_square, right_triangle, unit_ball)]
    refined = corefine(curves)
    assert len({r.angles.shape[0] for r in refined}) == 1
    for orig, ref in zip(curves, refined):
        for theta in np.linspace(0, 2 * np.pi, 23):
            assert ref.value(theta) == pytest.approx(orig.value(theta),
                                                     abs=1e-12)


def test_body_from_curve_round_trip():
    rng = np.random.default_rng(11)
    for _ in range(30):
        poly = polytope_from_points(rng.normal(size=(6, 2)))
        body = minkowski_sum(poly, ball(np.zeros(2), float(rng.uniform(0, 1))))
        back = body_from_curve(support_curve(body))
        assert hausdorff(body, back) <= 1e-9


def test_body_from_curve_collapses_kinds(unit_square, unit_ball, origin):
    assert isinstance(canonicalize_2d(origin), Point)
    assert isinstance(canonicalize_2d(unit_ball), Ball)
    assert isinstance(canonicalize_2d(unit_square), Polytope)
    mixed = minkowski_sum(unit_square, unit_ball)
    back = canonicalize_2d(mixed)
    assert isinstance(back, MinkowskiSum)


def test_body_from_curve_rejects_invalid(unit_square, right_triangle):
    diff = combine_curves([support_curve(right_triangle),
                           support_curve(unit_square)], [1.0, -1.0])
    with pytest.raises(ValueError):
        body_from_curve(diff)


def test_body_from_curve_rejects_nonuniform_constants():
    # hull of the origin and an off-center unit ball: a genuine support
    # function whose ball radius differs between arcs
    curve = SupportCurve(_freeze([0.0, np.pi / 2]), _freeze([0.0, -1.0]),
                         _freeze([0.0, -1.0]), _freeze([0.0, 1.0]))
    assert curve.is_valid()
    with pytest.raises(ValueError):
        body_from_curve(curve)


def test_canonicalize_merges_duplicate_summands(unit_square):
    four = minkowski_sum(unit_square, unit_square, unit_square, unit_square)
    canon = canonicalize_2d(four)
    assert isinstance(canon, Polytope)
    assert canon.vertices.shape == (4, 2)


def test_subset_and_hausdorff_exact(centered_square, unit_ball):
    assert subset(unit_ball, centered_square)
    assert not subset(centered_square, unit_ball)
    assert hausdorff(centered_square, unit_ball) == pytest.approx(
        np.sqrt(2.0) - 1.0, abs=1e-12)
    assert support_gap(centered_square, unit_ball) == pytest.approx(
        np.sqrt(2.0) - 1.0, abs=1e-12)


def test_hausdorff_matches_grid_oracle():
    rng = np.random.default_rng(23)
    for _ in range(20):
        a = polytope_from_points(rng.normal(size=(5, 2)))
        b = minkowski_sum(polytope_from_points(rng.normal(size=(4, 2))),
                          ball(np.zeros(2), float(rng.uniform(0, 0.5))))
        exact = hausdorff(a, b)
        approx = grid_hausdorff(a, b, m=4096)
        assert exact >= approx - 1e-12  # the grid can only undershoot
        # near a kink the grid misses by at most slope * step / 2
        assert exact == pytest.approx(approx, abs=5e-3)


def test_subset_translation_sensitivity(centered_square):
    from convexip import translate

    inner = scale(centered_square, 0.5)
    assert subset(inner, centered_square)
    assert not subset(translate(inner, [0.6, 0.0]), centered_square)


def test_1d_subset_via_supports():
    iv = polytope_from_points([[0.0], [1.0]])
    assert subset(point([0.5]), iv)
    assert not subset(point([-1.0]), iv)


def test_sample_support_validates(unit_square):
    dirs = circle_grid(16)
    w = np.full(16, 2 * np.pi / 16)
    s = sample_support(unit_square, dirs, w)
    assert s.total_weight == pytest.approx(2 * np.pi)
    with pytest.raises(ValueError):
        sample_support(unit_square, dirs * 2.0, w)  # non-unit directions
    with pytest.raises(ValueError):
        sample_support(unit_square, dirs, -w)
