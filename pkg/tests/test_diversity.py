"""Diversities induced by set products on finite point sets."""

import numpy as np
import pytest

from convexip import (diversity, diversity_axiom_check, matrix1d, point_set,
                      spherical_l2, union)
from convexip.diversity import point_set_from_json, point_set_to_json
from convexip.samplers import random_point_set

EXACT = spherical_l2()


def test_singletons_have_zero_diversity():
    assert diversity(EXACT, point_set([[3.0, -1.0]])) == 0.0


def test_two_point_diversity_is_their_distance():
    # difference body of a segment with step d has support |d . u|, so
    # the squared diversity integrates to |d|^2 exactly
    assert diversity(EXACT, point_set([[0.0, 0.0], [1.0, 0.0]])) == \
        pytest.approx(1.0, abs=1e-12)
    rng = np.random.default_rng(31)
    for _ in range(25):
        p, q = rng.normal(size=(2, 2))
        got = diversity(EXACT, point_set([p, q]))
        assert got == pytest.approx(float(np.linalg.norm(p - q)), abs=1e-9)


def test_translation_invariance_and_homogeneity():
    rng = np.random.default_rng(37)
    for _ in range(15):
        pts = rng.normal(size=(5, 2))
        base = diversity(EXACT, point_set(pts))
        assert diversity(EXACT, point_set(pts + [10.0, -4.0])) == \
            pytest.approx(base, abs=1e-9)
        assert diversity(EXACT, point_set(3.0 * pts)) == \
            pytest.approx(3.0 * base, abs=1e-9)


def test_adding_points_never_shrinks():
    rng = np.random.default_rng(43)
    for _ in range(25):
        pts = rng.normal(size=(4, 2))
        extra = rng.normal(size=(1, 2))
        small = diversity(EXACT, point_set(pts))
        grown = diversity(EXACT, point_set(np.vstack((pts, extra))))
        assert grown >= small - 1e-9


def test_interior_points_do_not_matter():
    outer = [[0.0, 0.0], [4.0, 0.0], [0.0, 4.0], [4.0, 4.0]]
    assert diversity(EXACT, point_set(outer + [[2.0, 2.0]])) == \
        pytest.approx(diversity(EXACT, point_set(outer)), abs=1e-12)


def test_axiom_report_on_random_sets():
    report = diversity_axiom_check(EXACT, random_point_set, 100, seed=11)
    assert report.passed
    assert set(report.results) == {"positivity", "triangle", "monotonicity",
                                   "union_bound"}


def test_one_dimensional_interval_diversity():
    spec = matrix1d(np.eye(2))
    s = point_set([[0.0], [1.0]])
    # difference body [-1, 1] maps to the form vector (1, 1)
    assert diversity(spec, s) == pytest.approx(np.sqrt(2.0), abs=1e-12)

    def sampler(rng):
        return point_set(rng.normal(size=(int(rng.integers(1, 5)), 1)))

    report = diversity_axiom_check(spec, sampler, 100, seed=13)
    assert report.passed


def test_union_merges_and_dedups():
    a = point_set([[0.0, 0.0], [1.0, 0.0]])
    b = point_set([[1.0, 0.0], [2.0, 2.0]])
    u = union(a, b)
    assert u.size == 3


def test_point_set_validation():
    with pytest.raises(ValueError):
        point_set(np.empty((0, 2)))
    with pytest.raises(ValueError):
        point_set([[np.nan, 0.0]])
    with pytest.raises(ValueError):
        union(point_set([[0.0, 0.0]]), point_set([[0.0]]))
    assert point_set([[1.0, 1.0], [1.0, 1.0]]).size == 1


def test_spec_dimension_checked():
    with pytest.raises(ValueError):
        diversity(spherical_l2(dim=3), point_set([[0.0, 0.0]]))
    with pytest.raises(ValueError):
        diversity(matrix1d(np.eye(2)), point_set([[0.0, 0.0], [1.0, 1.0]]))


def test_point_set_json_round_trip():
    s = point_set([[0.5, -1.5], [2.0, 0.25]])
    back = point_set_from_json(point_set_to_json(s))
    assert np.array_equal(back.points, s.points)
    with pytest.raises(ValueError):
        point_set_from_json({"points": "nope"})
    with pytest.raises(ValueError):
        point_set_from_json({})
