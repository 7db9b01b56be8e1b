"""The closed-form arc kernels against their vectorized twins and
against brute-force quadrature.

The loop builds and the numpy builds are separate derivations of the
same integrals; agreement between them, and between either and the
midpoint rule, is the correctness argument for the exact 2D paths.
"""

import numpy as np
import pytest

from convexip import support, support_curve
from convexip._kernels import (_moment_loop, _moment_np,
                               _product_integral_loop, _product_integral_np,
                               _sup_difference_loop, _sup_difference_np,
                               curve_moment, product_integral, sup_difference)
from convexip.samplers import random_body

from oracles import circle_grid, quadrature_ip, quadrature_moment

PI = np.pi


def _args(curve):
    return curve.angles, curve.ax, curve.ay, curve.offs


def _random_curves(seed, n):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        body = random_body(rng)
        if body.dim != 2:
            continue
        out.append((body, support_curve(body)))
    return out


def test_product_integral_twins_agree():
    pairs = _random_curves(101, 40)
    for (_, ca), (_, cb) in zip(pairs, pairs[1:]):
        loop = _product_integral_loop(*_args(ca), *_args(cb))
        vec = _product_integral_np(*_args(ca), *_args(cb))
        assert loop == pytest.approx(vec, rel=1e-12, abs=1e-12)


def test_product_integral_symmetric():
    pairs = _random_curves(102, 20)
    for (_, ca), (_, cb) in zip(pairs, pairs[1:]):
        fwd = product_integral(*_args(ca), *_args(cb))
        rev = product_integral(*_args(cb), *_args(ca))
        assert fwd == pytest.approx(rev, rel=1e-12, abs=1e-12)


def test_product_integral_matches_quadrature():
    for (a, ca), (b, cb) in zip(_random_curves(103, 12),
                                _random_curves(104, 12)):
        exact = product_integral(*_args(ca), *_args(cb)) / PI
        assert exact == pytest.approx(quadrature_ip(a, b, m=20000),
                                      rel=1e-5, abs=1e-6)


def test_moment_twins_agree():
    for _, c in _random_curves(105, 30):
        lx, ly = _moment_loop(*_args(c))
        vx, vy = _moment_np(*_args(c))
        assert lx == pytest.approx(vx, rel=1e-12, abs=1e-12)
        assert ly == pytest.approx(vy, rel=1e-12, abs=1e-12)


def test_moment_matches_quadrature():
    for body, c in _random_curves(106, 12):
        mx, my = curve_moment(*_args(c))
        want = quadrature_moment(body, m=20000)
        assert mx / PI == pytest.approx(want[0], abs=1e-6)
        assert my / PI == pytest.approx(want[1], abs=1e-6)


def test_sup_difference_twins_agree():
    pairs = _random_curves(107, 40)
    for absolute in (True, False):
        for (_, ca), (_, cb) in zip(pairs, pairs[1:]):
            loop = _sup_difference_loop(*_args(ca), *_args(cb), absolute)
            vec = _sup_difference_np(*_args(ca), *_args(cb), absolute)
            assert loop == pytest.approx(vec, rel=1e-12, abs=1e-12)


def test_sup_difference_matches_grid():
    dirs = circle_grid(4096)
    pairs = _random_curves(108, 24)
    for (a, ca), (b, cb) in zip(pairs, pairs[1:]):
        gaps = np.array([support(a, u) - support(b, u) for u in dirs])
        for absolute, grid in ((True, float(np.max(np.abs(gaps)))),
                               (False, float(np.max(gaps)))):
            exact = sup_difference(*_args(ca), *_args(cb), absolute)
            assert exact >= grid - 1e-12
            assert exact == pytest.approx(grid, abs=5e-3)


def test_sup_difference_signed_one_sided(unit_square):
    # square against its shrunken copy: the signed sup in one order is
    # positive, in the other strictly negative
    from convexip import scale

    big, small = support_curve(unit_square), None
    small = support_curve(scale(unit_square, 0.5))
    assert sup_difference(*_args(big), *_args(small), False) > 0.0
    shrunk = sup_difference(*_args(small), *_args(big), False)
    assert shrunk == pytest.approx(0.0, abs=1e-15)  # both contain the origin


def test_circle_constant_integral():
    # two unit balls at the origin: integrand is 1, integral 2*pi
    from convexip import ball

    c = support_curve(ball([0.0, 0.0], 1.0))
    assert product_integral(*_args(c), *_args(c)) == pytest.approx(
        2 * PI, abs=1e-12)
