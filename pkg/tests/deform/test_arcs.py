import math

import numpy as np
import pytest

from toruslab import models
from toruslab.deform import (
    arc_from_circle,
    arc_from_parametric,
    close_arc,
    curve_product,
    spline_arc,
    truncate_curve,
)
from toruslab.errors import DomainError, NonRegularJoinError
from toruslab.sphere import Equator
from toruslab.surfaces import line_of_curvature

V0 = Equator(v=np.array([0.0, 1.0, 0.0, 0.0]))


def make_circle():
    return line_of_curvature(2, 0, models.CurveFamily.PHI).circle


def great_circle_arc(t0: float, t1: float):
    def jet(t):
        x = np.stack([np.cos(t), 0.0 * t, np.sin(t), 0.0 * t], axis=-1)
        dx = np.stack([-np.sin(t), 0.0 * t, np.cos(t), 0.0 * t], axis=-1)
        return x, dx, -x

    return arc_from_parametric(jet, t0, t1, V0)


def test_circle_arc_has_constant_curvature():
    arc = arc_from_circle(make_circle(), 0.0, math.pi)
    np.testing.assert_allclose(np.abs(arc.curvature), 1.0, atol=1e-12)
    assert arc.length == pytest.approx(math.pi * math.sqrt(0.5), rel=1e-9)


def test_product_of_two_half_circles():
    circle = make_circle()
    mu = arc_from_circle(circle, 0.0, math.pi)
    nu = arc_from_circle(circle, math.pi, 2.0 * math.pi)
    curve = curve_product(mu, nu)
    assert curve.length == pytest.approx(2.0 * math.pi * math.sqrt(0.5), rel=1e-9)
    assert max(curve.position_residual, curve.tangent_residual, curve.curvature_residual) < 1e-9
    assert len(curve.points) == len(mu.points) + len(nu.points) - 2


def test_product_rejects_curvature_jump():
    mu = arc_from_circle(make_circle(), 0.0, math.pi, equator=V0)
    nu = great_circle_arc(-math.pi / 4, math.pi / 4)
    with pytest.raises(NonRegularJoinError):
        curve_product(mu, nu)


def test_product_rejects_other_equator():
    mu = arc_from_circle(make_circle(), 0.0, math.pi)
    other = line_of_curvature(2, 1, models.CurveFamily.PHI).circle
    with pytest.raises(DomainError):
        curve_product(mu, arc_from_circle(other, math.pi, 2.0 * math.pi))


def test_spline_fills_truncation_gap():
    full = arc_from_circle(make_circle(), 0.0, 2.0 * math.pi)
    kept = truncate_curve(full, 0.2)
    assert kept.length == pytest.approx(0.8 * full.length, rel=1e-2)
    bridge = spline_arc(kept, kept)
    curve = curve_product(kept, bridge)
    assert curve.tangent_residual < 1e-6
    assert curve.curvature_residual < 1e-6
    assert np.all(np.abs(curve.points @ kept.equator.v) < 1e-8)


def test_close_arc_of_full_circle():
    curve = close_arc(arc_from_circle(make_circle(), 0.0, 2.0 * math.pi))
    profile = curve.signature(64)
    np.testing.assert_allclose(profile.values, 1.0, atol=1e-9)
    assert profile.length == pytest.approx(curve.length)


@pytest.mark.parametrize("t", [0.0, 1.0, -0.1])
def test_truncation_fraction_range(t):
    with pytest.raises(DomainError):
        truncate_curve(arc_from_circle(make_circle(), 0.0, 2.0 * math.pi), t)


def test_arc_must_stay_in_equator():
    with pytest.raises(DomainError):
        arc_from_circle(make_circle(), 0.0, math.pi, equator=Equator(v=np.array([1.0, 0.0, 0.0, 0.0])))
