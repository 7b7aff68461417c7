import dataclasses
import math

import numpy as np
import pytest

from toruslab import models
from toruslab.errors import DomainError
from toruslab.intersection import (
    blowup_sequence,
    classify,
    curvature_profile,
    curves_congruent,
    find_type2_equator,
    osculating_curvature,
    profile_distance,
)
from toruslab.intersection.tangencies import wrapped_difference
from toruslab.sphere import Congruence
from toruslab.surfaces import PushforwardTorus


def test_osculating_curvature_of_great_circle():
    theta = np.linspace(0.0, 2.0 * math.pi, 400, endpoint=False)
    points = np.stack([np.cos(theta), np.sin(theta), 0.0 * theta, 0.0 * theta], axis=-1)
    np.testing.assert_allclose(osculating_curvature(points), 0.0, atol=1e-12)


@pytest.mark.parametrize("count", [64, 400, 2000])
def test_osculating_curvature_of_tilted_great_circle(count):
    theta = np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)
    flat = np.stack([np.cos(theta), np.sin(theta), 0.0 * theta, 0.0 * theta], axis=-1)
    points = Congruence.random(5).apply(flat)
    np.testing.assert_allclose(osculating_curvature(points), 0.0, atol=1e-9)
    np.testing.assert_allclose(osculating_curvature(points, closed=False), 0.0, atol=1e-9)


def test_osculating_curvature_of_small_circle():
    rho = 0.4
    theta = np.linspace(0.0, 2.0 * math.pi, 2000, endpoint=False)
    points = np.stack(
        [np.full_like(theta, math.cos(rho)), math.sin(rho) * np.cos(theta), math.sin(rho) * np.sin(theta), 0.0 * theta],
        axis=-1,
    )
    np.testing.assert_allclose(osculating_curvature(points), 1.0 / math.tan(rho), rtol=1e-5)


def test_profiles_are_congruence_invariant(clifford, v0):
    g = Congruence.random(11)
    moved = PushforwardTorus(g, clifford)
    a = classify(clifford, v0, profiles=True).curves[0].profile
    b = classify(moved, g.map_equator(v0), profiles=True).curves[0].profile
    assert curves_congruent(a, b, tol=1e-3)
    assert profile_distance(a, b) < 1e-3


def test_congruent_trace_has_no_repeated_vertices(clifford, v0):
    g = Congruence.random(11)
    report = classify(PushforwardTorus(g, clifford), g.map_equator(v0))
    for curve in report.curves:
        steps = wrapped_difference(np.roll(curve.params, -1, axis=0), curve.params)
        assert np.min(np.linalg.norm(steps, axis=-1)) > 1e-12


def test_profile_rejects_short_curve(clifford, v0):
    curve = classify(clifford, v0).curves[0]
    short = dataclasses.replace(curve, params=curve.params[:32], points=curve.points[:32])
    with pytest.raises(DomainError):
        curvature_profile(short)


def test_great_circle_and_unit_circle_profiles_differ(clifford, v0, tangent_equator_clifford):
    circle = classify(clifford, v0, profiles=True).curves[0].profile
    great = classify(clifford, tangent_equator_clifford, profiles=True).curves[0].profile
    assert not curves_congruent(circle, great)


def test_blowup_sequence_types_and_growth(clifford):
    sequence = blowup_sequence(range(4, 7))
    peaks = []
    for t, eq in sequence:
        report = classify(clifford, eq, resolution=128, profiles=True)
        assert report.type is models.IntersectionType.TYPE_2
        peaks.append(max(c.profile.max_curvature for c in report.curves))
    assert [t for t, _ in sequence] == [1 / 16, 1 / 32, 1 / 64]
    assert peaks[0] < peaks[1] < peaks[2]


def test_type2_search_keeps_base_point(clifford):
    eq = find_type2_equator(clifford, resolution=64)
    assert eq.contains(clifford.eval(0.0, 0.0))
    assert classify(clifford, eq, resolution=64).type is models.IntersectionType.TYPE_2


def test_blowup_tail_reaches_large_and_small_curvature(clifford):
    sequence = blowup_sequence()[-4:]
    peaks = []
    for t, eq in sequence:
        report = classify(clifford, eq, resolution=128, profiles=True)
        assert report.type is models.IntersectionType.TYPE_2
        peaks.append(max(c.profile.max_curvature for c in report.curves))
        floor = min(c.profile.min_curvature for c in report.curves)
    assert sequence[-1][0] == 2.0**-22
    assert peaks[-1] > 1e3
    assert floor < 1e-3
    assert all(a < b for a, b in zip(peaks, peaks[1:]))
