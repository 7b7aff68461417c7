import numpy as np
import pytest

from toruslab import models
from toruslab.errors import DomainError
from toruslab.intersection import random_poles, scan_two_piece
from toruslab.surfaces import cyclide_presets


def test_random_poles_are_seeded_unit_vectors():
    a = random_poles(5, seed=7)
    b = random_poles(5, seed=7)
    assert a.shape == (5, 4)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_allclose(np.linalg.norm(a, axis=-1), 1.0)


def test_clifford_scan_passes(clifford):
    report = scan_two_piece(clifford, samples=12, seed=42, resolution=64)
    assert report.failures == ()
    assert len(report.entries) == 12
    assert sum(report.type_histogram.values()) == 12
    assert set(report.type_histogram) <= {"1", "2", "3", "4"}


def test_scan_is_deterministic(clifford):
    a = scan_two_piece(clifford, samples=4, seed=3, resolution=64)
    b = scan_two_piece(clifford, samples=4, seed=3, resolution=64)
    assert [e.pole for e in a.entries] == [e.pole for e in b.entries]
    assert [e.type for e in a.entries] == [e.type for e in b.entries]


def test_probe_poles_follow_random_ones(clifford):
    report = scan_two_piece(
        clifford, samples=2, resolution=64, probe_poles=[(0.0, 1.0, 0.0, 0.0), (1.0, 0.0, 1.0, 0.0)]
    )
    probes = [e for e in report.entries if e.probe]
    assert [e.index for e in probes] == [2, 3]
    assert probes[0].type is models.IntersectionType.TYPE_2
    assert probes[1].type is models.IntersectionType.TYPE_4
    assert report.count_histogram.get("tangent") == 1


def test_dented_cyclide_fails_at_recorded_pole():
    preset = cyclide_presets()["dented"]
    report = scan_two_piece(preset.cyclide, samples=1, resolution=64, probe_poles=[preset.pole])
    assert report.precondition is not None
    assert any(f.index == 1 and f.reason == "two-piece violation" for f in report.failures)


def test_rejects_empty_scan(clifford):
    with pytest.raises(DomainError):
        scan_two_piece(clifford, samples=0)
