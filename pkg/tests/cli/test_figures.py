import numpy as np
import pytest

from toruslab.cli import choose_pole, project_scene, render_ply, render_svg
from toruslab.errors import DomainError, SingularityError
from toruslab.intersection import classify
from toruslab.surfaces import sample_mesh


@pytest.fixture
def scene(clifford, v0):
    mesh = sample_mesh(clifford, 32)
    report = classify(clifford, v0, resolution=64)
    return mesh, report


def test_automatic_pole_lies_on_equator(scene, v0):
    mesh, _ = scene
    pole, clearance = choose_pole(mesh, v0)
    assert abs(pole @ v0.v) < 1e-12
    assert np.linalg.norm(pole) == pytest.approx(1.0)
    assert clearance > 1e-3


def test_pole_on_surface_is_rejected(scene, v0):
    mesh, _ = scene
    with pytest.raises(SingularityError):
        choose_pole(mesh, v0, np.sqrt(0.5) * np.array([1.0, 0.0, 1.0, 0.0]))


def test_pole_along_v_is_rejected(scene, v0):
    mesh, _ = scene
    with pytest.raises(DomainError):
        choose_pole(mesh, v0, v0.v)


def test_curves_project_into_a_plane(scene):
    projection = project_scene(*scene)
    assert len(projection.curves) == 2
    assert projection.planarity_residual < 1e-8
    assert projection.mesh.shape == (32, 32, 3)


def test_ply_layout(scene):
    projection = project_scene(*scene)
    text = render_ply(projection, comment="test")
    header, body = text.split("end_header\n")
    curve_vertices = sum(len(c) for c in projection.curves)
    assert f"element vertex {32 * 32 + curve_vertices}" in header
    assert "element face 1024" in header
    assert f"element edge {curve_vertices}" in header
    rows = body.splitlines()[: 32 * 32 + curve_vertices]
    values = np.array([[float(x) for x in row.split()] for row in rows])
    on_curves = values[values[:, 3] >= 0]
    # S(v) is the plane y = 0 in the y-up frame
    np.testing.assert_allclose(on_curves[:, 1], 0.0, atol=1e-8)


def test_svg_is_deterministic(scene):
    projection = project_scene(*scene)
    a = render_svg(projection, title="clifford")
    b = render_svg(projection, title="clifford")
    assert a == b
    assert b"<svg" in a
