import json

import pytest

from toruslab import models
from toruslab.cli import main


def run_json(tmp_path, *argv: str) -> tuple[int, dict]:
    path = tmp_path / "report.json"
    code = main([*argv, "--json", str(path)])
    return code, json.loads(path.read_text(encoding="utf-8"))


class TestClassify:
    def test_v0(self, tmp_path):
        code, document = run_json(tmp_path, "classify", "--pole", "0,1,0,0", "--resolution", "64")
        assert code == models.ExitCode.PASS
        assert document["type"] == "2"
        assert document["pass"] is True
        assert document["config"]["pole"] == [0.0, 1.0, 0.0, 0.0]
        assert "version" in document

    def test_tangent_at(self, tmp_path):
        code, document = run_json(tmp_path, "classify", "--tangent-at", "0,0", "--resolution", "64")
        assert code == 0
        assert document["type"] == "4"

    def test_missing_equator_is_a_usage_error(self):
        assert main(["classify"]) == models.ExitCode.USAGE

    def test_malformed_descriptor(self):
        assert main(["classify", "--surface", "torus", "--pole", "1,0,0,0"]) == models.ExitCode.USAGE

    def test_curvature_precondition_fails_the_run(self):
        code = main(["classify", "--surface", "cyclide:dented", "--pole", "1,0,0,0", "--resolution", "64"])
        assert code == models.ExitCode.CHECK_FAILED

    def test_figures_are_written(self, tmp_path):
        code = main(
            ["classify", "--pole", "0,1,0,0", "--resolution", "32", "--ply", "scene.ply", "--svg", "scene.svg"]
        )
        assert code == 0
        assert (tmp_path / "scene.ply").read_text(encoding="utf-8").startswith("ply\n")
        assert (tmp_path / "scene.svg").stat().st_size > 0


def test_project_falls_back_to_recorded_pole(tmp_path):
    code, document = run_json(tmp_path, "project", "--resolution", "32")
    assert code == 0
    assert document["projection"]["planarity_residual"] < 1e-8
    assert document["type"] == "2"


def test_scan_report_is_byte_identical(tmp_path):
    path = tmp_path / "scan.json"
    argv = ["scan", "--samples", "3", "--resolution", "32", "--json", str(path)]
    assert main(argv) == 0
    first = path.read_bytes()
    assert main(argv) == 0
    assert path.read_bytes() == first
    assert json.loads(first)["pass"] is True


def test_output_dir_resolves_relative_paths(tmp_path, monkeypatch):
    out = tmp_path / "out"
    monkeypatch.setenv("TORUSLAB_OUTPUT_DIR", str(out))
    assert main(["scan", "--samples", "1", "--resolution", "32", "--json", "scan.json"]) == 0
    assert (out / "scan.json").exists()


class TestSpectrum:
    def test_clifford(self, tmp_path):
        code, document = run_json(tmp_path, "spectrum", "--resolution", "64", "--eigenfunctions", "modes.bin")
        assert code == 0
        assert document["eigenvalues"][1] == pytest.approx(2.0, rel=5e-3)
        assert document["multiplicity_groups"][:2] == [1, 4]
        assert document["montiel_ros"]["verdict"] == "clifford_consistent"
        assert (tmp_path / "modes.bin").exists()

    def test_non_minimal_surface_skips_the_test(self, tmp_path):
        code, document = run_json(tmp_path, "spectrum", "--surface", "homogeneous:0.5235987755982988", "--resolution", "32")
        assert code == 0
        assert "skipped" in document["montiel_ros"]

    def test_count_above_vertex_count(self):
        assert main(["spectrum", "--resolution", "32", "--count", "5000"]) == models.ExitCode.USAGE


class TestVerifyClifford:
    def test_passes(self, tmp_path):
        code, document = run_json(tmp_path, "verify-clifford", "--resolution", "64", "--samples", "4")
        assert code == 0, document["failed"]
        assert document["failed"] == []
        assert set(document["checks"]) >= {"lambda1", "lambda1_multiplicity", "montiel_ros", "identity_tau"}

    def test_tight_tolerance_fails(self, tmp_path):
        code, document = run_json(
            tmp_path, "verify-clifford", "--resolution", "64", "--samples", "2", "--tol-lambda", "1e-9"
        )
        assert code == models.ExitCode.CHECK_FAILED
        assert document["failed"] == ["lambda1"]


def test_requires_a_command():
    with pytest.raises(SystemExit):
        main([])
