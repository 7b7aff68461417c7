import os
import pathlib

import pytest

from toruslab.reports import atomic_write_bytes, atomic_write_text, resolve_output


def test_resolve_output(tmp_path):
    assert resolve_output("out.json", tmp_path) == tmp_path / "out.json"
    assert resolve_output(tmp_path / "abs.json", "/elsewhere") == tmp_path / "abs.json"
    assert resolve_output("out.json", None) == pathlib.Path("out.json")


def test_atomic_write_creates_parents(tmp_path):
    target = tmp_path / "a" / "b" / "report.json"
    assert atomic_write_text(target, "{}\n") == target
    assert target.read_text(encoding="utf-8") == "{}\n"


def test_atomic_write_replaces_and_leaves_no_temp_files(tmp_path):
    target = tmp_path / "data.bin"
    atomic_write_bytes(target, b"first")
    atomic_write_bytes(target, b"second")
    assert target.read_bytes() == b"second"
    assert os.listdir(tmp_path) == ["data.bin"]


def test_failed_replace_removes_temp_file(tmp_path, monkeypatch):
    def refuse(src, dst):
        raise PermissionError("read-only target")

    monkeypatch.setattr(os, "replace", refuse)
    with pytest.raises(PermissionError):
        atomic_write_bytes(tmp_path / "data.bin", b"payload")
    assert os.listdir(tmp_path) == []
