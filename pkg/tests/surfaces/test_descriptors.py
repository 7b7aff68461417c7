import math

import pytest

from toruslab import models
from toruslab.errors import DescriptorError
from toruslab.surfaces import (
    CliffordTorus,
    Cyclide,
    HomogeneousTorus,
    PerturbedTorus,
    parse_bump,
    parse_surface,
)


class TestInlineDescriptors:
    def test_clifford(self):
        descriptor = parse_surface("clifford")
        assert isinstance(descriptor.immersion, CliffordTorus)
        assert [name for name, _ in descriptor.witness_poles] == ["v0", "tangent"]

    def test_homogeneous(self):
        M = parse_surface("homogeneous:0.5235987755982988").immersion
        assert isinstance(M, HomogeneousTorus)
        assert M.r == pytest.approx(math.pi / 6)

    def test_cyclide_preset_carries_pole(self):
        descriptor = parse_surface("cyclide:default")
        assert descriptor.immersion.kind is models.SurfaceKind.CYCLIDE
        assert len(descriptor.witness_poles) == 1

    def test_cyclide_parameters(self):
        M = parse_surface("cyclide:1,0.3,3,0,0").immersion
        assert isinstance(M, Cyclide)
        assert M.offset.tolist() == [3.0, 0.0, 0.0]

    def test_perturbed_inline_bump(self):
        M = parse_surface("perturbed:clifford:1,0,0.001;0,2,0.0005,0.5").immersion
        assert isinstance(M, PerturbedTorus)
        assert M.bump.terms == ((1, 0, 0.001, 0.0), (0, 2, 0.0005, 0.5))

    @pytest.mark.parametrize(
        "text",
        ["torus", "clifford:1", "homogeneous:abc", "homogeneous:0.1,0.2", "cyclide:1,2,3", "perturbed:clifford"],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(DescriptorError):
            parse_surface(text)


class TestDocuments:
    def test_toml_document(self, tmp_path):
        path = tmp_path / "bumped.toml"
        path.write_text(
            'kind = "perturbed"\n'
            'base = "clifford"\n'
            "bump = [[1, 1, 0.002, 0.0], [2, 0, 0.001, 1.5]]\n",
            encoding="utf-8",
        )
        M = parse_surface(str(path)).immersion
        assert isinstance(M, PerturbedTorus)
        assert len(M.bump.terms) == 2

    def test_bump_file(self, tmp_path):
        path = tmp_path / "bump.toml"
        path.write_text("bump = [[1, 0, 0.01, 0.0]]\n", encoding="utf-8")
        assert parse_bump(str(path)) == [[1, 0, 0.01, 0.0]]

    def test_missing_file(self, tmp_path):
        with pytest.raises(DescriptorError):
            parse_surface(str(tmp_path / "absent.toml"))

    def test_invalid_toml(self, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("kind = \n", encoding="utf-8")
        with pytest.raises(DescriptorError):
            parse_surface(str(path))
