import pytest

from toruslab.cli import CommandConfig, build_parser, parse_vector, resolve_config
from toruslab.errors import DomainError


def make_config(*argv: str) -> CommandConfig:
    return resolve_config(build_parser().parse_args(list(argv)))


class TestResolution:
    def test_defaults(self):
        config = make_config("scan")
        assert (config.seed, config.resolution, config.samples) == (42, 128, 200)
        assert config.surface == "clifford"
        assert config.margin == 0.02

    def test_environment_overrides_defaults(self, monkeypatch):
        monkeypatch.setenv("TORUSLAB_SEED", "7")
        monkeypatch.setenv("TORUSLAB_RESOLUTION", "64")
        config = make_config("scan")
        assert config.seed == 7
        assert config.resolution == 64

    def test_flags_override_environment(self, monkeypatch):
        monkeypatch.setenv("TORUSLAB_SEED", "7")
        assert make_config("scan", "--seed", "3").seed == 3

    def test_dotenv_file_is_read(self, tmp_path):
        (tmp_path / ".env").write_text("TORUSLAB_SAMPLES=17\n", encoding="utf-8")
        assert make_config("scan").samples == 17

    def test_output_dir(self, monkeypatch, tmp_path):
        monkeypatch.setenv("TORUSLAB_OUTPUT_DIR", str(tmp_path))
        assert make_config("scan").output_dir == str(tmp_path)

    def test_vectors_are_parsed(self):
        config = make_config("classify", "--pole", "1,0,1,0", "--from", "0,0,0,1")
        assert config.pole == (1.0, 0.0, 1.0, 0.0)
        assert config.projection_pole == (0.0, 0.0, 0.0, 1.0)

    def test_auto_margin(self):
        assert make_config("spectrum", "--auto-margin").margin is None

    def test_bad_environment_value(self, monkeypatch):
        monkeypatch.setenv("TORUSLAB_SEED", "forty-two")
        with pytest.raises(DomainError):
            make_config("scan")


class TestValidation:
    @pytest.mark.parametrize("resolution", [16, 100, 1024])
    def test_resolution_must_be_power_of_two_in_range(self, resolution):
        with pytest.raises(DomainError):
            CommandConfig(command="scan", resolution=resolution)

    @pytest.mark.parametrize(
        "overrides",
        [
            {"samples": 0},
            {"alpha": 0.0},
            {"alpha": 1.5},
            {"margin": -0.1},
            {"tol_lambda": 0.0},
            {"tol_residual": -1.0},
        ],
    )
    def test_rejects_out_of_range_values(self, overrides):
        with pytest.raises(DomainError):
            CommandConfig(command="verify-clifford", **overrides)

    @pytest.mark.parametrize("text", ["1,0,1", "a,b,c,d", "1,0,inf,0"])
    def test_parse_vector_rejects(self, text):
        with pytest.raises(DomainError):
            parse_vector(text, 4, "--pole")

    def test_as_dict_round_trip(self):
        config = CommandConfig(command="scan", seed=5)
        assert CommandConfig(**config.as_dict()) == config
