from toruslab.models import ExitCode


class TestExitCode:
    def test_values(self):
        assert {code.name: int(code) for code in ExitCode} == {
            "PASS": 0,
            "CHECK_FAILED": 1,
            "USAGE": 2,
            "NUMERICAL": 3,
        }
