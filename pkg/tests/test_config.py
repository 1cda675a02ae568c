import importlib

import pytest

from farey_flow import config


@pytest.mark.unit
class TestSettings:
    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("FAREY_FLOW_PRECISION", "200")
        monkeypatch.setenv("FAREY_FLOW_SVG_WINDOW", "-1:1")
        reloaded = importlib.reload(config)
        try:
            assert reloaded.settings.PRECISION == 200
            assert reloaded.settings.SVG_WINDOW == "-1:1"
            assert set(vars(reloaded.Settings)) >= {"PRECISION", "SEED", "LOG_LEVEL"}
            assert "Config" not in vars(reloaded.Settings)
        finally:
            monkeypatch.undo()
            importlib.reload(config)
