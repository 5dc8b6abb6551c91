import os

import pytest
from pydantic import ValidationError

from antipolar.config import ToleranceConfig, load_tolerances


def test_presets():
    assert ToleranceConfig.catalog() == ToleranceConfig()
    flow = ToleranceConfig.flow()
    assert flow.eps_geom == 1e-6
    assert flow.eps_polar == 1e-5


def test_tolerances_must_be_small_and_positive():
    with pytest.raises(ValidationError):
        ToleranceConfig(eps_geom=0.0)
    with pytest.raises(ValidationError):
        ToleranceConfig(eps_diam=0.5)


def test_environment_overrides_preset(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("ANTIPOLAR_EPS_GEOM", "1e-7")
    tol = load_tolerances("catalog")
    assert tol.eps_geom == 1e-7
    assert tol.eps_unit == 1e-9


def test_flags_override_environment(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("ANTIPOLAR_EPS_POLAR", "1e-7")
    tol = load_tolerances("flow", eps_polar=1e-4, eps_geom=None)
    assert tol.eps_polar == 1e-4
    assert tol.eps_geom == 1e-6


def test_dotenv_file_is_read(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("ANTIPOLAR_EPS_DIAM", raising=False)
    (tmp_path / ".env").write_text("ANTIPOLAR_EPS_DIAM=3e-8\n")
    try:
        assert load_tolerances().eps_diam == 3e-8
    finally:
        os.environ.pop("ANTIPOLAR_EPS_DIAM", None)
