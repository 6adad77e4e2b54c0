"""
Settings from the environment and explicit overrides.
"""

import pytest
from pydantic import ValidationError

from semirings.config import MAX_ORDER_ENV, KernelSettings, load_settings
from semirings.errors import ConfigurationError


def test_defaults(monkeypatch):
    monkeypatch.delenv(MAX_ORDER_ENV, raising=False)
    settings = load_settings()
    assert settings == KernelSettings()
    assert settings.max_order == 4
    assert settings.closure_max_order == 3


def test_environment_overrides_max_order(monkeypatch):
    monkeypatch.setenv(MAX_ORDER_ENV, "5")
    assert load_settings().max_order == 5
    assert load_settings(max_order=2).max_order == 2


def test_bad_environment_value(monkeypatch):
    monkeypatch.setenv(MAX_ORDER_ENV, "four")
    with pytest.raises(ConfigurationError):
        load_settings()


def test_out_of_range_values(monkeypatch):
    monkeypatch.delenv(MAX_ORDER_ENV, raising=False)
    with pytest.raises(ConfigurationError):
        load_settings(max_order=0)
    with pytest.raises(ConfigurationError):
        load_settings(tensor_bound_slack=0)


def test_settings_are_frozen():
    settings = KernelSettings()
    with pytest.raises(ValidationError):
        settings.max_order = 3
