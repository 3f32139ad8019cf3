# -*- coding: utf-8 -*-

"""Tests for runtime settings."""

from typing import Any

import pytest
from django.core.exceptions import ImproperlyConfigured

from nilpotentia.conf import DEFAULTS, get_setting


def test_defaults() -> None:
    """Ensure that unset settings fall back to their defaults."""
    assert DEFAULTS["NILPOTENTIA_CAP"] == 12
    assert get_setting("NILPOTENTIA_GROUP_CAP") == 24
    assert get_setting("NILPOTENTIA_CENSUS_MAX_ORDER") == 7


def test_environment(monkeypatch: Any) -> None:
    """Ensure that the environment overrides the defaults."""
    monkeypatch.setenv("NILPOTENTIA_CAP", "20")
    assert get_setting("NILPOTENTIA_CAP") == 20


def test_django_settings(settings: Any, monkeypatch: Any) -> None:
    """Ensure that Django settings win over the environment."""
    monkeypatch.setenv("NILPOTENTIA_CAP", "20")
    settings.NILPOTENTIA_CAP = 8
    assert get_setting("NILPOTENTIA_CAP") == 8


@pytest.mark.parametrize("value", ["lots", "0", "-3"])
def test_invalid_values(monkeypatch: Any, value: str) -> None:
    """Ensure that values other than positive integers are refused."""
    monkeypatch.setenv("NILPOTENTIA_CAP", value)
    with pytest.raises(ImproperlyConfigured):
        get_setting("NILPOTENTIA_CAP")


def test_unknown_setting() -> None:
    """Ensure that unknown settings raise LookupError."""
    with pytest.raises(LookupError):
        get_setting("NILPOTENTIA_SPEED")


def test_census_order_clamped(settings: Any) -> None:
    """Ensure that the census order cannot be raised beyond seven."""
    settings.NILPOTENTIA_CENSUS_MAX_ORDER = 9
    assert get_setting("NILPOTENTIA_CENSUS_MAX_ORDER") == 7
