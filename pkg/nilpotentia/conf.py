# -*- coding: utf-8 -*-

"""Runtime settings.

Settings are looked up on ``django.conf.settings`` when a Django project has
configured them, then in the process environment, then in ``DEFAULTS``.
"""

import os
from typing import Any, Dict

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

##
# DEFAULTS
#
# Built-in values for every recognized setting.
#
DEFAULTS: Dict[str, int] = {
    # Largest order accepted by exhaustive subsemigroup enumeration.
    "NILPOTENTIA_CAP": 12,
    # Largest group order accepted by the subgroup sweeps of the Schmidt report.
    "NILPOTENTIA_GROUP_CAP": 24,
    # Largest census order. Not configurable beyond 7.
    "NILPOTENTIA_CENSUS_MAX_ORDER": 7,
}

CENSUS_HARD_CAP = 7


def get_setting(name: str) -> int:
    """Return the value of the named integer setting.

    Args:
        name: The setting name, e.g. ``NILPOTENTIA_CAP``.

    Returns:
        int: The configured value.

    Raises:
        ImproperlyConfigured: If the configured value is not a positive
            integer.
        LookupError: If the setting is unknown.
    """
    if name not in DEFAULTS:
        raise LookupError(f"Unknown setting {name!r}.")

    value: Any = DEFAULTS[name]
    if settings.configured and hasattr(settings, name):
        value = getattr(settings, name)
    elif name in os.environ:
        value = os.environ[name]

    try:
        result = int(value)
    except (TypeError, ValueError):
        raise ImproperlyConfigured(
            f"The {name} setting must be an integer (got {value!r})."
        )
    if result < 1:
        raise ImproperlyConfigured(f"The {name} setting must be positive (got {result}).")

    if name == "NILPOTENTIA_CENSUS_MAX_ORDER":
        result = min(result, CENSUS_HARD_CAP)

    return result
