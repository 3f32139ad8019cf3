# -*- coding: utf-8 -*-

"""Pytest fixtures and configuration."""

from functools import lru_cache
from typing import Any, Callable, Generator, List, Tuple, TypeVar

import pytest
from django.conf import settings
from django.dispatch import Signal
from hypothesis import strategies as st

from nilpotentia.census import CensusConfig, enumerate_semigroups
from nilpotentia.core import Semigroup
from tests.factories import monogenic_semigroup, null_semigroup, rectangular_band

T = TypeVar("T")
Fixture = Generator[T, None, None]


def pytest_configure() -> None:
    """Configure Django before any test runs.

    No NILPOTENTIA_* settings are made here, so the defaults and the
    environment apply unless a test overrides them with the ``settings``
    fixture.
    """
    if not settings.configured:
        settings.configure(
            DEBUG=False,
            INSTALLED_APPS=[],
            LOGGING_CONFIG=None,
        )


@pytest.fixture
def receiver(mocker: Any) -> Fixture[Callable[[Signal], Any]]:
    """A fixture for connecting mock receivers to signals.

    Yields a function that connects a new mock to a signal and returns it.
    Every connected mock is disconnected after the test.

    Yields:
        Callable[[Signal], Any]: The connecting function.
    """
    connected: List[Tuple[Signal, Any]] = []

    def _connect(signal: Signal) -> Any:
        mock = mocker.Mock()
        signal.connect(mock, weak=False)
        connected.append((signal, mock))
        return mock

    yield _connect

    for signal, mock in connected:
        signal.disconnect(mock)


def monogenic_strategy() -> st.SearchStrategy[Semigroup]:
    """Define a generation strategy for monogenic semigroups.

    Returns:
        st.SearchStrategy[Semigroup]: Semigroups ⟨a⟩ with index and period
            between 1 and 5.
    """
    return st.builds(
        monogenic_semigroup,
        index=st.integers(min_value=1, max_value=5),
        period=st.integers(min_value=1, max_value=5),
    )


def rectangular_band_strategy() -> st.SearchStrategy[Semigroup]:
    """Define a generation strategy for rectangular bands with at least two elements.

    Returns:
        st.SearchStrategy[Semigroup]: Bands of at most 3 rows and 3 columns.
    """
    return st.builds(
        rectangular_band,
        rows=st.integers(min_value=1, max_value=3),
        cols=st.integers(min_value=1, max_value=3),
    ).filter(lambda band: band.order > 1)


def null_strategy() -> st.SearchStrategy[Semigroup]:
    """Define a generation strategy for null semigroups.

    Returns:
        st.SearchStrategy[Semigroup]: Semigroups of order 1 to 6 in which
            every product is the zero.
    """
    return st.builds(null_semigroup, order=st.integers(min_value=1, max_value=6))


@st.composite
def relabelled_strategy(
    draw: Callable[..., Any], semigroups: st.SearchStrategy[Semigroup]
) -> Tuple[Semigroup, Semigroup]:
    """Define a strategy for a semigroup paired with a relabelled copy.

    Args:
        semigroups: The strategy drawing the original semigroup.

    Returns:
        Tuple[Semigroup, Semigroup]: The semigroup and an isomorphic copy.
    """
    semigroup = draw(semigroups)
    permutation = draw(st.permutations(range(semigroup.order)))
    return semigroup, semigroup.relabel(permutation)


@lru_cache(maxsize=None)
def _census(order: int) -> Tuple[Semigroup, ...]:
    return tuple(enumerate_semigroups(CensusConfig(order=order)))


def census_strategy(max_order: int = 4) -> st.SearchStrategy[Semigroup]:
    """Define a generation strategy drawing from the census of small semigroups.

    Every associative table of order at most ``max_order`` is isomorphic to
    one of the drawn semigroups; pair with `relabelled_strategy` to draw
    arbitrary labellings.

    Args:
        max_order: The largest order drawn.

    Returns:
        st.SearchStrategy[Semigroup]: One semigroup per isomorphism class.
    """
    return st.sampled_from(
        [semigroup for order in range(1, max_order + 1) for semigroup in _census(order)]
    )
