# -*- coding: utf-8 -*-

"""Tests for the catalog of named semigroups."""

import pytest

from nilpotentia.catalog import CATALOG, CatalogEntry, ExpectedFacts, Y, entry
from nilpotentia.classify import classify
from nilpotentia.core import Semigroup, validate_semigroup
from nilpotentia.exceptions import BadParameter
from nilpotentia.nilpotency import decide_nilpotent
from nilpotentia.structure import is_minimal_non_nilpotent


def test_catalog_registration() -> None:
    """Ensure that every concrete entry is registered under its name."""
    assert {
        "u1",
        "u2",
        "f7",
        "u3_nonminimal",
        "u4_nonminimal",
        "u5_c2",
        "y",
        "c",
        "c2xc2",
        "c2xc4",
        "s3",
        "a4",
        "d4",
        "d5",
        "q8",
    } <= set(CATALOG)

    # Abstract bases are not registered.
    assert "catalogentry" not in CATALOG
    assert "gluedentry" not in CATALOG
    assert "groupentry" not in CATALOG


def test_duplicate_registration() -> None:
    """Ensure that registering a second entry under a taken name fails."""
    with pytest.raises(ValueError):

        class U1(CatalogEntry):
            expected = ExpectedFacts(order=1, nilpotent=True, minimal=False, verdict="")

            def build(self) -> Semigroup:
                return validate_semigroup(["a"], [[0]])


def test_entry_lookup() -> None:
    """Ensure that parametric entries accept their parameter in the name."""
    assert isinstance(entry("y6"), Y)
    assert entry("y6").params == {"n": 6}
    assert entry("y(6)").params == {"n": 6}
    assert entry("y", n=6).label == "y(6)"
    assert entry(" F7 ").label == "f7"
    assert entry("c5").semigroup.order == 5

    with pytest.raises(BadParameter):
        entry("y4")

    with pytest.raises(BadParameter):
        entry("c0")

    with pytest.raises(BadParameter) as ex:
        entry("nonesuch")
    assert ex.value.as_dict()["name"] == "nonesuch"

    # Only parametric entries take a number.
    with pytest.raises(BadParameter):
        entry("f77")


def test_entry_as_dict() -> None:
    """Ensure that entries serialize with their expected facts."""
    data = entry("u1").as_dict()
    assert data["elements"] == ["e", "f"]
    assert data["table"] == [[0, 1], [0, 1]]
    assert data["name"] == "u1"
    assert data["expected"] == {
        "order": 2,
        "nilpotent": False,
        "minimal": True,
        "verdict": "U1",
    }
    assert data["expected_offender"] is None

    offender = entry("u3_nonminimal").as_dict()["expected_offender"]
    assert offender == sorted(offender)
    assert "u" in offender


def test_y_expected_order() -> None:
    """Ensure that the expected order of Yₙ matches its glued union."""
    y = entry("y5")
    assert y.expected.order == 30
    assert y.t_semigroup().elements == ("w", "v", "v^2", "wv", "0")


def _check_entry(name: str) -> None:
    catalog_entry = entry(name)
    semigroup = catalog_entry.semigroup
    expected = catalog_entry.expected

    assert semigroup.order == expected.order
    assert decide_nilpotent(semigroup).nilpotent == expected.nilpotent
    assert all(catalog_entry.check_relations().values())

    classification = classify(semigroup)
    assert classification.verdict.value == expected.verdict
    if expected.minimal is not None:
        assert is_minimal_non_nilpotent(semigroup).minimal == expected.minimal

    if catalog_entry.expected_offender is not None:
        assert classification.minimality is not None
        assert any(
            set(o.as_dict(semigroup)["members"]) == catalog_entry.expected_offender
            for o in classification.minimality.offenders
            if o.kind == "subsemigroup"
        )


@pytest.mark.parametrize(
    "name", ["u1", "u2", "f7", "c3", "c2xc2", "c2xc4", "s3", "a4", "d4", "d5", "q8"]
)
def test_catalog_entry(name: str) -> None:
    """Ensure that small entries reproduce their expected facts."""
    _check_entry(name)


@pytest.mark.slow
@pytest.mark.timeout(1800)
@pytest.mark.parametrize("name", ["u3_nonminimal", "u4_nonminimal", "u5_c2", "y5"])
def test_catalog_entry_slow(name: str) -> None:
    """Ensure that the larger glued entries reproduce their expected facts."""
    _check_entry(name)
