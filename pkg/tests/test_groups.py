# -*- coding: utf-8 -*-

"""Tests for group constructors and the Schmidt report."""

import pytest

from nilpotentia.core import index_and_period, validate_semigroup
from nilpotentia.exceptions import CapExceeded, NotAGroup
from nilpotentia.groups import (
    abelian_group,
    alternating_group,
    center,
    commutator,
    cyclic_group,
    dihedral_group,
    frattini_subgroup,
    group_nilpotency,
    inverse,
    is_cyclic,
    is_normal,
    lower_central_series,
    quaternion_group,
    schmidt_report,
    subgroup_generated,
    subgroups,
    sylow_subgroups,
    symmetric_group,
)
from tests.factories import GroupFactory


def test_constructors() -> None:
    """Ensure that groups come out with the identity first, labelled 1."""
    assert GroupFactory(order=3).elements == ("1", "g", "g^2")
    assert cyclic_group(1).elements == ("1",)

    s3 = symmetric_group(3)
    assert s3.order == 6
    assert s3.elements[0] == "1"
    assert s3.identity == 0
    assert "(1,2)" in s3.elements
    assert "(1,2,3)" in s3.elements

    assert abelian_group(2, 2).order == 4
    assert dihedral_group(4).order == 8
    assert alternating_group(4).order == 12


def test_quaternion_group() -> None:
    """Ensure that the quaternion group has a single involution."""
    q8 = quaternion_group()
    assert q8.order == 8
    assert not q8.is_commutative
    involutions = [a for a in range(q8.order) if index_and_period(q8, a) == (1, 2)]
    assert len(involutions) == 1


def test_group_nilpotency() -> None:
    """Ensure that the class of a group is read off its lower central series."""
    assert group_nilpotency(cyclic_group(1)) == 0
    assert group_nilpotency(cyclic_group(4)) == 1
    assert group_nilpotency(abelian_group(2, 2)) == 1
    assert group_nilpotency(dihedral_group(4)) == 2
    assert group_nilpotency(quaternion_group()) == 2
    assert group_nilpotency(symmetric_group(3)) is None
    assert group_nilpotency(dihedral_group(5)) is None

    assert [len(term) for term in lower_central_series(symmetric_group(3))] == [6, 3]
    assert [len(term) for term in lower_central_series(dihedral_group(4))] == [8, 2, 1]


def test_not_a_group() -> None:
    """Ensure that group operations refuse semigroups that are not groups."""
    right_zero = validate_semigroup(["e", "f"], [[0, 1], [0, 1]])
    with pytest.raises(NotAGroup):
        group_nilpotency(right_zero)
    with pytest.raises(NotAGroup):
        schmidt_report(right_zero)


def test_elements_and_subgroups() -> None:
    """Ensure that inverses, commutators, centers and subgroups are computed."""
    c4 = cyclic_group(4)
    assert inverse(c4, 1) == 3
    assert commutator(c4, 1, 2) == 0
    assert frattini_subgroup((0, 1, 2, 3), subgroups(c4)) == (0, 2)

    s3 = symmetric_group(3)
    rotations = subgroup_generated(s3, [s3.index("(1,2,3)")])
    reflections = subgroup_generated(s3, [s3.index("(1,2)")])
    assert len(rotations) == 3
    assert subgroup_generated(s3, []) == (0,)
    assert center(s3) == (0,)
    assert len(center(dihedral_group(4))) == 2

    assert is_normal(s3, rotations)
    assert not is_normal(s3, reflections)
    assert is_cyclic(s3, rotations)
    assert not is_cyclic(s3, tuple(range(6)))

    found = subgroups(s3)
    assert len(found) == 6
    assert len(sylow_subgroups(s3, 2, found)) == 3
    assert sylow_subgroups(s3, 3, found) == [rotations]

    with pytest.raises(CapExceeded):
        subgroups(s3, cap=5)


def test_schmidt_report_s3() -> None:
    """Ensure that S3 is reported as a Schmidt group of order 3·2."""
    report = schmidt_report(symmetric_group(3))
    assert report.is_schmidt
    assert report.nonnilpotent
    assert report.order_pq == (3, 1, 2, 1)
    assert report.normal_sylow_p
    assert report.cyclic_sylow_q
    assert report.frattini_central
    assert report.two_generated
    assert report.all_proper_subgroups_nilpotent

    data = report.as_dict()
    assert data["is_schmidt"] is True
    assert data["order_pq"] == [3, 1, 2, 1]


def test_schmidt_report_a4() -> None:
    """Ensure that A4 is reported with its normal Klein four-group."""
    report = schmidt_report(alternating_group(4))
    assert report.is_schmidt
    assert report.order_pq == (2, 2, 3, 1)
    assert report.normal_sylow_p
    assert report.cyclic_sylow_q


def test_schmidt_report_nilpotent() -> None:
    """Ensure that nilpotent groups are not Schmidt groups."""
    report = schmidt_report(dihedral_group(4))
    assert not report.is_schmidt
    assert not report.nonnilpotent
    assert report.order_pq is None
    assert report.as_dict()["order_pq"] is None
