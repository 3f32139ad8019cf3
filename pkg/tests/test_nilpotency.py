# -*- coding: utf-8 -*-

"""Tests for deciding Malcev nilpotency."""

from typing import Tuple

import pytest
from hypothesis import given, settings

from nilpotentia.core import Semigroup, validate_semigroup
from nilpotentia.exceptions import ElementIndexOutOfRange
from nilpotentia.groups import (
    cyclic_group,
    dihedral_group,
    quaternion_group,
    symmetric_group,
)
from nilpotentia.nilpotency import (
    PairGraph,
    Witness,
    decide_nilpotent,
    descending_pair_sets,
    edge_labels,
    lambda_rho,
    nilpotency_class,
    positively_engel_degree,
    power_nilpotency_index,
    verify_witness,
)
from tests.conftest import (
    census_strategy,
    monogenic_strategy,
    null_strategy,
    rectangular_band_strategy,
    relabelled_strategy,
)
from tests.factories import NullSemigroupFactory, RectangularBandFactory

RIGHT_ZERO = validate_semigroup(["e", "f"], [[0, 1], [0, 1]])


def test_lambda_rho() -> None:
    """Ensure that the recursion swaps the pair in a right-zero semigroup."""
    # The identity of S¹ is index 2.
    assert lambda_rho(RIGHT_ZERO, 0, 1, []) == (0, 1)
    assert lambda_rho(RIGHT_ZERO, 0, 1, [2]) == (1, 0)
    assert lambda_rho(RIGHT_ZERO, 0, 1, [2, 0]) == (0, 1)

    with pytest.raises(ElementIndexOutOfRange):
        lambda_rho(RIGHT_ZERO, 0, 2, [])

    with pytest.raises(ElementIndexOutOfRange):
        lambda_rho(RIGHT_ZERO, 0, 1, [3])


def test_decide_nilpotent_witness() -> None:
    """Ensure that the least witness is reported for a non-nilpotent semigroup.

    Witnesses are least by length, then by labels (the identity of S¹
    first), then by x and y.
    """
    result = decide_nilpotent(RIGHT_ZERO)
    assert not result.nilpotent
    assert result.nilpotency_class is None
    assert result.witness == Witness(x=0, y=1, ws=(2, 2))
    assert verify_witness(RIGHT_ZERO, result.witness)
    assert result.as_dict(RIGHT_ZERO) == {
        "verdict": "NonNilpotent",
        "witness": {"x": "e", "y": "f", "ws": ["1", "1"]},
    }

    # Without the adjoined identity, the least label is the first element.
    strict = decide_nilpotent(RIGHT_ZERO, strict=True)
    assert strict.witness == Witness(x=0, y=1, ws=(0, 0))


def test_verify_witness() -> None:
    """Ensure that only genuine cycles away from the diagonal verify."""
    assert verify_witness(RIGHT_ZERO, Witness(x=1, y=0, ws=(0, 1)))
    assert not verify_witness(RIGHT_ZERO, Witness(x=0, y=1, ws=(0,)))
    assert not verify_witness(RIGHT_ZERO, Witness(x=0, y=0, ws=(0, 0)))
    assert not verify_witness(RIGHT_ZERO, Witness(x=0, y=1, ws=()))
    assert not verify_witness(RIGHT_ZERO, Witness(x=0, y=1, ws=(7, 7)))


def test_nilpotency_class() -> None:
    """Ensure that the class is the first step where λ and ρ agree everywhere."""
    assert nilpotency_class(cyclic_group(1)) == 0
    assert nilpotency_class(cyclic_group(3)) == 1
    assert nilpotency_class(NullSemigroupFactory(order=3)) == 1
    assert nilpotency_class(RIGHT_ZERO) is None

    result = decide_nilpotent(NullSemigroupFactory(order=3))
    assert result.nilpotent
    assert result.as_dict(NullSemigroupFactory(order=3)) == {
        "verdict": "Nilpotent",
        "class": 1,
    }


def test_groups() -> None:
    """Ensure that nilpotent groups are nilpotent semigroups and S3 is not."""
    assert decide_nilpotent(dihedral_group(4)).nilpotent
    assert decide_nilpotent(quaternion_group()).nilpotent

    result = decide_nilpotent(symmetric_group(3))
    assert not result.nilpotent
    assert verify_witness(symmetric_group(3), result.witness)


def test_descending_pair_sets() -> None:
    """Ensure that the chain of reachable pairs descends to its limit."""
    null = NullSemigroupFactory(order=2)
    chain = descending_pair_sets(null)
    assert len(chain) == 2
    assert len(chain[0]) == 4
    assert chain[-1] == frozenset({(1, 1)})

    # Off-diagonal pairs survive in the limit of a non-nilpotent semigroup.
    assert descending_pair_sets(RIGHT_ZERO)[-1] == frozenset(
        {(0, 0), (0, 1), (1, 0), (1, 1)}
    )


def test_pair_graph() -> None:
    """Ensure that the pair graph has one edge per label from each pair."""
    graph = PairGraph(RIGHT_ZERO)
    assert list(edge_labels(RIGHT_ZERO)) == [2, 0, 1]
    assert list(edge_labels(RIGHT_ZERO, strict=True)) == [0, 1]
    assert graph.node(1, 0) == 2
    assert graph.pair(2) == (1, 0)
    assert graph.successors(0, 1) == [(2, (1, 0)), (0, (1, 0)), (1, (1, 0))]

    digraph = graph.as_networkx()
    assert digraph.number_of_nodes() == 4
    assert digraph.has_edge(graph.node(0, 1), graph.node(1, 0))


def test_power_nilpotency_index() -> None:
    """Ensure that the index of nilpotent-with-zero semigroups is found."""
    assert power_nilpotency_index(NullSemigroupFactory(order=3)) == 2
    assert power_nilpotency_index(cyclic_group(1)) == 1
    assert power_nilpotency_index(cyclic_group(3)) is None
    assert power_nilpotency_index(RIGHT_ZERO) is None


def test_positively_engel_degree() -> None:
    """Ensure that the Engel degree is at least two and absent for swaps."""
    assert positively_engel_degree(cyclic_group(3)) == 2
    assert positively_engel_degree(NullSemigroupFactory(order=3)) == 2
    assert positively_engel_degree(RIGHT_ZERO) is None
    assert positively_engel_degree(RectangularBandFactory(rows=2, cols=2)) is None


@given(semigroup=monogenic_strategy() | null_strategy())
def test_commutative_semigroups(semigroup: Semigroup) -> None:
    """Ensure that commutative semigroups have nilpotency class at most one."""
    result = decide_nilpotent(semigroup)
    assert result.nilpotent
    assert result.nilpotency_class <= 1


@given(band=rectangular_band_strategy())
def test_rectangular_bands(band: Semigroup) -> None:
    """Ensure that rectangular bands with two or more elements are not nilpotent."""
    result = decide_nilpotent(band)
    assert not result.nilpotent
    assert verify_witness(band, result.witness)
    # Left-zero bands fix their off-diagonal pairs; the others swap them.
    assert len(result.witness.ws) <= 2


@given(pair=relabelled_strategy(rectangular_band_strategy() | null_strategy()))
def test_relabelling(pair: Tuple[Semigroup, Semigroup]) -> None:
    """Ensure that relabelling preserves the verdict and the class."""
    first, second = pair
    assert decide_nilpotent(first).nilpotent == decide_nilpotent(second).nilpotent
    assert nilpotency_class(first) == nilpotency_class(second)


@settings(deadline=None)
@given(pair=relabelled_strategy(census_strategy()))
def test_small_semigroups(pair: Tuple[Semigroup, Semigroup]) -> None:
    """Ensure that every small semigroup gets a replayable witness or an exact class.

    A class k means that the k-th pair set is diagonal and the one before it
    is not; a witness must return to its starting pair.
    """
    _, semigroup = pair
    result = decide_nilpotent(semigroup)
    chain = descending_pair_sets(semigroup)
    diagonal = frozenset((a, a) for a in range(semigroup.order))

    if result.nilpotent:
        k = result.nilpotency_class
        assert k == nilpotency_class(semigroup)
        assert chain[k] <= diagonal
        if k > 0:
            assert not chain[k - 1] <= diagonal
    else:
        assert nilpotency_class(semigroup) is None
        assert verify_witness(semigroup, result.witness)
        assert not chain[-1] <= diagonal
