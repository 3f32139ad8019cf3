# -*- coding: utf-8 -*-

"""Finite groups: constructors and nilpotency oracles."""

import logging
from dataclasses import asdict, dataclass
from itertools import combinations_with_replacement
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import factorint
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import (
    AbelianGroup,
    AlternatingGroup,
    DihedralGroup,
    SymmetricGroup,
)

from nilpotentia.conf import get_setting
from nilpotentia.core import Semigroup, closure, is_group, semigroup_from_trusted_table
from nilpotentia.exceptions import NotAGroup
from nilpotentia.structure import all_subsemigroups

logger = logging.getLogger(__name__)

Subgroup = Tuple[int, ...]


def _cycle_label(permutation: Permutation) -> str:
    if permutation.is_Identity:
        return "1"
    return "".join(
        "(" + ",".join(str(point + 1) for point in cycle) + ")"
        for cycle in permutation.cyclic_form
    )


def group_from_permutations(group: PermutationGroup) -> Semigroup:
    """Return the Cayley table of a sympy permutation group.

    Elements are labelled in 1-based cycle notation, the identity first and
    labelled ``"1"``.

    Args:
        group: The permutation group.

    Returns:
        Semigroup: The group as a semigroup.
    """
    elements = sorted(
        group.generate(), key=lambda p: (not p.is_Identity, p.array_form)
    )
    position = {tuple(p.array_form): i for i, p in enumerate(elements)}
    table = tuple(
        tuple(position[tuple((a * b).array_form)] for b in elements)
        for a in elements
    )
    return semigroup_from_trusted_table([_cycle_label(p) for p in elements], table)


def cyclic_group(order: int) -> Semigroup:
    """Return the cyclic group of the given order, labelled 1, g, g^2, ..."""
    labels = ["1", "g"] + [f"g^{k}" for k in range(2, order)]
    table = tuple(
        tuple((a + b) % order for b in range(order)) for a in range(order)
    )
    return semigroup_from_trusted_table(labels[:order], table)


def abelian_group(*orders: int) -> Semigroup:
    """Return the direct product of cyclic groups of the given orders."""
    return group_from_permutations(AbelianGroup(*orders))


def dihedral_group(n: int) -> Semigroup:
    """Return the dihedral group of order 2n."""
    return group_from_permutations(DihedralGroup(n))


def symmetric_group(n: int) -> Semigroup:
    """Return the symmetric group on n points."""
    return group_from_permutations(SymmetricGroup(n))


def alternating_group(n: int) -> Semigroup:
    """Return the alternating group on n points."""
    return group_from_permutations(AlternatingGroup(n))


def quaternion_group() -> Semigroup:
    """Return the quaternion group of order 8 (its left regular representation)."""
    # Points 0..7 stand for 1, -1, i, -i, j, -j, k, -k.
    left_i = Permutation([2, 3, 1, 0, 6, 7, 5, 4])
    left_j = Permutation([4, 5, 7, 6, 1, 0, 2, 3])
    return group_from_permutations(PermutationGroup(left_i, left_j))


def _require_group(group: Semigroup) -> int:
    if not is_group(group):
        raise NotAGroup("Expected a group.")
    assert group.identity is not None
    return group.identity


def inverse(group: Semigroup, a: int) -> int:
    """Return the index of the inverse of ``a``."""
    return group.table[a].index(_require_group(group))


def subgroup_generated(group: Semigroup, generators: Iterable[int]) -> Subgroup:
    """Return the subgroup generated by some elements (the trivial one if none)."""
    gens = list(generators) or [_require_group(group)]
    return closure(group, gens).members


def commutator(group: Semigroup, a: int, b: int) -> int:
    """Return ``a⁻¹b⁻¹ab``."""
    return group.product(inverse(group, a), inverse(group, b), a, b)


def lower_central_series(group: Semigroup) -> List[Subgroup]:
    """Return γ₁ = G, γₖ₊₁ = [γₖ, G], … up to the first repeated term.

    Args:
        group: The group.

    Returns:
        List[Subgroup]: The distinct terms of the series.
    """
    _require_group(group)
    series: List[Subgroup] = [tuple(range(group.order))]
    while True:
        commutators = {
            commutator(group, a, g) for a in series[-1] for g in range(group.order)
        }
        following = subgroup_generated(group, commutators)
        if following == series[-1]:
            return series
        series.append(following)


def group_nilpotency(group: Semigroup) -> Optional[int]:
    """Return the nilpotency class of a group, or None if it is not nilpotent.

    Args:
        group: The group.

    Returns:
        Optional[int]: The number of strict steps of the lower central
            series down to the trivial subgroup.

    Raises:
        NotAGroup: If the semigroup is not a group.
    """
    series = lower_central_series(group)
    if len(series[-1]) == 1:
        return len(series) - 1
    return None


def center(group: Semigroup) -> Subgroup:
    """Return the elements commuting with every element."""
    _require_group(group)
    return tuple(
        a
        for a in range(group.order)
        if all(group.table[a][b] == group.table[b][a] for b in range(group.order))
    )


def subgroups(group: Semigroup, cap: Optional[int] = None) -> List[Subgroup]:
    """Return every subgroup, sorted by order then members.

    Args:
        group: The group.
        cap: The largest accepted order; ``NILPOTENTIA_GROUP_CAP`` by default.

    Returns:
        List[Subgroup]: The subgroups.

    Raises:
        CapExceeded: If the group is larger than the cap.
    """
    _require_group(group)
    cap = cap or get_setting("NILPOTENTIA_GROUP_CAP")
    return [found.members for found in all_subsemigroups(group, cap=cap)]


def is_normal(group: Semigroup, subgroup: Sequence[int]) -> bool:
    """Return True if the subgroup is invariant under conjugation."""
    members = set(subgroup)
    return all(
        group.product(g, h, inverse(group, g)) in members
        for g in range(group.order)
        for h in members
    )


def is_cyclic(group: Semigroup, subgroup: Sequence[int]) -> bool:
    """Return True if one element generates the subgroup."""
    return any(
        len(subgroup_generated(group, [h])) == len(subgroup) for h in subgroup
    )


def sylow_subgroups(
    group: Semigroup, prime: int, found: Sequence[Subgroup]
) -> List[Subgroup]:
    """Return the Sylow subgroups for a prime among the enumerated subgroups."""
    target = prime ** factorint(group.order).get(prime, 0)
    return [h for h in found if len(h) == target]


def frattini_subgroup(subgroup: Subgroup, found: Sequence[Subgroup]) -> Subgroup:
    """Return the intersection of the maximal subgroups of a subgroup.

    Args:
        subgroup: The subgroup.
        found: Every subgroup of the ambient group.

    Returns:
        Subgroup: The Frattini subgroup (the subgroup itself if trivial).
    """
    members = set(subgroup)
    proper = [set(h) for h in found if set(h) < members]
    maximal = [h for h in proper if not any(h < other for other in proper)]
    if not maximal:
        return subgroup
    return tuple(sorted(set.intersection(*maximal)))


@dataclass(frozen=True)
class SchmidtReport:
    """Facts about a group bearing on whether it is a Schmidt group."""

    is_group: bool
    nonnilpotent: bool
    order_pq: Optional[Tuple[int, int, int, int]]
    normal_sylow_p: bool
    cyclic_sylow_q: bool
    frattini_central: bool
    two_generated: bool
    all_proper_subgroups_nilpotent: bool

    @property
    def is_schmidt(self) -> bool:
        """True for a non-nilpotent group whose proper subgroups are nilpotent."""
        return (
            self.is_group
            and self.nonnilpotent
            and self.all_proper_subgroups_nilpotent
        )

    def as_dict(self) -> Dict[str, Any]:
        """Return the JSON representation."""
        data = asdict(self)
        data["order_pq"] = list(self.order_pq) if self.order_pq else None
        data["is_schmidt"] = self.is_schmidt
        return data


def schmidt_report(group: Semigroup, cap: Optional[int] = None) -> SchmidtReport:
    """Compute the Schmidt-group report of a group.

    Args:
        group: The group.
        cap: The largest accepted order; ``NILPOTENTIA_GROUP_CAP`` by default.

    Returns:
        SchmidtReport: The report.

    Raises:
        NotAGroup: If the semigroup is not a group.
        CapExceeded: If the group is larger than the cap.
    """
    _require_group(group)
    found = subgroups(group, cap=cap)
    order = group.order
    logger.debug(f"Found {len(found)} subgroups of a group of order {order}.")

    proper_nilpotent = all(
        group_nilpotency(group.restrict(h)) is not None
        for h in found
        if len(h) < order
    )

    factors = factorint(order)
    sylows = {p: sylow_subgroups(group, p, found) for p in factors}

    order_pq: Optional[Tuple[int, int, int, int]] = None
    normal_p = cyclic_q = False
    if len(factors) == 2:
        (p, a), (q, b) = sorted(factors.items())
        if len(sylows[p]) != 1 and len(sylows[q]) == 1:
            (p, a), (q, b) = (q, b), (p, a)
        order_pq = (p, a, q, b)
        normal_p = len(sylows[p]) == 1
        cyclic_q = all(is_cyclic(group, h) for h in sylows[q])

    central = set(center(group))
    frattini_central = all(
        set(frattini_subgroup(h, found)) <= central
        for hs in sylows.values()
        for h in hs
    )

    two_generated = any(
        len(subgroup_generated(group, pair)) == order
        for pair in combinations_with_replacement(range(order), 2)
    )

    return SchmidtReport(
        is_group=True,
        nonnilpotent=group_nilpotency(group) is None,
        order_pq=order_pq,
        normal_sylow_p=normal_p,
        cyclic_sylow_q=cyclic_q,
        frattini_central=frattini_central,
        two_generated=two_generated,
        all_proper_subgroups_nilpotent=proper_nilpotent,
    )
