# -*- coding: utf-8 -*-

"""Ideals, quotients, subsemigroups and minimal non-nilpotency."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Any,
    Callable,
    Dict,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import numpy as np

from nilpotentia.conf import get_setting
from nilpotentia.core import (
    ZERO_LABEL,
    Semigroup,
    SubsetClosure,
    adjoin_identity,
    fresh_label,
    saturate,
    semigroup_from_trusted_table,
)
from nilpotentia.exceptions import CapExceeded, NotAnIdeal
from nilpotentia.nilpotency import (
    NilpotencyResult,
    Witness,
    decide_nilpotent,
    is_nilpotent_subset,
)
from nilpotentia.signals import post_minimality_check, pre_minimality_check

logger = logging.getLogger(__name__)


def _mask(members: np.ndarray) -> int:
    """Pack a boolean membership array into an int bitmask."""
    return int.from_bytes(np.packbits(members, bitorder="little").tobytes(), "little")


def is_ideal(semigroup: Semigroup, members: Sequence[int]) -> bool:
    """Return True if a nonempty subset absorbs products on both sides."""
    if not members:
        return False
    inside = np.zeros(semigroup.order, dtype=bool)
    inside[list(members)] = True
    array = semigroup.array
    return bool(inside[array[inside, :]].all() and inside[array[:, inside]].all())


def ideals(semigroup: Semigroup) -> List[Tuple[int, ...]]:
    """Return every two-sided ideal, sorted by size then members.

    Ideals are the unions of principal ideals ``S¹xS¹``.

    Args:
        semigroup: The semigroup.

    Returns:
        List[Tuple[int, ...]]: The ideals, ``S`` itself included.
    """
    monoid = adjoin_identity(semigroup).array
    n = semigroup.order

    principal: Set[int] = set()
    for x in range(n):
        inside = np.zeros(n, dtype=bool)
        inside[monoid[monoid[:, x]].ravel()] = True
        principal.add(_mask(inside))

    found = set(principal)
    frontier = set(principal)
    while frontier:
        frontier = {a | b for a in frontier for b in principal} - found
        found |= frontier

    unpacked = [tuple(i for i in range(n) if mask >> i & 1) for mask in found]
    return sorted(unpacked, key=lambda members: (len(members), members))


def rees_quotient(semigroup: Semigroup, ideal: Sequence[int]) -> Semigroup:
    """Collapse an ideal to a single zero.

    The elements outside the ideal keep their order and labels; the zero is
    appended last. It keeps the label of a one-element ideal and is
    otherwise labelled ``"0"`` (primed if taken).

    Args:
        semigroup: The semigroup.
        ideal: The indices of the ideal.

    Returns:
        Semigroup: ``S/I``.

    Raises:
        NotAnIdeal: If the subset is not an ideal.
    """
    members = sorted(set(ideal))
    if not is_ideal(semigroup, members):
        raise NotAnIdeal("The subset is not an ideal.", members=members)

    kept = [a for a in range(semigroup.order) if a not in set(members)]
    kept_labels = [semigroup.elements[a] for a in kept]
    if len(members) == 1:
        zero_label = semigroup.elements[members[0]]
    else:
        zero_label = fresh_label(ZERO_LABEL, kept_labels)

    zero = len(kept)
    position = {a: i for i, a in enumerate(kept)}
    table = tuple(
        tuple(position.get(semigroup.table[a][b], zero) for b in kept) + (zero,)
        for a in kept
    ) + ((zero,) * (zero + 1),)
    return semigroup_from_trusted_table(kept_labels + [zero_label], table)


def _sweep(
    semigroup: Semigroup,
    max_generators: Optional[int] = None,
    extend: Callable[[np.ndarray], bool] = lambda members: True,
) -> Iterator[Tuple[Tuple[int, ...], np.ndarray]]:
    """Yield each distinct subsemigroup once, by number of generators.

    Level k+1 is obtained by adding one element to the closures of level k,
    so only ``extend``-approved closures found below ``max_generators`` are
    grown further. ``extend`` is consulted after its closure was yielded.
    """
    array = semigroup.array
    empty = np.zeros(semigroup.order, dtype=bool)
    seen: Set[int] = set()

    frontier: List[Tuple[Tuple[int, ...], np.ndarray]] = []
    for a in range(semigroup.order):
        members = saturate(array, empty, (a,))
        key = _mask(members)
        if key in seen:
            continue
        seen.add(key)
        frontier.append(((a,), members))
        yield (a,), members

    level = 1
    while frontier and (max_generators is None or level < max_generators):
        following = []
        for generators, members in frontier:
            if not extend(members):
                continue
            for a in np.flatnonzero(~members).tolist():
                grown = saturate(array, members, (a,))
                key = _mask(grown)
                if key in seen:
                    continue
                seen.add(key)
                found = (tuple(sorted(generators + (a,))), grown)
                following.append(found)
                yield found
        frontier = following
        level += 1


def _as_closure(generators: Tuple[int, ...], members: np.ndarray) -> SubsetClosure:
    return SubsetClosure(
        generators=generators,
        members=tuple(int(i) for i in np.flatnonzero(members)),
    )


def subsemigroups_generated(
    semigroup: Semigroup, max_generators: int
) -> List[SubsetClosure]:
    """Return the distinct subsemigroups generated by at most k elements.

    Args:
        semigroup: The semigroup.
        max_generators: The largest number of generators.

    Returns:
        List[SubsetClosure]: The closures, sorted by size then members, each
            with one generating set found for it.
    """
    found = [
        _as_closure(generators, members)
        for generators, members in _sweep(semigroup, max_generators)
    ]
    return sorted(found, key=lambda c: (len(c), c.members))


def all_subsemigroups(
    semigroup: Semigroup, cap: Optional[int] = None
) -> List[SubsetClosure]:
    """Return every subsemigroup.

    Args:
        semigroup: The semigroup.
        cap: The largest accepted order; ``NILPOTENTIA_CAP`` by default.

    Returns:
        List[SubsetClosure]: The subsemigroups, sorted by size then members.

    Raises:
        CapExceeded: If the semigroup is larger than the cap.
    """
    cap = cap or get_setting("NILPOTENTIA_CAP")
    if semigroup.order > cap:
        raise CapExceeded(
            f"Refusing to enumerate all subsemigroups of a semigroup of order "
            f"{semigroup.order} (cap {cap}).",
            order=semigroup.order,
            cap=cap,
        )
    found = [_as_closure(g, m) for g, m in _sweep(semigroup)]
    return sorted(found, key=lambda c: (len(c), c.members))


class MinimalityMode(str, Enum):
    """How many proper subsemigroups the minimality check looks at."""

    # Subsemigroups generated by at most four elements. Sufficient when S is
    # itself generated by at most four elements, which covers the types of
    # minimal non-nilpotent semigroups.
    FOUR_GENERATOR = "4gen"

    # Every proper subsemigroup. Subject to NILPOTENTIA_CAP.
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class Offender:
    """A proper subsemigroup or quotient that is not nilpotent."""

    kind: str  # "subsemigroup" or "quotient"
    members: Tuple[int, ...]
    generators: Tuple[int, ...] = ()
    witness: Optional[Witness] = None

    def as_dict(self, semigroup: Semigroup) -> Dict[str, Any]:
        """Serialize the offender with element labels."""
        data: Dict[str, Any] = {
            "kind": self.kind,
            "members": [semigroup.elements[i] for i in self.members],
        }
        if self.kind == "quotient":
            data["ideal"] = data.pop("members")
        else:
            data["generators"] = [semigroup.elements[i] for i in self.generators]
        if self.witness is not None:
            data["witness"] = self.witness.as_dict(semigroup)
        return data


@dataclass(frozen=True)
class MnnVerdict:
    """The outcome of `is_minimal_non_nilpotent`."""

    minimal: bool
    mode: MinimalityMode
    witness: Optional[Witness] = None
    offenders: Tuple[Offender, ...] = field(default=())

    @property
    def nonnilpotent(self) -> bool:
        """True if the semigroup itself is not nilpotent."""
        return self.witness is not None

    def as_dict(self, semigroup: Semigroup) -> Dict[str, Any]:
        """Serialize the verdict with element labels."""
        return {
            "minimal": self.minimal,
            "mode": self.mode.value,
            "nonnilpotent": self.nonnilpotent,
            "witness": self.witness.as_dict(semigroup) if self.witness else None,
            "offenders": [o.as_dict(semigroup) for o in self.offenders],
        }


def _lift_witness(
    result: NilpotencyResult, members: Sequence[int], one: int
) -> Optional[Witness]:
    """Map a witness found in a restricted subsemigroup back to S¹ indices."""
    witness = result.witness
    if witness is None:
        return None

    def lift(i: int) -> int:
        return members[i] if i < len(members) else one

    return Witness(
        x=lift(witness.x), y=lift(witness.y), ws=tuple(lift(w) for w in witness.ws)
    )


def is_minimal_non_nilpotent(
    semigroup: Semigroup,
    mode: MinimalityMode = MinimalityMode.FOUR_GENERATOR,
    cap: Optional[int] = None,
    stop_at_first: bool = False,
) -> MnnVerdict:
    """Decide whether a semigroup is minimal non-nilpotent.

    A minimal non-nilpotent semigroup is not nilpotent, while each of its
    proper subsemigroups and each Rees quotient by an ideal of two or more
    elements is nilpotent.

    Args:
        semigroup: The semigroup.
        mode: Which proper subsemigroups to examine.
        cap: The order cap for `MinimalityMode.EXHAUSTIVE`.
        stop_at_first: Return as soon as one offender is found.

    Returns:
        MnnVerdict: ``minimal`` with the witness of S, or the
            inclusion-minimal offenders found.

    Raises:
        CapExceeded: In exhaustive mode, if S is larger than the cap.
    """
    pre_minimality_check.send(
        sender=is_minimal_non_nilpotent, semigroup=semigroup, mode=mode
    )

    if mode == MinimalityMode.EXHAUSTIVE:
        cap = cap or get_setting("NILPOTENTIA_CAP")
        if semigroup.order > cap:
            raise CapExceeded(
                f"Exhaustive minimality checks are capped at order {cap}.",
                order=semigroup.order,
                cap=cap,
            )

    result = decide_nilpotent(semigroup)
    if result.nilpotent:
        verdict = MnnVerdict(minimal=False, mode=mode)
        post_minimality_check.send(
            sender=is_minimal_non_nilpotent, semigroup=semigroup, verdict=verdict
        )
        return verdict

    n = semigroup.order
    monoid = adjoin_identity(semigroup)
    one = monoid.identity
    assert one is not None
    monoid_table = monoid.array

    def subset_nilpotent(members: np.ndarray) -> bool:
        indices = np.flatnonzero(members)
        labels = np.union1d(indices, [one])
        return is_nilpotent_subset(monoid_table, indices, labels)

    offenders: List[Offender] = []
    covers: List[int] = []

    # Non-nilpotent Rees quotients.
    for ideal in ideals(semigroup):
        if len(ideal) < 2 or len(ideal) == n:
            continue
        inside = np.zeros(n, dtype=bool)
        inside[list(ideal)] = True
        if subset_nilpotent(inside):
            covers.append(_mask(inside))
        if not decide_nilpotent(rees_quotient(semigroup, ideal)).nilpotent:
            logger.debug(f"Rees quotient by {ideal} is not nilpotent.")
            offenders.append(Offender(kind="quotient", members=ideal))
            if stop_at_first:
                break

    # Non-nilpotent proper subsemigroups.
    found: List[Tuple[int, Tuple[int, ...], np.ndarray]] = []
    if not (stop_at_first and offenders):
        max_generators = 4 if mode == MinimalityMode.FOUR_GENERATOR else None

        def extend(members: np.ndarray) -> bool:
            key = _mask(members)
            return not any(off & ~key == 0 for off, _, _ in found)

        for generators, members in _sweep(semigroup, max_generators, extend):
            if members.all():
                continue
            key = _mask(members)
            if any(off & ~key == 0 for off, _, _ in found):
                continue
            if any(key & ~cover == 0 for cover in covers):
                continue
            if subset_nilpotent(members):
                covers = [c for c in covers if c & ~key != 0] + [key]
                continue
            found.append((key, generators, members))
            if stop_at_first:
                break

    for key, generators, members in found:
        if any(other != key and other & ~key == 0 for other, _, _ in found):
            continue
        indices = [int(i) for i in np.flatnonzero(members)]
        witness = _lift_witness(
            decide_nilpotent(semigroup.restrict(indices)), indices, one
        )
        offenders.append(
            Offender(
                kind="subsemigroup",
                members=tuple(indices),
                generators=generators,
                witness=witness,
            )
        )

    offenders.sort(key=lambda o: (o.kind, len(o.members), o.members))
    verdict = MnnVerdict(
        minimal=not offenders,
        mode=mode,
        witness=result.witness,
        offenders=tuple(offenders),
    )
    logger.info(
        f"Semigroup of order {n} is "
        f"{'' if verdict.minimal else 'not '}minimal non-nilpotent ({mode.value})."
    )
    post_minimality_check.send(
        sender=is_minimal_non_nilpotent, semigroup=semigroup, verdict=verdict
    )
    return verdict
