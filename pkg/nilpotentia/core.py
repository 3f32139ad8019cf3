# -*- coding: utf-8 -*-

"""Finite semigroups given by their Cayley tables."""

import json
import logging
import string
from dataclasses import dataclass
from functools import reduce
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np
from django.utils.functional import cached_property

from nilpotentia.exceptions import (
    BadParameter,
    BadShape,
    ElementIndexOutOfRange,
    EmptyGeneratorSet,
    InputFormatError,
    NonAssociative,
)

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]

##
# IDENTITY_LABEL
#
# The label of an adjoined identity. Primes are appended when the label is
# already taken by an element.
#
IDENTITY_LABEL = "1"

##
# ZERO_LABEL
#
# The label of a zero created by a construction (Rees quotients, Rees matrix
# semigroups with zero).
#
ZERO_LABEL = "0"


def fresh_label(preferred: str, taken: Iterable[str]) -> str:
    """Return the preferred label, primed until it is not already taken.

    Args:
        preferred: The label to use if possible.
        taken: The labels already in use.

    Returns:
        str: A label that is not in `taken`.
    """
    used = set(taken)
    label = preferred
    while label in used:
        label += "'"
    return label


def default_labels(order: int) -> Tuple[str, ...]:
    """Return generic element labels for a table without labels.

    Args:
        order: The number of elements.

    Returns:
        Tuple[str, ...]: Lowercase letters, or ``x0, x1, ...`` past 26.
    """
    if order <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:order])
    return tuple(f"x{i}" for i in range(order))


@dataclass(frozen=True)
class Semigroup:
    """A finite semigroup given by its Cayley table.

    ``table[i][j]`` is the index of the product of element ``i`` by element
    ``j``. Instances are immutable; use `validate_semigroup` to build one
    from untrusted data.
    """

    elements: Tuple[str, ...]
    table: Table
    zero: Optional[int] = None
    identity: Optional[int] = None

    @property
    def order(self) -> int:
        """The number of elements."""
        return len(self.elements)

    @cached_property
    def array(self) -> np.ndarray:
        """The Cayley table as a read-only numpy array."""
        array = np.array(self.table, dtype=np.intp).reshape(self.order, self.order)
        array.setflags(write=False)
        return array

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.elements)}

    def index(self, label: str) -> int:
        """Return the index of the element with the given label.

        Args:
            label: The element label.

        Returns:
            int: The element index.

        Raises:
            BadParameter: If no element has that label.
        """
        try:
            return self._positions[label]
        except KeyError:
            raise BadParameter(f"The semigroup has no element labelled {label!r}.")

    def check_index(self, index: int) -> int:
        """Return the index unchanged if it names an element.

        Args:
            index: An element index.

        Returns:
            int: The index.

        Raises:
            ElementIndexOutOfRange: If the index is out of range.
        """
        if not 0 <= index < self.order:
            raise ElementIndexOutOfRange(
                f"Element index {index} is out of range for a semigroup of order {self.order}.",
                index=index,
            )
        return index

    def multiply(self, a: int, b: int) -> int:
        """Return the index of the product ``a·b``."""
        return self.table[a][b]

    def product(self, *indices: int) -> int:
        """Return the index of the product of one or more elements."""
        return reduce(self.multiply, indices)

    def power(self, a: int, exponent: int) -> int:
        """Return the index of ``a`` raised to a positive power."""
        result = a
        for _ in range(exponent - 1):
            result = self.table[result][a]
        return result

    @cached_property
    def is_commutative(self) -> bool:
        """True if ``ab = ba`` for all elements."""
        return bool((self.array == self.array.T).all())

    def restrict(self, members: Iterable[int]) -> "Semigroup":
        """Return a product-closed subset as a semigroup in its own right.

        Labels are preserved; indices are renumbered in ascending order.

        Args:
            members: The indices of a product-closed subset.

        Returns:
            Semigroup: The subsemigroup.
        """
        kept = sorted(set(members))
        position = {old: new for new, old in enumerate(kept)}
        table = tuple(
            tuple(position[self.table[a][b]] for b in kept) for a in kept
        )
        return semigroup_from_trusted_table(
            tuple(self.elements[i] for i in kept), table
        )

    def dual(self) -> "Semigroup":
        """Return the dual semigroup, whose table is the transpose of this one."""
        table = tuple(
            tuple(self.table[b][a] for b in range(self.order))
            for a in range(self.order)
        )
        return Semigroup(self.elements, table, self.zero, self.identity)

    def relabel(self, permutation: Sequence[int]) -> "Semigroup":
        """Return an isomorphic copy with element ``i`` moved to ``permutation[i]``.

        Args:
            permutation: A permutation of ``range(order)``.

        Returns:
            Semigroup: The relabelled semigroup.
        """
        n = self.order
        elements = [""] * n
        table = [[0] * n for _ in range(n)]
        for a in range(n):
            elements[permutation[a]] = self.elements[a]
            for b in range(n):
                table[permutation[a]][permutation[b]] = permutation[self.table[a][b]]
        return semigroup_from_trusted_table(
            tuple(elements), tuple(tuple(row) for row in table)
        )

    def as_dict(self) -> Dict[str, Any]:
        """Return the Semigroup JSON representation.

        Returns:
            Dict[str, Any]: ``{"elements": [...], "table": [[...], ...]}``.
        """
        return {
            "elements": list(self.elements),
            "table": [list(row) for row in self.table],
        }


@dataclass(frozen=True)
class SubsetClosure:
    """The subsemigroup generated by a set of elements."""

    generators: Tuple[int, ...]
    members: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def labels(self, semigroup: Semigroup) -> List[str]:
        """Return the member labels in index order."""
        return [semigroup.elements[i] for i in self.members]


def _detect_zero(array: np.ndarray) -> Optional[int]:
    for z in range(array.shape[0]):
        if (array[z, :] == z).all() and (array[:, z] == z).all():
            return z
    return None


def _detect_identity(array: np.ndarray) -> Optional[int]:
    indices = np.arange(array.shape[0])
    for e in range(array.shape[0]):
        if (array[e, :] == indices).all() and (array[:, e] == indices).all():
            return e
    return None


def semigroup_from_trusted_table(labels: Sequence[str], table: Table) -> Semigroup:
    """Build a semigroup from a table known to be associative.

    Detects the zero and the identity but does not re-check associativity.

    Args:
        labels: The element labels.
        table: The Cayley table.

    Returns:
        Semigroup: The semigroup.
    """
    array = np.array(table, dtype=np.intp).reshape(len(labels), len(labels))
    return Semigroup(
        elements=tuple(labels),
        table=tuple(tuple(int(v) for v in row) for row in table),
        zero=_detect_zero(array),
        identity=_detect_identity(array),
    )


def find_non_associative_triple(array: np.ndarray) -> Optional[Tuple[int, int, int]]:
    """Return the least triple ``(i, j, k)`` with ``(ij)k != i(jk)``, if any.

    Args:
        array: A square table of element indices.

    Returns:
        Optional[Tuple[int, int, int]]: The failing triple, or None if the
            table is associative.
    """
    left = array[array]  # left[i, j, k] = (ij)k
    right = array[:, array]  # right[i, j, k] = i(jk)
    failures = np.argwhere(left != right)
    if failures.size == 0:
        return None
    i, j, k = (int(v) for v in failures[0])
    return i, j, k


def validate_semigroup(labels: Sequence[str], table: Sequence[Sequence[int]]) -> Semigroup:
    """Validate a labelled Cayley table and return the semigroup it defines.

    Args:
        labels: The element labels, one per row.
        table: The Cayley table; entries are element indices.

    Returns:
        Semigroup: The semigroup, with its zero and identity detected.

    Raises:
        BadShape: If the table is empty, not square, has entries out of range
            or does not match the labels.
        NonAssociative: If some triple fails associativity.
    """
    n = len(table)
    if n == 0:
        raise BadShape("A semigroup must have at least one element.")
    if len(labels) != n:
        raise BadShape(f"Got {len(labels)} labels for a table with {n} rows.")
    if len(set(labels)) != n:
        raise BadShape("Element labels must be distinct.")
    if any(not isinstance(label, str) for label in labels):
        raise BadShape("Element labels must be strings.")
    for i, row in enumerate(table):
        if len(row) != n:
            raise BadShape(f"Row {i} has {len(row)} entries; expected {n}.")
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise BadShape(f"Entry ({i},{j}) is not an integer: {value!r}.")
            if not 0 <= value < n:
                raise BadShape(f"Entry ({i},{j}) = {value} is out of range 0..{n - 1}.")

    array = np.array(table, dtype=np.intp)
    triple = find_non_associative_triple(array)
    if triple is not None:
        raise NonAssociative(triple, list(labels))

    return semigroup_from_trusted_table(
        tuple(labels), tuple(tuple(int(v) for v in row) for row in table)
    )


def adjoin_identity(semigroup: Semigroup) -> Semigroup:
    """Return the smallest monoid containing the semigroup.

    A semigroup that already has an identity is returned unchanged;
    otherwise a fresh identity element is appended as the last index.

    Args:
        semigroup: The semigroup.

    Returns:
        Semigroup: The monoid S¹.
    """
    if semigroup.identity is not None:
        return semigroup

    n = semigroup.order
    table = tuple(row + (i,) for i, row in enumerate(semigroup.table)) + (
        tuple(range(n + 1)),
    )
    label = fresh_label(IDENTITY_LABEL, semigroup.elements)
    zero = semigroup.zero
    return Semigroup(semigroup.elements + (label,), table, zero=zero, identity=n)


def saturate(
    array: np.ndarray, members: np.ndarray, frontier: Iterable[int]
) -> np.ndarray:
    """Close a product-closed subset together with new elements.

    Multiplies each newly added element against everything found so far, on
    both sides, until nothing new appears.

    Args:
        array: The Cayley table.
        members: A boolean mask of a product-closed subset (may be empty).
        frontier: Elements to add.

    Returns:
        np.ndarray: The boolean mask of the generated subsemigroup.
    """
    members = members.copy()
    new = np.unique(np.fromiter(frontier, dtype=np.intp))
    new = new[~members[new]]
    members[new] = True
    while new.size:
        current = np.flatnonzero(members)
        products = np.concatenate(
            (array[np.ix_(new, current)].ravel(), array[np.ix_(current, new)].ravel())
        )
        new = np.unique(products[~members[products]])
        members[new] = True
    return members


def closure(semigroup: Semigroup, generators: Iterable[int]) -> SubsetClosure:
    """Return the subsemigroup generated by a set of elements.

    Args:
        semigroup: The semigroup.
        generators: The generating element indices.

    Returns:
        SubsetClosure: The generators and the members, in ascending order.

    Raises:
        EmptyGeneratorSet: If no generators are given.
    """
    gens = tuple(sorted({semigroup.check_index(g) for g in generators}))
    if not gens:
        raise EmptyGeneratorSet("Cannot generate a subsemigroup from no elements.")

    empty = np.zeros(semigroup.order, dtype=bool)
    members = saturate(semigroup.array, empty, gens)
    return SubsetClosure(
        generators=gens, members=tuple(int(i) for i in np.flatnonzero(members))
    )


def idempotents(semigroup: Semigroup) -> FrozenSet[int]:
    """Return the indices of the idempotent elements."""
    return frozenset(i for i in range(semigroup.order) if semigroup.table[i][i] == i)


def is_group(semigroup: Semigroup) -> bool:
    """Return True if the semigroup has an identity and two-sided inverses."""
    e = semigroup.identity
    if e is None:
        return False
    # In a finite monoid, every row and column being a permutation is
    # equivalent to every element being invertible.
    return all(e in row for row in semigroup.table)


def index_and_period(semigroup: Semigroup, a: int) -> Tuple[int, int]:
    """Return the index and period of the monogenic subsemigroup ⟨a⟩.

    Args:
        semigroup: The semigroup.
        a: The element index.

    Returns:
        Tuple[int, int]: ``(index, period)`` with ``a^(index+period) = a^index``.
    """
    seen: Dict[int, int] = {}
    power, exponent = a, 1
    while power not in seen:
        seen[power] = exponent
        power = semigroup.table[power][a]
        exponent += 1
    index = seen[power]
    return index, exponent - index


def _element_invariants(semigroup: Semigroup) -> List[Tuple[int, ...]]:
    array = semigroup.array
    occurrences = np.bincount(array.ravel(), minlength=semigroup.order)
    return [
        (
            int(semigroup.table[a][a] == a),
            *index_and_period(semigroup, a),
            len(set(semigroup.table[a])),
            len(set(array[:, a].tolist())),
            int(occurrences[a]),
            int(a == semigroup.zero),
            int(a == semigroup.identity),
        )
        for a in range(semigroup.order)
    ]


def is_isomorphic(first: Semigroup, second: Semigroup) -> Optional[Tuple[int, ...]]:
    """Search for an isomorphism between two semigroups.

    Backtracks over assignments of elements, pruning candidates whose
    invariants (idempotency, index and period, row and column diversity,
    occurrence count) differ and propagating every product forced by the
    assignments made so far.

    Args:
        first: The first semigroup.
        second: The second semigroup.

    Returns:
        Optional[Tuple[int, ...]]: ``phi`` with ``phi[first index] = second
            index`` preserving the table, or None if the semigroups are not
            isomorphic.
    """
    n = first.order
    if n != second.order:
        return None
    invariants = _element_invariants(first)
    targets = _element_invariants(second)
    if sorted(invariants) != sorted(targets):
        return None

    candidates = [[b for b in range(n) if targets[b] == invariants[a]] for a in range(n)]
    left, right = first.table, second.table
    mapping = [-1] * n
    used = [False] * n
    assigned: List[int] = []

    def assign(a: int, b: int) -> bool:
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            if mapping[x] != -1:
                if mapping[x] != y:
                    return False
                continue
            if used[y] or invariants[x] != targets[y]:
                return False
            mapping[x] = y
            used[y] = True
            assigned.append(x)
            for c in list(assigned):
                stack.append((left[x][c], right[y][mapping[c]]))
                stack.append((left[c][x], right[mapping[c]][y]))
        return True

    def undo(mark: int) -> None:
        while len(assigned) > mark:
            x = assigned.pop()
            used[mapping[x]] = False
            mapping[x] = -1

    def search() -> bool:
        free = [a for a in range(n) if mapping[a] == -1]
        if not free:
            return True
        a = min(free, key=lambda x: len(candidates[x]))
        for b in candidates[a]:
            if used[b]:
                continue
            mark = len(assigned)
            if assign(a, b) and search():
                return True
            undo(mark)
        return False

    if not search():
        return None
    return tuple(mapping)


def semigroup_from_dict(data: Mapping[str, Any]) -> Semigroup:
    """Build a semigroup from its JSON representation.

    Args:
        data: A mapping with a ``table`` and, optionally, ``elements``.

    Returns:
        Semigroup: The validated semigroup.

    Raises:
        InputFormatError: If the mapping does not have the documented shape.
    """
    if not isinstance(data, Mapping) or "table" not in data:
        raise InputFormatError("Semigroup JSON must be an object with a 'table' key.")
    table = data["table"]
    if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
        raise BadShape("The 'table' must be a list of rows.")
    labels = data.get("elements") or list(default_labels(len(table)))
    if not isinstance(labels, list):
        raise BadShape("The 'elements' must be a list of labels.")
    return validate_semigroup(labels, table)


def parse_semigroup(text: str) -> Semigroup:
    """Parse a semigroup from Semigroup JSON or the plain-text format.

    The plain-text format is the order on the first line followed by one
    line of whitespace-separated indices per row. Elements read from it get
    `default_labels`.

    Args:
        text: The document.

    Returns:
        Semigroup: The validated semigroup.

    Raises:
        InputFormatError: If the text is in neither format.
    """
    stripped = text.strip()
    if not stripped:
        raise InputFormatError("The input is empty.")

    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise InputFormatError(f"The input is not valid JSON: {e}.")
        return semigroup_from_dict(data)

    lines = [line.split() for line in stripped.splitlines() if line.strip()]
    try:
        rows = [[int(value) for value in line] for line in lines]
    except ValueError:
        raise InputFormatError("The plain-text format only allows integers.")
    if len(rows[0]) != 1:
        raise InputFormatError("The first line of the plain-text format is the order.")
    order = rows[0][0]
    if order != len(rows) - 1:
        raise BadShape(f"Expected {order} rows, got {len(rows) - 1}.")
    return validate_semigroup(default_labels(order), rows[1:])


def semigroup_to_text(semigroup: Semigroup) -> str:
    """Render a semigroup in the plain-text format."""
    lines = [str(semigroup.order)]
    lines.extend(" ".join(str(v) for v in row) for row in semigroup.table)
    return "\n".join(lines) + "\n"
