# -*- coding: utf-8 -*-

"""Rees matrix semigroups and the actions of a semigroup on an inverse ideal.

Conventions:

* An element of ``M⁰(G; n, m; P)`` is ``(g; i, j)`` with ``1 ≤ i ≤ n`` and
  ``1 ≤ j ≤ m``, or θ. The sandwich matrix ``P`` has ``m`` rows and ``n``
  columns and ``(g; i, j)(h; k, l) = (g p_jk h; i, l)`` when ``p_jk`` is not
  θ, otherwise θ.
* A partial transformation of ``{1..n}`` is stored as a tuple ``t`` of
  length ``n + 1`` whose entry 0 stands for θ: ``t[0] == 0`` and ``t[i] == 0``
  when ``i`` is sent to θ. Maps act on the left, so ``(s ∘ t)[i] = s[t[i]]``.
* A Ψ map is a tuple of the same length whose entries are group element
  indices, ``None`` where the transformation sends the point to θ.
"""

import logging
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from django.utils.functional import cached_property

from nilpotentia.core import (
    ZERO_LABEL,
    Semigroup,
    find_non_associative_triple,
    is_group,
    semigroup_from_dict,
    semigroup_from_trusted_table,
)
from nilpotentia.exceptions import (
    BadShape,
    CocycleViolation,
    GammaNotHomomorphism,
    IllDefined,
    InputFormatError,
    InvalidGlueSpec,
    NonAssociativeResult,
    NotAGroup,
    NotAnIdeal,
    NotCompletelyZeroSimple,
    NotInjectiveOffTheta,
    NotInverseIdeal,
    NotRegular,
    ReconstructionMismatch,
    SupportMismatch,
)
from nilpotentia.groups import group_nilpotency
from nilpotentia.structure import is_ideal

logger = logging.getLogger(__name__)

Transformation = Tuple[int, ...]
PsiMap = Tuple[Optional[int], ...]
Coordinates = Tuple[int, int, int]

THETA = "θ"


def compose(s: Transformation, t: Transformation) -> Transformation:
    """Return ``s ∘ t`` (apply ``t`` first)."""
    return tuple(s[point] for point in t)


def constant_theta(n: int) -> Transformation:
    """Return the map sending every point to θ."""
    return (0,) * (n + 1)


def identity_psi(gamma: Transformation, group: Semigroup) -> PsiMap:
    """Return the Ψ map that is the group identity wherever ``gamma`` is defined."""
    return (None,) + tuple(
        group.identity if image else None for image in gamma[1:]
    )


@dataclass(frozen=True)
class ReesSpec:
    """The data of a Rees matrix semigroup ``M(G; n, m; P)``, with or without zero.

    ``sandwich[j - 1][k - 1]`` is ``p_jk``: a group index, or None for θ.
    """

    group: Semigroup
    rows: int
    cols: int
    sandwich: Tuple[Tuple[Optional[int], ...], ...]
    with_zero: bool = True

    @classmethod
    def identity(cls, group: Semigroup, n: int) -> "ReesSpec":
        """Return the spec of ``M⁰(G; n, n; I)``."""
        one = group.identity
        sandwich = tuple(
            tuple(one if j == k else None for k in range(n)) for j in range(n)
        )
        return cls(group=group, rows=n, cols=n, sandwich=sandwich)

    def validate(self) -> None:
        """Check the spec.

        Raises:
            NotAGroup: If the group table is not a group.
            BadShape: If the matrix does not have m rows of n entries, or
                uses θ without a zero.
            NotRegular: If some row or column of the matrix is all θ.
        """
        if not is_group(self.group):
            raise NotAGroup("The structure group is not a group.")
        if self.rows < 1 or self.cols < 1:
            raise BadShape("A Rees matrix semigroup needs n, m ≥ 1.")
        if len(self.sandwich) != self.cols or any(
            len(row) != self.rows for row in self.sandwich
        ):
            raise BadShape(
                f"The sandwich matrix must have {self.cols} rows of {self.rows} entries."
            )
        for row in self.sandwich:
            for entry in row:
                if entry is None:
                    if not self.with_zero:
                        raise BadShape("θ entries need a Rees matrix semigroup with zero.")
                elif not 0 <= entry < self.group.order:
                    raise BadShape(f"Sandwich entry {entry} is not a group element.")
        if any(all(e is None for e in row) for row in self.sandwich) or any(
            all(row[k] is None for row in self.sandwich) for k in range(self.rows)
        ):
            raise NotRegular("Every row and column of P needs a non-θ entry.")

    @property
    def is_identity_sandwich(self) -> bool:
        """True if ``n = m`` and ``P`` is the identity matrix."""
        one = self.group.identity
        return self.rows == self.cols and all(
            entry == (one if j == k else None)
            for j, row in enumerate(self.sandwich)
            for k, entry in enumerate(row)
        )

    def as_dict(self) -> Dict[str, Any]:
        """Return the ReesSpec JSON representation, ``"0"`` standing for θ."""
        labels = self.group.elements
        return {
            "group": self.group.as_dict(),
            "rows": self.rows,
            "cols": self.cols,
            "sandwich": [
                [ZERO_LABEL if e is None else labels[e] for e in row]
                for row in self.sandwich
            ],
            "with_zero": self.with_zero,
        }


def _group_entry(group: Semigroup, value: Any) -> Optional[int]:
    if value is None or value == ZERO_LABEL:
        return None
    if isinstance(value, str):
        return group.index(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise BadShape(f"Cannot read {value!r} as a group element.")


def rees_spec_from_dict(data: Mapping[str, Any]) -> ReesSpec:
    """Build a ReesSpec from its JSON representation.

    ``sandwich`` has ``cols`` rows of ``rows`` entries. Entries are group
    labels or indices, ``"0"`` (or ``null``) for θ.

    Args:
        data: The mapping with ``group``, ``rows``, ``cols``, ``sandwich``
            and optionally ``with_zero``.

    Returns:
        ReesSpec: The validated spec.

    Raises:
        InputFormatError: If a key is missing.
    """
    try:
        group = semigroup_from_dict(data["group"])
        n, m, matrix = int(data["rows"]), int(data["cols"]), data["sandwich"]
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"ReesSpec JSON is missing or has a bad field: {e}.")
    if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
        raise BadShape("The sandwich matrix must be a list of rows.")
    spec = ReesSpec(
        group=group,
        rows=n,
        cols=m,
        sandwich=tuple(tuple(_group_entry(group, e) for e in row) for row in matrix),
        with_zero=bool(data.get("with_zero", True)),
    )
    spec.validate()
    return spec


def build_rees(spec: ReesSpec) -> Tuple[Semigroup, Dict[int, Coordinates]]:
    """Build the Cayley table of a Rees matrix semigroup.

    Elements are listed with ``i`` outermost, then ``j``, then the group
    element, and θ (labelled ``"0"``) last. Labels read ``(g;i,j)``.

    Args:
        spec: The Rees matrix data.

    Returns:
        Tuple[Semigroup, Dict[int, Coordinates]]: The semigroup and the
            coordinates ``(g, i, j)`` of each non-θ element.

    Raises:
        NotAGroup: See `ReesSpec.validate`.
        BadShape: See `ReesSpec.validate`.
        NotRegular: See `ReesSpec.validate`.
    """
    spec.validate()
    group = spec.group
    coords: Dict[int, Coordinates] = {}
    labels: List[str] = []
    for i in range(1, spec.rows + 1):
        for j in range(1, spec.cols + 1):
            for g in range(group.order):
                coords[len(labels)] = (g, i, j)
                labels.append(f"({group.elements[g]};{i},{j})")
    element = {c: x for x, c in coords.items()}

    zero = len(labels) if spec.with_zero else None
    if zero is not None:
        labels.append(ZERO_LABEL)

    size = len(labels)
    table = [[zero] * size for _ in range(size)]
    for x, (g, i, j) in coords.items():
        for y, (h, k, l) in coords.items():
            p = spec.sandwich[j - 1][k - 1]
            if p is not None:
                table[x][y] = element[(group.product(g, p, h), i, l)]
    return (
        semigroup_from_trusted_table(labels, tuple(tuple(row) for row in table)),
        coords,
    )


def rees_nilpotency_criterion(spec: ReesSpec) -> bool:
    """Decide nilpotency of a Rees matrix semigroup from its data alone.

    It is nilpotent exactly when ``n = m``, ``P`` has one non-θ entry in
    each row and column, and ``G`` is nilpotent.
    """
    spec.validate()
    if spec.rows != spec.cols:
        return False
    monomial = all(
        sum(e is not None for e in row) == 1 for row in spec.sandwich
    ) and all(
        sum(row[k] is not None for row in spec.sandwich) == 1
        for k in range(spec.rows)
    )
    return monomial and group_nilpotency(spec.group) is not None


@dataclass(frozen=True)
class ReesDecomposition:
    """An isomorphism between an ideal of S and a Rees matrix semigroup.

    ``coords`` maps each non-θ member of the ideal to ``(g, i, j)``, where
    ``g`` indexes ``spec.group`` (the group H_e of S, restricted).
    """

    members: Tuple[int, ...]
    zero: int
    spec: ReesSpec
    coords: Mapping[int, Coordinates]

    @cached_property
    def elements(self) -> Dict[Coordinates, int]:
        """The inverse of ``coords``."""
        return {c: x for x, c in self.coords.items()}

    def element(self, g: int, i: int, j: int) -> int:
        """Return the S index of ``(g; i, j)``."""
        return self.elements[(g, i, j)]

    def as_dict(self, semigroup: Semigroup) -> Dict[str, Any]:
        """Serialize the decomposition with S labels."""
        labels = semigroup.elements
        group = self.spec.group.elements
        return {
            "ideal": [labels[x] for x in self.members],
            "spec": self.spec.as_dict(),
            "coords": {
                labels[x]: [group[g], i, j] for x, (g, i, j) in sorted(self.coords.items())
            },
        }


def _classes(
    members: Sequence[int], generated: Mapping[int, frozenset]
) -> List[List[int]]:
    classes: Dict[frozenset, List[int]] = {}
    for x in members:
        classes.setdefault(generated[x], []).append(x)
    return sorted(classes.values(), key=min)


def rees_decompose(semigroup: Semigroup, ideal: Sequence[int]) -> ReesDecomposition:
    """Recover Rees matrix coordinates for a completely 0-simple ideal.

    Picks the least nonzero idempotent ``e``, takes ``G = H_e`` and one
    representative per R-class in ``L_e`` and per L-class in ``R_e``. When
    the ideal is an inverse semigroup the L-class representatives are chosen
    as inverses of the R-class ones, so that the sandwich matrix comes out
    as the identity.

    Args:
        semigroup: The semigroup S, which must have a zero.
        ideal: The indices of the ideal (zero included).

    Returns:
        ReesDecomposition: The coordinates.

    Raises:
        NotAnIdeal: If the subset is not an ideal.
        NotCompletelyZeroSimple: If the ideal has no zero or is not 0-simple.
        ReconstructionMismatch: If the reconstructed products disagree with S.
    """
    members = tuple(sorted(set(ideal)))
    if not is_ideal(semigroup, members):
        raise NotAnIdeal("The subset is not an ideal.", members=list(members))
    zero = semigroup.zero
    if zero is None or zero not in members:
        raise NotCompletelyZeroSimple("The ideal does not contain a zero of S.")

    array = semigroup.array
    inside = np.array(members, dtype=np.intp)
    nonzero = [x for x in members if x != zero]
    if not nonzero or (array[np.ix_(inside, inside)] == zero).all():
        raise NotCompletelyZeroSimple("The ideal is null.")

    everything = set(members)
    for x in nonzero:
        left = array[inside, x]
        generated = {x} | set(left.tolist()) | set(array[x, inside].tolist())
        generated |= set(array[np.ix_(left, inside)].ravel().tolist())
        if generated != everything:
            raise NotCompletelyZeroSimple(
                f"{semigroup.elements[x]} does not generate the whole ideal."
            )

    right = {x: frozenset({x} | set(array[x, inside].tolist())) for x in nonzero}
    left = {x: frozenset({x} | set(array[inside, x].tolist())) for x in nonzero}
    r_classes = _classes(nonzero, right)
    l_classes = _classes(nonzero, left)
    row_of = {x: i for i, cls in enumerate(r_classes, 1) for x in cls}
    col_of = {x: j for j, cls in enumerate(l_classes, 1) for x in cls}

    idempotents = [x for x in nonzero if array[x, x] == x]
    if not idempotents:
        raise NotCompletelyZeroSimple("The ideal has no nonzero idempotent.")
    e = idempotents[0]
    h_e = [x for x in nonzero if row_of[x] == row_of[e] and col_of[x] == col_of[e]]
    group = semigroup.restrict(h_e)
    if not is_group(group):
        raise NotCompletelyZeroSimple("The H-class of the idempotent is not a group.")
    in_group = {x: g for g, x in enumerate(sorted(h_e))}

    n, m = len(r_classes), len(l_classes)
    r_reps = [
        e
        if i == row_of[e]
        else min(x for x in r_classes[i - 1] if col_of[x] == col_of[e])
        for i in range(1, n + 1)
    ]

    # Inverse ideals: pair each R-class with the L-class of the inverse of
    # its representative.
    inverses: List[Optional[int]] = []
    for r in r_reps:
        found = [y for y in r_classes[row_of[e] - 1] if array[y, r] == e]
        inverses.append(found[0] if len(found) == 1 else None)
    inverse_columns = [col_of[y] for y in inverses if y is not None]
    if n == m and len(set(inverse_columns)) == n:
        q_reps = [y for y in inverses if y is not None]
        renumber = {col: j for j, col in enumerate(inverse_columns, 1)}
        col_of = {x: renumber[col] for x, col in col_of.items()}
    else:
        q_reps = [
            e
            if j == col_of[e]
            else min(x for x in l_classes[j - 1] if row_of[x] == row_of[e])
            for j in range(1, m + 1)
        ]

    sandwich = tuple(
        tuple(
            None if array[q, r] == zero else in_group[int(array[q, r])] for r in r_reps
        )
        for q in q_reps
    )
    spec = ReesSpec(group=group, rows=n, cols=m, sandwich=sandwich)

    coords: Dict[int, Coordinates] = {}
    for x in nonzero:
        i, j = row_of[x], col_of[x]
        for h in h_e:
            if array[array[r_reps[i - 1], h], q_reps[j - 1]] == x:
                coords[x] = (in_group[h], i, j)
                break
        else:
            raise ReconstructionMismatch(
                f"No coordinates found for {semigroup.elements[x]}."
            )

    decomposition = ReesDecomposition(
        members=members, zero=zero, spec=spec, coords=coords
    )
    for x, (g, i, j) in coords.items():
        for y, (h, k, l) in coords.items():
            p = sandwich[j - 1][k - 1]
            expected = (
                zero
                if p is None
                else decomposition.element(group.product(g, p, h), i, l)
            )
            if semigroup.table[x][y] != expected:
                raise ReconstructionMismatch(
                    f"The product of {semigroup.elements[x]} and "
                    f"{semigroup.elements[y]} disagrees with the Rees matrix."
                )

    logger.debug(f"Decomposed an ideal of {len(members)} elements as n={n}, m={m}.")
    return decomposition


@dataclass(frozen=True)
class Cycle:
    """A closed cycle ``(p₁,…,pₖ)`` or a chain ``(p₁,…,pₖ,θ)`` ending in θ."""

    points: Tuple[int, ...]
    tailed: bool

    def __str__(self) -> str:
        parts = [str(p) for p in self.points] + ([THETA] if self.tailed else [])
        return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class CycleForm:
    """The cycle-and-chain decomposition of a partial injection.

    Chains come from points without preimage; single-point chains
    ``(p,θ)`` are left out. Closed cycles start at their least point, and
    all entries are sorted by their first point.
    """

    cycles: Tuple[Cycle, ...]

    @property
    def closed(self) -> Tuple[Cycle, ...]:
        """The closed cycles, fixed points included."""
        return tuple(c for c in self.cycles if not c.tailed)

    @property
    def tailed(self) -> Tuple[Cycle, ...]:
        """The chains ending in θ."""
        return tuple(c for c in self.cycles if c.tailed)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.cycles) or THETA


def _check_injective(t: Transformation) -> None:
    if t[0] != 0:
        raise NotInjectiveOffTheta("A transformation must send θ to θ.")
    images = [p for p in t[1:] if p]
    if len(images) != len(set(images)):
        raise NotInjectiveOffTheta(f"{list(t[1:])} is not injective off θ.")


def cycle_decompose(t: Transformation) -> CycleForm:
    """Decompose a partial injection into cycles and θ-chains.

    Args:
        t: The transformation, ``t[0] == 0``.

    Returns:
        CycleForm: The decomposition; it renders as e.g. ``(2,1,3,θ)(4)``.

    Raises:
        NotInjectiveOffTheta: If two points share an image.
    """
    _check_injective(t)
    n = len(t) - 1
    has_preimage = {p for p in t[1:] if p}
    visited = set()
    cycles = []

    for start in range(1, n + 1):
        if start in has_preimage:
            continue
        chain = [start]
        point = t[start]
        while point:
            chain.append(point)
            point = t[point]
        visited.update(chain)
        if len(chain) > 1:
            cycles.append(Cycle(tuple(chain), tailed=True))

    for start in range(1, n + 1):
        if start in visited:
            continue
        cycle = [start]
        point = t[start]
        while point != start:
            cycle.append(point)
            point = t[point]
        visited.update(cycle)
        cycles.append(Cycle(tuple(cycle), tailed=False))

    cycles.sort(key=lambda c: c.points[0])
    return CycleForm(tuple(cycles))


_CYCLE = re.compile(r"\(([^()]*)\)")


def transformation_from_cycles(text: str, n: int) -> Transformation:
    """Parse cycle notation such as ``"(2,1,3,θ)(4)"`` into a transformation.

    Points that are not mentioned go to θ. θ may also be written ``0``, and
    ``"θ"`` alone is the constant map.

    Args:
        text: The cycle notation.
        n: The number of points.

    Returns:
        Transformation: The transformation.

    Raises:
        BadShape: If the notation is malformed or mentions a point twice.
    """
    stripped = text.replace(" ", "")
    t = [0] * (n + 1)
    if stripped in (THETA, "0", ""):
        return tuple(t)

    if _CYCLE.sub("", stripped):
        raise BadShape(f"Cannot read {text!r} as cycle notation.")
    seen: List[int] = []
    for body in _CYCLE.findall(stripped):
        tokens = body.split(",")
        tailed = tokens[-1] in (THETA, "0")
        try:
            points = [int(token) for token in (tokens[:-1] if tailed else tokens)]
        except ValueError:
            raise BadShape(f"Cannot read {text!r} as cycle notation.")
        if not points or any(not 1 <= p <= n for p in points):
            raise BadShape(f"{text!r} mentions points outside 1..{n}.")
        seen.extend(points)
        for a, b in zip(points, points[1:]):
            t[a] = b
        t[points[-1]] = 0 if tailed else points[0]
    if len(seen) != len(set(seen)):
        raise BadShape(f"{text!r} mentions a point twice.")
    return tuple(t)


def has_transposition(form: CycleForm) -> bool:
    """Return True if the form contains a closed cycle of length two."""
    return any(len(c.points) == 2 for c in form.closed)


def find_u4_pattern(
    first: CycleForm, second: CycleForm
) -> Optional[Tuple[int, int, int]]:
    """Find points ``o₁, o₂, o₃`` with ``(o₂,o₁,o₃,θ)`` in the first form and
    both ``(o₂,o₃,θ)`` and ``(o₁)`` in the second.

    Returns:
        Optional[Tuple[int, int, int]]: ``(o₁, o₂, o₃)``, or None.
    """
    for cycle in first.tailed:
        if len(cycle.points) != 3:
            continue
        o2, o1, o3 = cycle.points
        if (
            Cycle((o2, o3), tailed=True) in second.cycles
            and Cycle((o1,), tailed=False) in second.cycles
        ):
            return o1, o2, o3
    return None


def u4_pattern(first: CycleForm, second: CycleForm) -> bool:
    """Return True if the two forms show the pattern of a type-U4 pair."""
    return find_u4_pattern(first, second) is not None


def find_u5_pattern(
    first: Transformation, second: Transformation
) -> Optional[Tuple[int, int, int, int]]:
    """Find distinct points with ``k₁ → k₂, k₃ → k₄`` under the first map and
    ``k₁ → k₄, k₃ → k₂`` under the second.

    Returns:
        Optional[Tuple[int, int, int, int]]: ``(k₁, k₂, k₃, k₄)``, or None.
    """
    n = len(first) - 1
    for k1 in range(1, n + 1):
        k2 = first[k1]
        if not k2:
            continue
        for k3 in range(1, n + 1):
            k4 = first[k3]
            if k3 == k1 or not k4:
                continue
            if second[k1] == k4 and second[k3] == k2 and len({k1, k2, k3, k4}) == 4:
                return k1, k2, k3, k4
    return None


def u5_pattern(first: Transformation, second: Transformation) -> bool:
    """Return True if the two maps show the pattern of a type-U5 pair."""
    return find_u5_pattern(first, second) is not None


def check_representation(
    semigroup: Semigroup,
    gammas: Sequence[Transformation],
    psis: Sequence[PsiMap],
    group: Semigroup,
) -> None:
    """Check that Γ and Ψ describe an action on ``M⁰(G; n, n; I)``.

    Args:
        semigroup: The acting semigroup.
        gammas: One transformation per element.
        psis: One Ψ map per element.
        group: The structure group.

    Raises:
        NotInjectiveOffTheta: If some Γ(s) is not injective off θ.
        SupportMismatch: If Ψ(s) is defined exactly where Γ(s) is not.
        GammaNotHomomorphism: If Γ(st) != Γ(s)∘Γ(t).
        CocycleViolation: If Ψ(st)(i) != Ψ(s)(Γ(t)(i))·Ψ(t)(i).
    """
    labels = semigroup.elements
    for s, (gamma, psi) in enumerate(zip(gammas, psis)):
        _check_injective(gamma)
        for i in range(1, len(gamma)):
            if (gamma[i] == 0) != (psi[i] is None):
                raise SupportMismatch(
                    f"Ψ({labels[s]}) and Γ({labels[s]}) disagree at point {i}."
                )

    for s in range(semigroup.order):
        for t in range(semigroup.order):
            st = semigroup.table[s][t]
            if gammas[st] != compose(gammas[s], gammas[t]):
                raise GammaNotHomomorphism(
                    f"Γ({labels[s]}·{labels[t]}) != Γ({labels[s]})∘Γ({labels[t]})."
                )
            for i in range(1, len(gammas[st])):
                moved = gammas[t][i]
                expected = (
                    group.multiply(psis[s][moved], psis[t][i])  # type: ignore
                    if moved and gammas[s][moved]
                    else None
                )
                if psis[st][i] != expected:
                    raise CocycleViolation(
                        f"Ψ({labels[s]}·{labels[t]}) fails at point {i}."
                    )


@dataclass(frozen=True)
class GammaPsi:
    """The action of S on the points and group entries of an inverse ideal."""

    group: Semigroup
    n: int
    gamma: Tuple[Transformation, ...]
    psi: Tuple[PsiMap, ...]

    def cycle_form(self, s: int) -> CycleForm:
        """Return the cycle form of Γ(s)."""
        return cycle_decompose(self.gamma[s])

    def theta_preimage(self) -> Tuple[int, ...]:
        """Return the elements s with Γ(s) constantly θ."""
        theta = constant_theta(self.n)
        return tuple(s for s, gamma in enumerate(self.gamma) if gamma == theta)

    def check_laws(self, semigroup: Semigroup) -> None:
        """Check injectivity, support, the homomorphism and cocycle laws.

        Raises:
            NotInjectiveOffTheta: See `check_representation`.
            SupportMismatch: See `check_representation`.
            GammaNotHomomorphism: See `check_representation`.
            CocycleViolation: See `check_representation`.
        """
        check_representation(semigroup, self.gamma, self.psi, self.group)

    def as_dict(self, semigroup: Semigroup) -> Dict[str, Any]:
        """Serialize Γ in cycle notation and Ψ with group labels."""
        group = self.group.elements
        return {
            label: {
                "gamma": str(self.cycle_form(s)),
                "psi": {
                    str(i): group[g] for i, g in enumerate(self.psi[s]) if g is not None
                },
            }
            for s, label in enumerate(semigroup.elements)
        }


def gamma_psi(semigroup: Semigroup, decomposition: ReesDecomposition) -> GammaPsi:
    """Compute Γ and Ψ for an inverse ideal ``M⁰(G; n, n; I)``.

    For each s and point i, ``s·(1; i, 1) = (Ψ(s)(i); Γ(s)(i), 1)`` or θ.
    When ``n ≥ 2`` the same is computed through column 2 and both must agree.

    Args:
        semigroup: The semigroup S.
        decomposition: Coordinates of the ideal with an identity sandwich.

    Returns:
        GammaPsi: The action.

    Raises:
        NotInverseIdeal: If the sandwich matrix is not the identity.
        IllDefined: If the action depends on the column used.
    """
    spec = decomposition.spec
    if not spec.is_identity_sandwich:
        raise NotInverseIdeal("Γ and Ψ need an identity sandwich matrix.")
    n = spec.rows
    one = spec.group.identity
    assert one is not None
    columns = (1, 2) if n >= 2 else (1,)

    gammas: List[Transformation] = []
    psis: List[PsiMap] = []
    for s in range(semigroup.order):
        gamma = [0] * (n + 1)
        psi: List[Optional[int]] = [None] * (n + 1)
        for i in range(1, n + 1):
            outcomes = set()
            for j in columns:
                y = semigroup.table[s][decomposition.element(one, i, j)]
                if y == decomposition.zero:
                    outcomes.add(None)
                    continue
                g, image, column = decomposition.coords[y]
                if column != j:
                    raise IllDefined(
                        f"{semigroup.elements[s]} moves column {j} to {column}."
                    )
                outcomes.add((image, g))
            if len(outcomes) != 1:
                raise IllDefined(
                    f"The action of {semigroup.elements[s]} on point {i} "
                    "depends on the column."
                )
            outcome = outcomes.pop()
            if outcome is not None:
                gamma[i], psi[i] = outcome
        gammas.append(tuple(gamma))
        psis.append(tuple(psi))
    return GammaPsi(group=spec.group, n=n, gamma=tuple(gammas), psi=tuple(psis))


@dataclass(frozen=True)
class GlueSpec:
    """The data of a glued union ``M ∪ T``.

    ``rees`` must describe ``M⁰(G; n, n; I)``. ``t`` has a zero, which the
    union identifies with θ; ``gamma[t]`` and ``psi[t]`` describe its action.
    """

    rees: ReesSpec
    t: Semigroup
    gamma: Tuple[Transformation, ...]
    psi: Tuple[PsiMap, ...]


def _per_element(value: Any, t: Semigroup, name: str) -> List[Any]:
    """Spread a table given per T element, as a list in T order or keyed by label."""
    if value is None:
        return [None] * t.order
    if isinstance(value, list):
        if len(value) != t.order:
            raise BadShape(f"{name} needs one entry per element of T.")
        return list(value)
    if isinstance(value, Mapping):
        return [value.get(label) for label in t.elements]
    raise BadShape(f"{name} must be a list or an object keyed by T labels.")


def _parse_gamma(value: Any, n: int) -> Transformation:
    if isinstance(value, str):
        return transformation_from_cycles(value, n)
    if not isinstance(value, list) or len(value) != n:
        raise BadShape(f"Each Γ entry must list the images of the points 1..{n}.")
    t = [0]
    for image in value:
        if image in (ZERO_LABEL, THETA, 0):
            t.append(0)
        elif isinstance(image, int) and not isinstance(image, bool) and 1 <= image <= n:
            t.append(image)
        else:
            raise BadShape(f"Γ sends a point to {image!r}, not to 1..{n} or θ.")
    return tuple(t)


def _parse_psi(value: Any, gamma: Transformation, group: Semigroup) -> PsiMap:
    if value is None:
        return identity_psi(gamma, group)
    n = len(gamma) - 1
    if not isinstance(value, list) or len(value) != n:
        raise BadShape(f"Each Ψ entry must list a group element for the points 1..{n}.")
    return (None,) + tuple(_group_entry(group, g) for g in value)


def glue_spec_from_dict(data: Mapping[str, Any]) -> GlueSpec:
    """Build a GlueSpec from its JSON representation.

    ``gamma`` and ``psi`` hold one entry per element of T, either as a list
    in T order or as an object keyed by T labels. A Γ entry lists the images
    of the points ``1..n``, ``"0"`` for θ; cycle notation such as ``"(1,2)"``
    is read too. A Ψ entry lists a group element per point, ``"0"`` where Γ
    sends the point to θ. Missing Ψ entries default to the group identity on
    the support of Γ.

    Args:
        data: The mapping with ``M`` (a ReesSpec), ``T`` (a semigroup),
            ``gamma`` and optionally ``psi``.

    Returns:
        GlueSpec: The spec (not yet checked; see `glued_union`).

    Raises:
        InputFormatError: If a key is missing.
        BadShape: If a Γ or Ψ entry is malformed or missing.
    """
    try:
        rees = rees_spec_from_dict(data["M"])
        t = semigroup_from_dict(data["T"])
        gamma_data = data["gamma"]
    except (KeyError, TypeError) as e:
        raise InputFormatError(f"GlueSpec JSON is missing a field: {e}.")
    gamma_values = _per_element(gamma_data, t, "Γ")
    for label, value in zip(t.elements, gamma_values):
        if value is None:
            raise BadShape(f"Γ is not given for {label!r}.")
    gamma = tuple(_parse_gamma(value, rees.rows) for value in gamma_values)
    psi = tuple(
        _parse_psi(value, gamma[s], rees.group)
        for s, value in enumerate(_per_element(data.get("psi"), t, "Ψ"))
    )
    return GlueSpec(rees=rees, t=t, gamma=gamma, psi=psi)


def glued_union(spec: GlueSpec) -> Semigroup:
    """Build the semigroup ``M ∪ T`` with T acting on M through Γ and Ψ.

    Elements are those of M in `build_rees` order (θ included), then the
    non-zero elements of T. With ``Γ(t)(j′) = j``:

    * ``t·(g; i, j) = (Ψ(t)(i)·g; Γ(t)(i), j)``, θ if ``Γ(t)(i) = θ``;
    * ``(g; i, j)·t = (g·Ψ(t)(j′); i, j′)``, θ if ``j`` has no preimage.

    Args:
        spec: The glue data.

    Returns:
        Semigroup: The union.

    Raises:
        InvalidGlueSpec: If M is not ``M⁰(G; n, n; I)``, T has no zero, the
            zero of T does not act as θ, or more than one element does.
        NotInjectiveOffTheta: See `check_representation`.
        SupportMismatch: See `check_representation`.
        GammaNotHomomorphism: See `check_representation`.
        CocycleViolation: See `check_representation`.
        NonAssociativeResult: If the union fails associativity.
    """
    rees, t = spec.rees, spec.t
    rees.validate()
    if not rees.with_zero or not rees.is_identity_sandwich:
        raise InvalidGlueSpec("M must be a Rees matrix semigroup with identity sandwich.")
    if t.zero is None:
        raise InvalidGlueSpec("T must have a zero.")
    n, group = rees.rows, rees.group
    if len(spec.gamma) != t.order or len(spec.psi) != t.order:
        raise BadShape("Γ and Ψ need one entry per element of T.")
    if any(len(g) != n + 1 for g in spec.gamma) or any(len(p) != n + 1 for p in spec.psi):
        raise BadShape(f"Γ and Ψ must act on the points 1..{n}.")
    theta = constant_theta(n)
    if spec.gamma[t.zero] != theta:
        raise InvalidGlueSpec("The zero of T must act as the constant map θ.")
    if sum(g == theta for g in spec.gamma) > 1:
        raise InvalidGlueSpec("Only the zero of T may act as the constant map θ.")
    check_representation(t, spec.gamma, spec.psi, group)

    m, coords = build_rees(rees)
    element = {c: x for x, c in coords.items()}
    zero = m.zero
    assert zero is not None

    t_elements = [s for s in range(t.order) if s != t.zero]
    labels = list(m.elements) + [t.elements[s] for s in t_elements]
    if len(set(labels)) != len(labels):
        raise BadShape("The labels of T clash with the labels of M.")
    position = {s: m.order + k for k, s in enumerate(t_elements)}
    position[t.zero] = zero

    size = len(labels)
    table = np.full((size, size), zero, dtype=np.intp)
    table[: m.order, : m.order] = m.array
    for s in t_elements:
        for u in t_elements:
            table[position[s], position[u]] = position[t.table[s][u]]

    for s in t_elements:
        gamma, psi = spec.gamma[s], spec.psi[s]
        preimage = {gamma[j]: j for j in range(1, n + 1) if gamma[j]}
        for x, (g, i, j) in coords.items():
            if gamma[i]:
                table[position[s], x] = element[
                    (group.multiply(psi[i], g), gamma[i], j)  # type: ignore
                ]
            if j in preimage:
                k = preimage[j]
                table[x, position[s]] = element[
                    (group.multiply(g, psi[k]), i, k)  # type: ignore
                ]

    triple = find_non_associative_triple(table)
    if triple is not None:
        raise NonAssociativeResult(
            "The glued union is not associative at "
            f"({', '.join(labels[v] for v in triple)}).",
            triple=list(triple),
        )
    return semigroup_from_trusted_table(
        labels, tuple(tuple(int(v) for v in row) for row in table)
    )
