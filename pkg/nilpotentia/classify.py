# -*- coding: utf-8 -*-

"""Classification of minimal non-nilpotent semigroups.

A finite minimal non-nilpotent semigroup is either a Schmidt group or one of
the types U1 to U5. Apart from the two-element ones, the types are read off
the action of S on an inverse ideal ``M⁰(G; n, n; I)`` with G nilpotent.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from nilpotentia.core import (
    Semigroup,
    closure,
    index_and_period,
    is_group,
    semigroup_from_trusted_table,
)
from nilpotentia.exceptions import (
    InvalidGlueSpec,
    NoInverseIdeal,
    NotCompletelyZeroSimple,
    ReconstructionMismatch,
    TypeInvariantViolation,
)
from nilpotentia.groups import (
    SchmidtReport,
    group_nilpotency,
    schmidt_report,
    subgroup_generated,
)
from nilpotentia.nilpotency import NilpotencyResult, decide_nilpotent
from nilpotentia.rees import (
    GammaPsi,
    ReesDecomposition,
    compose,
    cycle_decompose,
    find_u4_pattern,
    find_u5_pattern,
    gamma_psi,
    has_transposition,
    rees_decompose,
)
from nilpotentia.signals import post_classify, pre_classify
from nilpotentia.structure import (
    MinimalityMode,
    MnnVerdict,
    ideals,
    is_minimal_non_nilpotent,
)
from nilpotentia.utils import check_relation

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    """The outcome of `classify`."""

    NILPOTENT = "Nilpotent"
    NOT_MINIMAL = "NotMinimal"
    SCHMIDT = "Schmidt"
    U1 = "U1"
    U2 = "U2"
    U3 = "U3"
    U4 = "U4"
    U5 = "U5"


# Keys of Classification.details holding element indices of S.
_ELEMENT_KEYS = ("u", "x1", "x2", "v1", "v2")

# Relations satisfied by the two generators of a type-U4 semigroup.
U4_RELATIONS = ("x2*x1**2 == x1**2*x2 == x1**3 == x2*x1*x2 == theta",)


@dataclass(frozen=True)
class Classification:
    """The verdict of `classify` with the data that was verified for it.

    ``details`` holds the type-specific data: element indices of S under
    ``u``, ``x1``, ``x2``, ``v1`` and ``v2``, group indices under
    ``group_generators`` and plain values otherwise.
    """

    verdict: Verdict
    nilpotency: NilpotencyResult
    minimality: Optional[MnnVerdict] = None
    schmidt: Optional[SchmidtReport] = None
    decomposition: Optional[ReesDecomposition] = None
    gamma_psi: Optional[GammaPsi] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ideal(self) -> Optional[Tuple[int, ...]]:
        """The inverse ideal M, when the verdict is U3, U4 or U5."""
        return self.decomposition.members if self.decomposition else None

    def as_dict(self, semigroup: Semigroup) -> Dict[str, Any]:
        """Serialize the classification with element labels."""
        labels = semigroup.elements
        data: Dict[str, Any] = {"verdict": self.verdict.value}
        if self.minimality is not None and not self.minimality.minimal:
            data["offenders"] = [
                o.as_dict(semigroup) for o in self.minimality.offenders
            ]
        if self.schmidt is not None:
            data["schmidt"] = self.schmidt.as_dict()
        if self.decomposition is not None:
            data["ideal"] = [labels[x] for x in self.decomposition.members]
            data["n"] = self.decomposition.spec.rows
            data["group"] = list(self.decomposition.spec.group.elements)
        if self.gamma_psi is not None:
            data["gamma_psi"] = self.gamma_psi.as_dict(semigroup)

        group = self.gamma_psi.group.elements if self.gamma_psi else ()
        for key, value in self.details.items():
            if key in _ELEMENT_KEYS:
                data[key] = labels[value]
            elif key == "group_generators":
                data[key] = [group[g] for g in value]
            elif key == "relabeling":
                data[key] = {str(p): q for p, q in value.items()}
            else:
                data[key] = value
        return data


def _invariant(condition: bool, message: str) -> None:
    if not condition:
        raise TypeInvariantViolation(message)


def inverse_ideals(semigroup: Semigroup) -> Iterator[ReesDecomposition]:
    """Yield the ideals ``M⁰(G; n, n; I)`` with ``n ≥ 2`` and G nilpotent.

    Ideals come smallest first, ties broken by their members.
    """
    zero = semigroup.zero
    if zero is None:
        return
    for ideal in ideals(semigroup):
        if zero not in ideal or len(ideal) < 2:
            continue
        try:
            decomposition = rees_decompose(semigroup, ideal)
        except (NotCompletelyZeroSimple, ReconstructionMismatch):
            continue
        spec = decomposition.spec
        if (
            spec.rows >= 2
            and spec.is_identity_sandwich
            and group_nilpotency(spec.group) is not None
        ):
            yield decomposition


def _zero_of(semigroup: Semigroup, members: Tuple[int, ...]) -> Optional[int]:
    """Return the zero of the subsemigroup on the given members, if it has one."""
    if not members:
        return None
    inside = np.array(members, dtype=np.intp)
    block = semigroup.array[np.ix_(inside, inside)]
    for k, z in enumerate(members):
        if (block[k, :] == z).all() and (block[:, k] == z).all():
            return z
    return None


def _covers(semigroup: Semigroup, ideal: Tuple[int, ...], generators: List[int]) -> bool:
    members = set(ideal) | set(closure(semigroup, generators).members)
    return len(members) == semigroup.order


def _generates_group(action: GammaPsi, values: List[Optional[int]]) -> bool:
    gens = [g for g in values if g is not None]
    return len(subgroup_generated(action.group, gens)) == action.group.order


def _type_u3(
    semigroup: Semigroup, decomposition: ReesDecomposition, action: GammaPsi, u: int
) -> Dict[str, Any]:
    group = action.group
    _invariant(action.n == 2, f"A transposition was found but n = {action.n}.")

    index, period = index_and_period(semigroup, u)
    k = period.bit_length() - 1
    _invariant(
        index == 1 and period >= 2 and period == 1 << k,
        f"⟨u⟩ is not a cyclic group of order 2^k (index {index}, period {period}).",
    )
    one = semigroup.identity
    _invariant(
        one is not None and semigroup.power(u, period) == one,
        "The identity of ⟨u⟩ is not the identity of S.",
    )
    _invariant(
        action.gamma[u] == (0, 2, 1) and action.gamma[one] == (0, 1, 2),  # type: ignore
        "Γ(u) is not (1,2) or Γ(1) is not (1)(2).",
    )

    psi_1, psi_2 = action.psi[u][1], action.psi[u][2]
    _invariant(
        _generates_group(action, [psi_1, psi_2]),
        "Ψ(u)(1) and Ψ(u)(2) do not generate G.",
    )
    _invariant(
        group.power(group.multiply(psi_1, psi_2), 1 << (k - 1)) == group.identity,  # type: ignore
        "(Ψ(u)(1)·Ψ(u)(2))^(2^(k-1)) is not the identity of G.",
    )
    _invariant(
        _covers(semigroup, decomposition.members, [u]), "S is not M ∪ ⟨u⟩."
    )
    return {
        "u": u,
        "k": k,
        "group_generators": [psi_1, psi_2],
        "relabeling": {1: 1, 2: 2},
    }


def _type_u4(
    semigroup: Semigroup,
    decomposition: ReesDecomposition,
    action: GammaPsi,
    x1: int,
    x2: int,
    points: Tuple[int, int, int],
) -> Dict[str, Any]:
    _invariant(action.n == 3, f"The U4 pattern was found but n = {action.n}.")
    names = {"x1": x1, "x2": x2}
    for relation in U4_RELATIONS:
        _invariant(
            check_relation(semigroup, relation, names),
            f"The relation {relation} fails.",
        )

    o1, o2, _ = points
    values = [
        action.psi[x1][o2],
        action.psi[x1][o1],
        action.psi[x2][o2],
        action.psi[x2][o1],
    ]
    _invariant(
        _generates_group(action, values), "The Ψ values of x1 and x2 do not generate G."
    )
    _invariant(
        _covers(semigroup, decomposition.members, [x1, x2]), "S is not M ∪ ⟨x1, x2⟩."
    )
    return {
        "x1": x1,
        "x2": x2,
        "group_generators": values,
        "relations_checked": list(U4_RELATIONS),
        "relabeling": {1: points[0], 2: points[1], 3: points[2]},
    }


def _type_u5(
    semigroup: Semigroup,
    decomposition: ReesDecomposition,
    action: GammaPsi,
    outside: Tuple[int, ...],
) -> Dict[str, Any]:
    forms = [action.cycle_form(s) for s in outside]
    _invariant(
        not any(has_transposition(form) for form in forms),
        "An element of ⟨S\\M⟩ acts with a transposition.",
    )
    _invariant(
        all(find_u4_pattern(a, b) is None for a in forms for b in forms),
        "Two elements of ⟨S\\M⟩ show the U4 pattern.",
    )

    candidates = []
    for v1 in outside:
        for v2 in outside:
            points = find_u5_pattern(action.gamma[v1], action.gamma[v2])
            if points is not None:
                candidates.append((v1, v2, points))
    _invariant(bool(candidates), "No pair of elements shows the U5 pattern.")

    # Prefer a pair that generates S together with M.
    covering = [
        c for c in candidates if _covers(semigroup, decomposition.members, [c[0], c[1]])
    ]
    v1, v2, (k1, k2, k3, k4) = (covering or candidates)[0]
    values = [
        action.psi[v1][k1],
        action.psi[v1][k3],
        action.psi[v2][k1],
        action.psi[v2][k3],
    ]
    return {
        "v1": v1,
        "v2": v2,
        "k": [k1, k2, k3, k4],
        "generates_s": bool(covering),
        "group_generators": values,
        "psi_generates_group": _generates_group(action, values),
        "relabeling": {1: k1, 2: k2, 3: k3, 4: k4},
    }


def _classify_over(
    semigroup: Semigroup, decomposition: ReesDecomposition
) -> Tuple[Verdict, GammaPsi, Dict[str, Any]]:
    action = gamma_psi(semigroup, decomposition)
    try:
        action.check_laws(semigroup)
    except InvalidGlueSpec as e:
        raise TypeInvariantViolation(f"Γ and Ψ break a law: {e.message}") from e

    theta_preimage = action.theta_preimage()
    _invariant(
        theta_preimage == (decomposition.zero,),
        f"|Γ⁻¹(θ)| = {len(theta_preimage)}; expected 1.",
    )

    inside = set(decomposition.members)
    rest = [s for s in range(semigroup.order) if s not in inside]
    outside = closure(semigroup, rest).members if rest else ()
    t_zero = _zero_of(semigroup, outside)
    if t_zero is not None:
        _invariant(
            t_zero == decomposition.zero,
            f"⟨S\\M⟩ has the zero {semigroup.elements[t_zero]}, which is not θ.",
        )

    forms = {s: cycle_decompose(action.gamma[s]) for s in outside}

    for u in outside:
        if has_transposition(forms[u]):
            return Verdict.U3, action, _type_u3(semigroup, decomposition, action, u)

    for x1 in outside:
        for x2 in outside:
            points = find_u4_pattern(forms[x1], forms[x2])
            if points is not None:
                return (
                    Verdict.U4,
                    action,
                    _type_u4(semigroup, decomposition, action, x1, x2, points),
                )

    return Verdict.U5, action, _type_u5(semigroup, decomposition, action, outside)


def classify(
    semigroup: Semigroup,
    mode: MinimalityMode = MinimalityMode.FOUR_GENERATOR,
    all_ideals: bool = False,
) -> Classification:
    """Classify a semigroup as nilpotent, not minimal, Schmidt, or U1 to U5.

    Args:
        semigroup: The semigroup.
        mode: The minimality mode (see `is_minimal_non_nilpotent`).
        all_ideals: Classify over every qualifying inverse ideal and check
            that the verdicts agree.

    Returns:
        Classification: The verdict and its verified data.

    Raises:
        NoInverseIdeal: If a minimal non-nilpotent semigroup of order at
            least three that is not a group has no qualifying ideal.
        TypeInvariantViolation: If a type was matched but one of its
            invariants does not hold.
    """
    pre_classify.send(sender=classify, semigroup=semigroup)

    nilpotency = decide_nilpotent(semigroup)
    if nilpotency.nilpotent:
        result = Classification(verdict=Verdict.NILPOTENT, nilpotency=nilpotency)
        post_classify.send(sender=classify, semigroup=semigroup, classification=result)
        return result

    minimality = is_minimal_non_nilpotent(semigroup, mode=mode)
    if not minimality.minimal:
        logger.warning("Classifying a semigroup that is not minimal non-nilpotent.")
        result = Classification(
            verdict=Verdict.NOT_MINIMAL, nilpotency=nilpotency, minimality=minimality
        )
    elif is_group(semigroup):
        result = Classification(
            verdict=Verdict.SCHMIDT,
            nilpotency=nilpotency,
            minimality=minimality,
            schmidt=schmidt_report(semigroup),
        )
    elif semigroup.order == 2:
        right_zero = all(
            semigroup.table[x][y] == y for x in range(2) for y in range(2)
        )
        left_zero = all(semigroup.table[x][y] == x for x in range(2) for y in range(2))
        _invariant(right_zero or left_zero, "A two-element type is neither U1 nor U2.")
        result = Classification(
            verdict=Verdict.U1 if right_zero else Verdict.U2,
            nilpotency=nilpotency,
            minimality=minimality,
        )
    else:
        decompositions = list(inverse_ideals(semigroup))
        if not decompositions:
            raise NoInverseIdeal(
                "No ideal of the form M⁰(G; n, n; I) with n ≥ 2 and G nilpotent."
            )
        decomposition = decompositions[0]
        verdict, action, details = _classify_over(semigroup, decomposition)
        if all_ideals:
            for other in decompositions[1:]:
                other_verdict, _, _ = _classify_over(semigroup, other)
                _invariant(
                    other_verdict == verdict,
                    f"The ideals give different types ({verdict.value} and "
                    f"{other_verdict.value}).",
                )
        result = Classification(
            verdict=verdict,
            nilpotency=nilpotency,
            minimality=minimality,
            decomposition=decomposition,
            gamma_psi=action,
            details=details,
        )

    logger.info(f"Classified a semigroup of order {semigroup.order} as {result.verdict.value}.")
    post_classify.send(sender=classify, semigroup=semigroup, classification=result)
    return result


def minimal_image(
    semigroup: Semigroup, decomposition: ReesDecomposition
) -> Tuple[Semigroup, Tuple[int, ...]]:
    """Return Γ(S) as a semigroup of transformations.

    Transformations are listed in order of their first preimage and labelled
    in cycle notation.

    Args:
        semigroup: The semigroup S.
        decomposition: An inverse ideal of S.

    Returns:
        Tuple[Semigroup, Tuple[int, ...]]: The image and the surjection
            ``s ↦ index of Γ(s)``.

    Raises:
        NotInverseIdeal: See `gamma_psi`.
        IllDefined: See `gamma_psi`.
    """
    action = gamma_psi(semigroup, decomposition)
    distinct: Dict[Tuple[int, ...], int] = {}
    for gamma in action.gamma:
        distinct.setdefault(gamma, len(distinct))
    transformations = list(distinct)
    table = tuple(
        tuple(distinct[compose(s, t)] for t in transformations) for s in transformations
    )
    labels = [str(cycle_decompose(t)) for t in transformations]
    homomorphism = tuple(distinct[gamma] for gamma in action.gamma)
    return semigroup_from_trusted_table(labels, table), homomorphism
