# -*- coding: utf-8 -*-

"""Tests for Rees matrix semigroups, cycle notation and glued unions."""

import copy
from typing import Any, Dict, List, Tuple

import pytest

from nilpotentia.catalog import entry
from nilpotentia.core import Semigroup, validate_semigroup
from nilpotentia.exceptions import (
    BadShape,
    GammaNotHomomorphism,
    InputFormatError,
    InvalidGlueSpec,
    NotAGroup,
    NotAnIdeal,
    NotCompletelyZeroSimple,
    NotInjectiveOffTheta,
    NotInverseIdeal,
    NotRegular,
    SupportMismatch,
)
from nilpotentia.groups import cyclic_group, symmetric_group
from nilpotentia.nilpotency import decide_nilpotent
from nilpotentia.rees import (
    Cycle,
    ReesSpec,
    build_rees,
    compose,
    cycle_decompose,
    find_u4_pattern,
    find_u5_pattern,
    gamma_psi,
    glue_spec_from_dict,
    glued_union,
    has_transposition,
    rees_decompose,
    rees_nilpotency_criterion,
    rees_spec_from_dict,
    transformation_from_cycles,
    u4_pattern,
    u5_pattern,
)
from tests.factories import NullSemigroupFactory, ReesSpecFactory

F7_SPEC: Dict[str, Any] = {
    "M": {
        "group": {"elements": ["e"], "table": [[0]]},
        "rows": 2,
        "cols": 2,
        "sandwich": [["e", "0"], ["0", "e"]],
        "with_zero": True,
    },
    "T": {"elements": ["1", "u", "0"], "table": [[0, 1, 2], [1, 0, 2], [2, 2, 2]]},
    "gamma": {"1": [1, 2], "u": [2, 1], "0": ["0", "0"]},
    "psi": {"1": ["e", "e"], "u": ["e", "e"], "0": ["0", "0"]},
}


def _all_ones(n: int) -> ReesSpec:
    return ReesSpec(
        group=cyclic_group(1),
        rows=n,
        cols=n,
        sandwich=tuple(tuple(0 for _ in range(n)) for _ in range(n)),
    )


def test_build_rees() -> None:
    """Ensure that elements are listed by row, column and group element."""
    spec = ReesSpecFactory()
    semigroup, coords = build_rees(spec)
    assert semigroup.order == 9
    assert semigroup.elements[:3] == ("(1;1,1)", "(g;1,1)", "(1;1,2)")
    assert semigroup.elements[-1] == "0"
    assert semigroup.zero == 8
    assert coords[1] == (1, 1, 1)

    # (1;1,2)(1;2,1) = (1;1,1) and (1;1,1)(1;2,1) = θ.
    assert semigroup.multiply(2, 4) == 0
    assert semigroup.multiply(0, 4) == 8


def test_rees_nilpotency_criterion() -> None:
    """Ensure that the criterion agrees with the pair-graph decision."""
    specs = [
        ReesSpecFactory(),
        ReesSpecFactory(group=cyclic_group(1), n=3),
        _all_ones(2),
        ReesSpec(
            group=cyclic_group(1),
            rows=1,
            cols=2,
            sandwich=((0,), (0,)),
            with_zero=False,
        ),
    ]
    expected = [True, True, False, False]
    for spec, nilpotent in zip(specs, expected):
        semigroup, _ = build_rees(spec)
        assert rees_nilpotency_criterion(spec) == nilpotent
        assert decide_nilpotent(semigroup).nilpotent == nilpotent


def _spec(
    group: Semigroup,
    n: int,
    m: int,
    entries: Dict[Tuple[int, int], int],
    with_zero: bool = True,
) -> ReesSpec:
    sandwich = tuple(tuple(entries.get((j, k)) for k in range(n)) for j in range(m))
    return ReesSpec(group=group, rows=n, cols=m, sandwich=sandwich, with_zero=with_zero)


def _sandwiches(group: Semigroup) -> List[Tuple[ReesSpec, bool]]:
    """Rees matrix data over a group, each flagged when P is monomial and square."""
    one = group.identity
    g = group.order - 1
    full = {(j, k): one for j in range(2) for k in range(2)}
    return [
        (ReesSpec.identity(group, 1), True),
        (ReesSpec.identity(group, 2), True),
        (ReesSpec.identity(group, 3), True),
        # Scaled identities.
        (_spec(group, 2, 2, {(0, 0): g, (1, 1): one}), True),
        (_spec(group, 3, 3, {(0, 0): g, (1, 1): g, (2, 2): g}), True),
        # Permuted identities.
        (_spec(group, 2, 2, {(0, 1): one, (1, 0): g}), True),
        (_spec(group, 3, 3, {(0, 1): one, (1, 2): g, (2, 0): one}), True),
        # A row or a column with two non-θ entries.
        (_spec(group, 2, 2, {(0, 0): one, (0, 1): g, (1, 1): one}), False),
        (
            _spec(group, 3, 3, {(0, 0): one, (1, 0): g, (1, 1): one, (2, 2): one}),
            False,
        ),
        (_spec(group, 2, 2, full), False),
        (_spec(group, 2, 2, full, with_zero=False), False),
        # n ≠ m.
        (_spec(group, 1, 2, {(0, 0): one, (1, 0): g}), False),
        (_spec(group, 2, 3, {(0, 0): one, (1, 1): one, (2, 0): g}), False),
        (_spec(group, 3, 2, {(0, 0): one, (0, 2): g, (1, 1): one}), False),
    ]


@pytest.mark.parametrize(
    "group,nilpotent_group",
    [
        pytest.param(cyclic_group(1), True, id="trivial"),
        pytest.param(cyclic_group(2), True, id="c2"),
        pytest.param(cyclic_group(3), True, id="c3"),
        pytest.param(symmetric_group(3), False, id="s3"),
    ],
)
def test_rees_nilpotency_criterion_sandwiches(
    group: Semigroup, nilpotent_group: bool
) -> None:
    """Ensure that the criterion matches the pair-graph decision on every sandwich shape.

    Only square monomial sandwiches over a nilpotent group give a nilpotent
    semigroup.
    """
    for spec, monomial in _sandwiches(group):
        semigroup, _ = build_rees(spec)
        expected = monomial and nilpotent_group
        assert rees_nilpotency_criterion(spec) == expected, spec.as_dict()
        assert decide_nilpotent(semigroup).nilpotent == expected, spec.as_dict()


def test_rees_spec_validation() -> None:
    """Ensure that malformed Rees matrix data is rejected."""
    trivial = cyclic_group(1)

    with pytest.raises(NotRegular):
        ReesSpec(trivial, 2, 2, ((0, None), (None, None))).validate()

    with pytest.raises(BadShape):
        ReesSpec(trivial, 2, 2, ((0, None), (None, 0)), with_zero=False).validate()

    with pytest.raises(BadShape):
        ReesSpec(trivial, 2, 2, ((0,),)).validate()

    with pytest.raises(BadShape):
        ReesSpec(trivial, 1, 1, ((3,),)).validate()

    right_zero = validate_semigroup(["e", "f"], [[0, 1], [0, 1]])
    with pytest.raises(NotAGroup):
        ReesSpec(right_zero, 1, 1, ((0,),)).validate()


def test_rees_spec_from_dict() -> None:
    """Ensure that ReesSpec JSON is read and written with "0" for θ."""
    spec = rees_spec_from_dict(
        {
            "group": {"elements": ["1", "g"], "table": [[0, 1], [1, 0]]},
            "rows": 2,
            "cols": 2,
            "sandwich": [["1", "0"], ["0", "1"]],
            "with_zero": True,
        }
    )
    assert spec.is_identity_sandwich
    assert spec == ReesSpecFactory()
    assert rees_spec_from_dict(spec.as_dict()) == spec
    assert spec.as_dict() == {
        "group": {"elements": ["1", "g"], "table": [[0, 1], [1, 0]]},
        "rows": 2,
        "cols": 2,
        "sandwich": [["1", "0"], ["0", "1"]],
        "with_zero": True,
    }

    trivial = rees_spec_from_dict(
        {
            "group": {"elements": ["1"], "table": [[0]]},
            "rows": 2,
            "cols": 2,
            "sandwich": [["1", "0"], ["0", "1"]],
            "with_zero": True,
        }
    )
    assert build_rees(trivial)[0].order == 5

    with pytest.raises(InputFormatError):
        rees_spec_from_dict({"group": {"table": [[0]]}, "rows": 1, "cols": 1})

    # The keys are rows, cols and sandwich.
    with pytest.raises(InputFormatError):
        rees_spec_from_dict(
            {"group": {"table": [[0]]}, "n": 1, "m": 1, "P": [["1"]]}
        )

    with pytest.raises(BadShape):
        rees_spec_from_dict(
            {"group": {"table": [[0]]}, "rows": 1, "cols": 1, "sandwich": "1"}
        )


def test_rees_decompose() -> None:
    """Ensure that an inverse ideal is recovered with an identity sandwich."""
    semigroup, _ = build_rees(ReesSpecFactory())
    decomposition = rees_decompose(semigroup, range(semigroup.order))
    assert decomposition.spec.rows == 2
    assert decomposition.spec.cols == 2
    assert decomposition.spec.is_identity_sandwich
    assert decomposition.spec.group.order == 2
    assert decomposition.zero == 8
    assert decomposition.coords[0] == (0, 1, 1)
    assert decomposition.element(0, 1, 1) == 0

    data = decomposition.as_dict(semigroup)
    assert data["coords"]["(1;1,1)"] == ["(1;1,1)", 1, 1]


def test_rees_decompose_non_inverse() -> None:
    """Ensure that ideals with other sandwich matrices decompose but have no action."""
    semigroup, _ = build_rees(_all_ones(2))
    decomposition = rees_decompose(semigroup, range(semigroup.order))
    assert not decomposition.spec.is_identity_sandwich
    assert decomposition.spec.sandwich == ((0, 0), (0, 0))

    with pytest.raises(NotInverseIdeal):
        gamma_psi(semigroup, decomposition)


def test_rees_decompose_errors() -> None:
    """Ensure that subsets that are not completely 0-simple ideals are rejected."""
    null = NullSemigroupFactory(order=2)
    with pytest.raises(NotCompletelyZeroSimple):
        rees_decompose(null, [0, 1])

    with pytest.raises(NotCompletelyZeroSimple):
        rees_decompose(cyclic_group(2), [0, 1])

    with pytest.raises(NotAnIdeal):
        rees_decompose(cyclic_group(3), [0])


def test_cycle_notation() -> None:
    """Ensure that cycle notation is parsed and rendered."""
    t = transformation_from_cycles("(2,1,3,θ)(4)", 4)
    assert t == (0, 3, 1, 0, 4)

    form = cycle_decompose(t)
    assert str(form) == "(2,1,3,θ)(4)"
    assert form.tailed == (Cycle((2, 1, 3), tailed=True),)
    assert form.closed == (Cycle((4,), tailed=False),)

    assert transformation_from_cycles("(2,1,3,0)(4)", 4) == t
    assert transformation_from_cycles("θ", 3) == (0, 0, 0, 0)
    assert str(cycle_decompose((0, 0, 0, 0))) == "θ"

    # Points sent straight to θ are left out.
    assert str(cycle_decompose((0, 2, 1, 0))) == "(1,2)"


@pytest.mark.parametrize("text", ["(1,1)", "(5)", "abc", "(1,x)", "()"])
def test_cycle_notation_errors(text: str) -> None:
    """Ensure that malformed cycle notation raises BadShape."""
    with pytest.raises(BadShape):
        transformation_from_cycles(text, 3)


def test_transformations() -> None:
    """Ensure that partial injections compose and are checked for injectivity."""
    assert compose((0, 2, 1), (0, 2, 0)) == (0, 1, 0)

    with pytest.raises(NotInjectiveOffTheta):
        cycle_decompose((0, 1, 1))


def test_patterns() -> None:
    """Ensure that the transposition, U4 and U5 patterns are recognized."""
    assert has_transposition(cycle_decompose((0, 2, 1)))
    assert not has_transposition(cycle_decompose((0, 2, 3, 1)))

    first = cycle_decompose(transformation_from_cycles("(2,1,3,θ)", 3))
    second = cycle_decompose(transformation_from_cycles("(2,3,θ)(1)", 3))
    assert find_u4_pattern(first, second) == (1, 2, 3)
    assert u4_pattern(first, second)
    assert not u4_pattern(second, first)

    w = transformation_from_cycles("(4,1,θ)(3,2,θ)", 4)
    v = transformation_from_cycles("(4,2,θ)(3,1,θ)", 4)
    assert find_u5_pattern(w, v) == (3, 2, 4, 1)
    assert u5_pattern(w, v)
    assert not u5_pattern(w, w)


def test_glued_union() -> None:
    """Ensure that the glued union of F7 data gives the catalog semigroup."""
    f7 = glued_union(glue_spec_from_dict(F7_SPEC))
    assert f7 == entry("f7").semigroup
    assert f7.elements == (
        "(e;1,1)",
        "(e;1,2)",
        "(e;2,1)",
        "(e;2,2)",
        "0",
        "1",
        "u",
    )
    assert f7.identity == 5
    assert f7.zero == 4

    # u(e;1,2) = (e;2,2), (e;1,2)u = (e;1,1).
    assert f7.multiply(6, 1) == 3
    assert f7.multiply(1, 6) == 0


def test_gamma_psi() -> None:
    """Ensure that the action on the inverse ideal of F7 is recovered."""
    f7 = entry("f7").semigroup
    decomposition = rees_decompose(f7, range(5))
    action = gamma_psi(f7, decomposition)
    action.check_laws(f7)

    u = f7.index("u")
    assert action.gamma[u] == (0, 2, 1)
    assert action.gamma[f7.identity] == (0, 1, 2)
    assert action.theta_preimage() == (f7.zero,)
    assert str(action.cycle_form(u)) == "(1,2)"
    assert action.as_dict(f7)["u"]["gamma"] == "(1,2)"


def test_glue_spec_formats() -> None:
    """Ensure that Γ and Ψ tables are read as lists, by label, or in cycle notation."""
    expected = entry("f7").semigroup

    spec = copy.deepcopy(F7_SPEC)
    spec["gamma"] = [[1, 2], [2, 1], ["0", "0"]]
    spec["psi"] = [["e", "e"], ["e", "e"], ["0", "0"]]
    assert glued_union(glue_spec_from_dict(spec)) == expected

    spec = copy.deepcopy(F7_SPEC)
    spec["gamma"] = {"1": "(1)(2)", "u": "(1,2)", "0": "θ"}
    del spec["psi"]
    glue = glue_spec_from_dict(spec)
    assert glue.gamma == ((0, 1, 2), (0, 2, 1), (0, 0, 0))
    assert glue.psi == ((None, 0, 0), (None, 0, 0), (None, None, None))
    assert glued_union(glue) == expected


@pytest.mark.parametrize(
    "gamma, psi",
    [
        ([[1, 2], [2, 1]], None),
        ({"1": [1, 2], "u": [2, 1], "0": ["0"]}, None),
        ({"1": [1, 2], "u": [2, 3], "0": ["0", "0"]}, None),
        ({"1": [1, 2], "u": [2, True], "0": ["0", "0"]}, None),
        ({"1": [1, 2], "u": [2, 1], "0": ["0", "0"]}, {"u": ["e"]}),
        ({"1": [1, 2], "u": [2, 1], "0": ["0", "0"]}, "e"),
    ],
)
def test_glue_spec_shape_errors(gamma: Any, psi: Any) -> None:
    """Ensure that malformed Γ and Ψ tables raise BadShape."""
    spec = copy.deepcopy(F7_SPEC)
    spec["gamma"] = gamma
    spec["psi"] = psi
    with pytest.raises(BadShape):
        glue_spec_from_dict(spec)


def test_glue_spec_errors() -> None:
    """Ensure that inconsistent glue data is rejected."""
    spec = copy.deepcopy(F7_SPEC)
    spec["gamma"]["u"] = "(1,2,θ)"
    spec["psi"]["u"] = ["e", "0"]
    with pytest.raises(GammaNotHomomorphism):
        glued_union(glue_spec_from_dict(spec))

    spec = copy.deepcopy(F7_SPEC)
    spec["psi"]["u"] = ["e", "0"]
    with pytest.raises(SupportMismatch):
        glued_union(glue_spec_from_dict(spec))

    spec = copy.deepcopy(F7_SPEC)
    del spec["gamma"]["u"]
    with pytest.raises(BadShape):
        glue_spec_from_dict(spec)

    spec = copy.deepcopy(F7_SPEC)
    spec["gamma"]["0"] = [1, 2]
    spec["psi"]["0"] = ["e", "e"]
    with pytest.raises(InvalidGlueSpec):
        glued_union(glue_spec_from_dict(spec))

    spec = copy.deepcopy(F7_SPEC)
    spec["T"] = {"elements": ["1", "u"], "table": [[0, 1], [1, 0]]}
    with pytest.raises(InvalidGlueSpec):
        glued_union(glue_spec_from_dict(spec))

    with pytest.raises(InputFormatError):
        glue_spec_from_dict({"M": F7_SPEC["M"]})
