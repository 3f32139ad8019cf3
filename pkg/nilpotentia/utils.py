# -*- coding: utf-8 -*-

"""Common utilities."""

import ast
import json
import operator
from typing import TYPE_CHECKING, Any, Mapping, Optional, Union

import jmespath
from simpleeval import DEFAULT_FUNCTIONS, DEFAULT_OPERATORS, EvalWithCompoundTypes

if TYPE_CHECKING:  # pragma: no cover
    from nilpotentia.core import Semigroup


def stable_json(data: Union[dict, list, None]) -> str:
    """Generate a stable string representation of the given dict or list.

    Args:
        data: The dict or list for which to produce a stable JSON
            representation.

    Returns:
        str: A stable JSON string representation of the given data.
    """
    return json.dumps(
        data, sort_keys=True, ensure_ascii=True, separators=(",", ":"), default=str
    )


def jp(expr: str, data: Any, default: Any = None) -> Any:
    """A shorthand helper for querying dicts with jmespath.

    Args:
        expr: The JMESPath expression.
        data: The data to query.
        default: The default value to return if the query returns None.

    Returns:
        Any: The result of the query, or the value of default.
    """
    result = jmespath.search(expression=expr, data=data)
    return default if result is None else result


class Word:
    """An element of a semigroup that multiplies through its Cayley table.

    Used as the value of names in relation expressions, so that ``w*v**2``
    evaluates to the product of ``w`` and ``v·v``.
    """

    __slots__ = ("semigroup", "index")

    def __init__(self, semigroup: "Semigroup", index: int) -> None:
        self.semigroup = semigroup
        self.index = index

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word) or other.semigroup is not self.semigroup:
            return NotImplemented
        return Word(self.semigroup, self.semigroup.multiply(self.index, other.index))

    def __pow__(self, exponent: int) -> "Word":
        if not isinstance(exponent, int) or exponent < 1:
            raise ValueError(f"Exponents must be positive integers (got {exponent!r}).")
        return Word(self.semigroup, self.semigroup.power(self.index, exponent))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.semigroup is other.semigroup and self.index == other.index

    def __ne__(self, other: object) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        return hash((id(self.semigroup), self.index))

    def __repr__(self) -> str:
        return f"Word({self.semigroup.elements[self.index]!r})"


class RelationEvaluator(EvalWithCompoundTypes):
    """An evaluator subclass for evaluating semigroup relations."""

    OPERATORS = {
        **DEFAULT_OPERATORS.copy(),
        ast.Mult: operator.mul,
        ast.Pow: operator.pow,
    }

    FUNCTIONS = {
        **DEFAULT_FUNCTIONS.copy(),
    }

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        kwargs = {
            **kwargs,
            "operators": self.OPERATORS,
            "functions": self.FUNCTIONS,
        }
        super().__init__(*args, **kwargs)


def check_relation(
    semigroup: "Semigroup",
    relation: str,
    names: Optional[Mapping[str, int]] = None,
) -> bool:
    """Evaluate a relation such as ``"v**2 == v**3"`` in a semigroup.

    Names map to element indices. When the semigroup has a zero it is also
    available as ``theta``.

    Args:
        semigroup: The semigroup in which to multiply.
        relation: The relation expression.
        names: A mapping of names to element indices.

    Returns:
        bool: True if the relation holds.
    """
    bound = {name: Word(semigroup, index) for name, index in (names or {}).items()}
    if semigroup.zero is not None:
        bound.setdefault("theta", Word(semigroup, semigroup.zero))

    return bool(RelationEvaluator(names=bound).eval(relation))
