# -*- coding: utf-8 -*-

"""Named semigroups with their expected facts."""

import logging
import re
from dataclasses import asdict, dataclass
from typing import (
    Any,
    ClassVar,
    Dict,
    FrozenSet,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Type,
    cast,
)

from django.utils.functional import cached_property

from nilpotentia.core import Semigroup, semigroup_from_trusted_table, validate_semigroup
from nilpotentia.exceptions import BadParameter
from nilpotentia.groups import (
    abelian_group,
    alternating_group,
    cyclic_group,
    dihedral_group,
    quaternion_group,
    symmetric_group,
)
from nilpotentia.rees import (
    GlueSpec,
    PsiMap,
    ReesSpec,
    Transformation,
    compose,
    glued_union,
    identity_psi,
    transformation_from_cycles,
)
from nilpotentia.utils import check_relation

logger = logging.getLogger(__name__)


##
# CATALOG
#
# A dict mapping of catalog entry names to their classes.
#
# Built dynamically to include all non-abstract descendants of `CatalogEntry`.
#
CATALOG: Dict[str, Type["CatalogEntry"]] = {}


@dataclass(frozen=True)
class ExpectedFacts:
    """What the analysis pipeline should report for an entry.

    ``minimal`` is None when it is left to be determined by computation.
    """

    order: int
    nilpotent: bool
    minimal: Optional[bool]
    verdict: str

    def as_dict(self) -> Dict[str, Any]:
        """Return the JSON representation."""
        return asdict(self)


class CatalogEntryOptions:
    """A base class for the Meta inner class for CatalogEntry."""

    abstract = False

    # Entries taking a parameter `n`, reachable as e.g. "y6" or "y(6)".
    parametric = False


class CatalogEntryMetaclass(type):
    """A metaclass for handling CatalogEntry configuration and registration."""

    name: str
    _meta: CatalogEntryOptions

    def __new__(
        cls: Type["CatalogEntryMetaclass"],
        name: str,
        bases: Tuple[type, ...],
        attrs: Dict[str, Any],
        **kwargs: Any,
    ) -> "CatalogEntryMetaclass":
        """Create a new CatalogEntry and register it.

        Args:
            cls: This metaclass.
            name: The name of the new CatalogEntry class.
            bases: The base classes of the new CatalogEntry class.
            attrs: The attributes of the new CatalogEntry class.
            kwargs: Passed to super.

        Returns:
            Type[CatalogEntry]: The new CatalogEntry class, configured and registered.

        Raises:
            ValueError: If an entry with the same name was already registered.
        """
        attrs_meta = attrs.pop("Meta", None)
        attrs["_meta"] = type(
            "Meta", tuple(filter(bool, (attrs_meta, CatalogEntryOptions))), {}
        )

        # Default the entry name to the lowercased class name.
        attrs["name"] = attrs.get("name", name.lower())

        clsobj = super().__new__(cls, name, bases, attrs, **kwargs)

        if not clsobj._meta.abstract:
            if clsobj.name in CATALOG:
                raise ValueError(
                    f"A catalog entry named {clsobj.name} was already registered "
                    f"({CATALOG[clsobj.name]})."
                )
            CATALOG[clsobj.name] = cast(Type[CatalogEntry], clsobj)

        return clsobj


class CatalogEntry(metaclass=CatalogEntryMetaclass):
    """A named semigroup bundled with its expected facts."""

    name: str

    class Meta:
        abstract = True

    ##
    # description
    #
    # A one-line human-friendly description.
    #
    description: ClassVar[str] = ""

    ##
    # provenance
    #
    # Where the semigroup comes from.
    #
    provenance: ClassVar[str] = ""

    ##
    # names
    #
    # Relation variables mapped to element labels.
    #
    names: ClassVar[Mapping[str, str]] = {}

    ##
    # expected_offender
    #
    # For entries that are not minimal, the labels of a proper non-nilpotent
    # subsemigroup that the minimality check must report.
    #
    expected_offender: ClassVar[Optional[FrozenSet[str]]] = None

    def __init__(self, **params: Any) -> None:
        self.params = params

    @property
    def label(self) -> str:
        """The entry name with its parameters, e.g. ``y(6)``."""
        if "n" in self.params:
            return f"{self.name}({self.params['n']})"
        return self.name

    @property
    def relations(self) -> Sequence[str]:
        """Relations that hold among the named elements."""
        return ()

    @property
    def expected(self) -> ExpectedFacts:
        """The facts the pipeline should reproduce."""
        raise NotImplementedError

    def build(self) -> Semigroup:
        """Build the semigroup."""
        raise NotImplementedError

    @cached_property
    def semigroup(self) -> Semigroup:
        """The semigroup, built once."""
        semigroup = self.build()
        logger.debug(f"Built catalog entry {self.label} with {semigroup.order} elements.")
        return semigroup

    def check_relations(self) -> Dict[str, bool]:
        """Evaluate every relation in the built semigroup.

        Returns:
            Dict[str, bool]: Each relation mapped to whether it holds.
        """
        semigroup = self.semigroup
        names = {name: semigroup.index(label) for name, label in self.names.items()}
        return {r: check_relation(semigroup, r, names) for r in self.relations}

    def as_dict(self) -> Dict[str, Any]:
        """Return the semigroup JSON with the expected-facts block."""
        return {
            **self.semigroup.as_dict(),
            "name": self.label,
            "description": self.description,
            "provenance": self.provenance,
            "expected": self.expected.as_dict(),
            "expected_offender": (
                sorted(self.expected_offender) if self.expected_offender else None
            ),
        }


def trivial_group() -> Semigroup:
    """Return the trivial group with its element labelled ``e``."""
    return semigroup_from_trusted_table(["e"], ((0,),))


class GluedEntry(CatalogEntry):
    """An entry built as ``M⁰(G; n, n; I) ∪ T`` by `glued_union`.

    T is given by its labels and table, its zero labelled ``"0"``; Γ in
    cycle notation and Ψ as ``{point: group label}`` (the group identity
    wherever Ψ is not given).
    """

    class Meta:
        abstract = True

    n: ClassVar[int] = 2
    t_labels: ClassVar[Sequence[str]] = ()
    t_table: ClassVar[Sequence[Sequence[int]]] = ()
    gamma: ClassVar[Mapping[str, str]] = {}
    psi: ClassVar[Mapping[str, Mapping[int, str]]] = {}

    def group(self) -> Semigroup:
        """The structure group of M."""
        return trivial_group()

    def points(self) -> int:
        """The number of rows (and columns) of M."""
        return self.n

    def t_semigroup(self) -> Semigroup:
        """The semigroup T, validated."""
        return validate_semigroup(list(self.t_labels), [list(r) for r in self.t_table])

    def transformations(self, t: Semigroup) -> List[Transformation]:
        """Γ of each element of T."""
        return [
            transformation_from_cycles(self.gamma[label], self.points())
            for label in t.elements
        ]

    def glue_spec(self) -> GlueSpec:
        """The glued union data."""
        group = self.group()
        t = self.t_semigroup()
        gammas = self.transformations(t)
        psis: List[PsiMap] = []
        for label, gamma in zip(t.elements, gammas):
            psi = list(identity_psi(gamma, group))
            for point, value in self.psi.get(label, {}).items():
                psi[point] = group.index(value)
            psis.append(tuple(psi))
        return GlueSpec(
            rees=ReesSpec.identity(group, self.points()),
            t=t,
            gamma=tuple(gammas),
            psi=tuple(psis),
        )

    def build(self) -> Semigroup:
        return glued_union(self.glue_spec())


class U1(CatalogEntry):
    description = "The two-element right-zero semigroup {e, f}: ef = f, fe = e."
    provenance = "M({e}; 1, 2; (1, 1)ᵀ)"
    expected = ExpectedFacts(order=2, nilpotent=False, minimal=True, verdict="U1")

    def build(self) -> Semigroup:
        return validate_semigroup(["e", "f"], [[0, 1], [0, 1]])


class U2(CatalogEntry):
    description = "The two-element left-zero semigroup {e, f}: ef = e, fe = f."
    provenance = "M({e}; 2, 1; (1, 1))"
    expected = ExpectedFacts(order=2, nilpotent=False, minimal=True, verdict="U2")

    def build(self) -> Semigroup:
        return validate_semigroup(["e", "f"], [[0, 0], [1, 1]])


class F7(GluedEntry):
    description = "M⁰({e}; 2, 2; I) ∪ ⟨u | u² = 1⟩ with Γ(u) = (1,2)."
    provenance = "Smallest semigroup of type U3."
    expected = ExpectedFacts(order=7, nilpotent=False, minimal=None, verdict="U3")

    n = 2
    t_labels = ("1", "u", "0")
    t_table = ((0, 1, 2), (1, 0, 2), (2, 2, 2))
    gamma = {"1": "(1)(2)", "u": "(1,2)", "0": "θ"}
    names = {"u": "u", "one": "1"}

    @property
    def relations(self) -> Sequence[str]:
        return ("u**2 == one", "u*one == one*u == u")


class U3Nonminimal(F7):
    name = "u3_nonminimal"
    description = (
        "M⁰(C₂; 2, 2; I) ∪ ⟨u | u² = 1⟩ with Γ(u) = (1,2) and Ψ(u) = g: "
        "type U3 but not minimal."
    )
    provenance = "Contains a copy of f7 over the trivial subgroup."
    expected = ExpectedFacts(order=11, nilpotent=False, minimal=False, verdict="NotMinimal")
    expected_offender = frozenset(
        {"(1;1,1)", "(1;2,2)", "(g;1,2)", "(g;2,1)", "u", "1", "0"}
    )

    psi = {"u": {1: "g", 2: "g"}}

    def group(self) -> Semigroup:
        return cyclic_group(2)


class U4Nonminimal(GluedEntry):
    name = "u4_nonminimal"
    description = (
        "M⁰(C₂; 3, 3; I) ∪ ⟨w, v⟩ with Γ(w) = (2,1,3,θ), Γ(v) = (2,3,θ)(1) "
        "and Ψ the identity: type U4 but not minimal."
    )
    provenance = "Contains the same gluing over the trivial subgroup."
    expected = ExpectedFacts(order=25, nilpotent=False, minimal=False, verdict="NotMinimal")
    expected_offender = frozenset(
        [f"(1;{i},{j})" for i in range(1, 4) for j in range(1, 4)]
        + ["0", "v", "v^2", "w", "wv", "vw", "w^2"]
    )

    n = 3
    t_labels = ("v", "v^2", "w", "wv", "vw", "w^2", "0")
    t_table = (
        (1, 1, 4, 6, 4, 6, 6),
        (1, 1, 4, 6, 4, 6, 6),
        (3, 3, 5, 6, 5, 6, 6),
        (3, 3, 5, 6, 5, 6, 6),
        (6, 6, 6, 6, 6, 6, 6),
        (6, 6, 6, 6, 6, 6, 6),
        (6, 6, 6, 6, 6, 6, 6),
    )
    gamma = {
        "v": "(2,3,θ)(1)",
        "v^2": "(1)",
        "w": "(2,1,3,θ)",
        "wv": "(1,3,θ)",
        "vw": "(2,1,θ)",
        "w^2": "(2,3,θ)",
        "0": "θ",
    }
    names = {"v": "v", "w": "w"}

    @property
    def relations(self) -> Sequence[str]:
        return (
            "v**2 == v**3",
            "w*v**2 == w*v",
            "v*w == v**2*w",
            "w**2 == w*v*w == w*v**2*w",
            "v*w**2 == w**2*v == w**3 == v*w*v == theta",
        )

    def group(self) -> Semigroup:
        return cyclic_group(2)


class U5C2(GluedEntry):
    name = "u5_c2"
    description = (
        "M⁰(C₂; 4, 4; I) ∪ {w, v, θ} with Γ(w) = (4,1,θ)(3,2,θ), "
        "Γ(v) = (4,2,θ)(3,1,θ) and Ψ(v)(3) = g."
    )
    provenance = "Type U5 with a nontrivial maximal subgroup."
    expected = ExpectedFacts(order=35, nilpotent=False, minimal=True, verdict="U5")

    n = 4
    t_labels = ("w", "v", "0")
    t_table = ((2, 2, 2), (2, 2, 2), (2, 2, 2))
    gamma = {"w": "(4,1,θ)(3,2,θ)", "v": "(4,2,θ)(3,1,θ)", "0": "θ"}
    psi = {"w": {4: "1", 3: "1"}, "v": {4: "1", 3: "g"}}
    names = {"v": "v", "w": "w"}

    @property
    def relations(self) -> Sequence[str]:
        return ("w**2 == v**2 == w*v == v*w == theta",)

    def group(self) -> Semigroup:
        return cyclic_group(2)


class Y(GluedEntry):
    """The family Yₙ = M⁰({e}; n, n; I) ∪ ⟨w, v⟩ for n ≥ 5.

    The normal forms of ⟨w, v⟩ are ``w``, ``v^p`` for ``1 ≤ p ≤ n - 3``,
    ``wv^p`` for ``1 ≤ p ≤ n - 4`` and θ; every product ending in ``w`` is
    θ.
    """

    description = "Minimal non-nilpotent semigroups of type U5 with trivial group."
    provenance = "Γ(w) = (2,3,θ)(4,1,θ), Γ(v) = (2,1,θ)(n,n-1,…,3,θ)."
    names = {"v": "v", "w": "w"}

    class Meta:
        parametric = True

    def __init__(self, n: int = 5, **params: Any) -> None:
        if n < 5:
            raise BadParameter(f"y(n) needs n ≥ 5 (got {n}).", n=n)
        super().__init__(n=n, **params)

    def points(self) -> int:
        return int(self.params["n"])

    @property
    def expected(self) -> ExpectedFacts:
        n = self.points()
        return ExpectedFacts(
            order=n * n + 1 + (n - 3) + (n - 4) + 1,
            nilpotent=False,
            minimal=True,
            verdict="U5",
        )

    @property
    def relations(self) -> Sequence[str]:
        n = self.points()
        return (
            "v*w == theta",
            "w**2 == theta",
            f"v**{n - 2} == theta",
            f"v**{n - 3} != theta",
            f"w*v**{n - 4} != theta",
        )

    def _words(self) -> List[Tuple[int, int]]:
        # (starts with w, power of v)
        n = self.points()
        return (
            [(1, 0)]
            + [(0, p) for p in range(1, n - 2)]
            + [(1, p) for p in range(1, n - 3)]
        )

    def t_semigroup(self) -> Semigroup:
        n = self.points()
        words = self._words()
        position = {word: k for k, word in enumerate(words)}
        zero = len(words)

        def multiply(left: Tuple[int, int], right: Tuple[int, int]) -> int:
            w, p = left
            right_w, q = right
            if right_w:
                return zero
            limit = n - 4 if w else n - 3
            return position[(w, p + q)] if p + q <= limit else zero

        labels = [
            ("w" if w else "") + ("v" if p else "") + (f"^{p}" if p > 1 else "")
            for w, p in words
        ] + ["0"]
        table = [[multiply(a, b) for b in words] + [zero] for a in words]
        table.append([zero] * (zero + 1))
        return validate_semigroup(labels, table)

    def transformations(self, t: Semigroup) -> List[Transformation]:
        n = self.points()
        gamma_w = transformation_from_cycles("(2,3,θ)(4,1,θ)", n)
        chain = ",".join(str(p) for p in range(n, 2, -1))
        gamma_v = transformation_from_cycles(f"(2,1,θ)({chain},θ)", n)

        gammas = []
        for w, p in self._words():
            gamma = tuple(range(n + 1))
            for _ in range(p):
                gamma = compose(gamma, gamma_v)
            if w:
                gamma = compose(gamma_w, gamma)
            gammas.append(gamma)
        gammas.append((0,) * (n + 1))
        return gammas


class GroupEntry(CatalogEntry):
    """A finite group, nilpotent or a Schmidt group."""

    class Meta:
        abstract = True

    nilpotent: ClassVar[bool] = True

    @property
    def expected(self) -> ExpectedFacts:
        return ExpectedFacts(
            order=self.semigroup.order,
            nilpotent=self.nilpotent,
            minimal=not self.nilpotent,
            verdict="Nilpotent" if self.nilpotent else "Schmidt",
        )


class C(GroupEntry):
    description = "The cyclic group of order n."

    class Meta:
        parametric = True

    def __init__(self, n: int = 1, **params: Any) -> None:
        if n < 1:
            raise BadParameter(f"c(n) needs n ≥ 1 (got {n}).", n=n)
        super().__init__(n=n, **params)

    def build(self) -> Semigroup:
        return cyclic_group(int(self.params["n"]))


class C2xC2(GroupEntry):
    description = "The Klein four-group."

    def build(self) -> Semigroup:
        return abelian_group(2, 2)


class C2xC4(GroupEntry):
    description = "The abelian group C₂ × C₄."

    def build(self) -> Semigroup:
        return abelian_group(2, 4)


class S3(GroupEntry):
    description = "The symmetric group on three points, the smallest Schmidt group."
    nilpotent = False

    def build(self) -> Semigroup:
        return symmetric_group(3)


class A4(GroupEntry):
    description = "The alternating group on four points."
    nilpotent = False

    def build(self) -> Semigroup:
        return alternating_group(4)


class D4(GroupEntry):
    description = "The dihedral group of order 8."

    def build(self) -> Semigroup:
        return dihedral_group(4)


class D5(GroupEntry):
    description = "The dihedral group of order 10."
    nilpotent = False

    def build(self) -> Semigroup:
        return dihedral_group(5)


class Q8(GroupEntry):
    description = "The quaternion group."

    def build(self) -> Semigroup:
        return quaternion_group()


_PARAMETRIC_NAME = re.compile(r"([a-z_]+?)\(?(\d+)\)?")


def entry(name: str, **params: Any) -> CatalogEntry:
    """Return the catalog entry with the given name.

    Parametric entries accept their parameter as a keyword or in the name:
    ``entry("y", n=6)``, ``entry("y6")`` and ``entry("y(6)")`` agree.

    Args:
        name: The entry name.
        params: Entry parameters.

    Returns:
        CatalogEntry: The entry.

    Raises:
        BadParameter: If no entry has that name or a parameter is out of range.
    """
    key = name.strip().lower()
    if key in CATALOG:
        return CATALOG[key](**params)

    match = _PARAMETRIC_NAME.fullmatch(key)
    if match is not None:
        base, value = match.groups()
        cls = CATALOG.get(base)
        if cls is not None and cls._meta.parametric:
            return cls(n=int(value), **params)

    raise BadParameter(
        f"No catalog entry named {name!r}. Known entries: {', '.join(sorted(CATALOG))}.",
        name=name,
    )
