# -*- coding: utf-8 -*-

"""Malcev nilpotency of finite semigroups.

For elements ``x, y`` and words ``w₁, w₂, …`` of S¹ the sequences
``λ₀ = x, ρ₀ = y, λₖ₊₁ = λₖ wₖ₊₁ ρₖ, ρₖ₊₁ = ρₖ wₖ₊₁ λₖ`` are computed one
step at a time as edges of the pair graph ``(x, y) → (xwy, ywx)``. A finite
semigroup is nilpotent exactly when no off-diagonal pair lies on a cycle of
that graph.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from nilpotentia.core import Semigroup, adjoin_identity
from nilpotentia.exceptions import ElementIndexOutOfRange

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    """A replayable certificate of non-nilpotency.

    ``ws`` are indices of S¹ (the adjoined identity, if any, is the last
    index) such that the λ/ρ recursion started at ``(x, y)`` returns to
    ``(x, y)`` after ``len(ws)`` steps.
    """

    x: int
    y: int
    ws: Tuple[int, ...]

    def as_dict(self, semigroup: Semigroup) -> Dict[str, Any]:
        """Serialize the witness with element labels.

        Args:
            semigroup: The semigroup the witness belongs to.

        Returns:
            Dict[str, Any]: ``{"x": ..., "y": ..., "ws": [...]}``.
        """
        labels = adjoin_identity(semigroup).elements
        return {
            "x": labels[self.x],
            "y": labels[self.y],
            "ws": [labels[w] for w in self.ws],
        }


@dataclass(frozen=True)
class NilpotencyResult:
    """The outcome of `decide_nilpotent`.

    Exactly one of ``nilpotency_class`` and ``witness`` is set.
    """

    nilpotency_class: Optional[int] = None
    witness: Optional[Witness] = None

    @property
    def nilpotent(self) -> bool:
        """True if the semigroup is nilpotent."""
        return self.witness is None

    def as_dict(self, semigroup: Semigroup) -> Dict[str, Any]:
        """Serialize the result with element labels."""
        if self.witness is None:
            return {"verdict": "Nilpotent", "class": self.nilpotency_class}
        return {"verdict": "NonNilpotent", "witness": self.witness.as_dict(semigroup)}


def edge_labels(semigroup: Semigroup, strict: bool = False) -> np.ndarray:
    """Return the S¹ indices used as pair-graph edge labels, in label order.

    The identity of S¹ comes first, followed by the other elements in index
    order. Witnesses are compared lexicographically in this order.

    Args:
        semigroup: The semigroup.
        strict: If True, only elements of S label edges (Malcev's original
            convention); an adjoined identity is left out.

    Returns:
        np.ndarray: The label indices.
    """
    monoid = adjoin_identity(semigroup)
    one = monoid.identity
    order = semigroup.order if strict else monoid.order
    labels = [i for i in range(order) if i != one]
    if one is not None and one < order:
        labels.insert(0, one)
    return np.array(labels, dtype=np.intp)


def pair_targets(
    monoid_table: np.ndarray, members: np.ndarray, labels: np.ndarray
) -> np.ndarray:
    """Return the edge targets of the pair graph on a subsemigroup.

    Pairs of members are numbered ``i * k + j`` for the ``i``-th and ``j``-th
    member (``k`` members in all).

    Args:
        monoid_table: The Cayley table of S¹.
        members: The sorted indices of a product-closed subset of S.
        labels: The S¹ indices labelling edges.

    Returns:
        np.ndarray: ``targets[node, l]`` is the pair reached from ``node``
            along the ``l``-th label.
    """
    size = len(members)
    position = np.full(monoid_table.shape[0], -1, dtype=np.intp)
    position[members] = np.arange(size)
    xs = np.repeat(members, size)[:, None]
    ys = np.tile(members, size)[:, None]
    ws = labels[None, :]
    lam = monoid_table[monoid_table[xs, ws], ys]
    rho = monoid_table[monoid_table[ys, ws], xs]
    return position[lam] * size + position[rho]


def _diagonal(size: int) -> np.ndarray:
    mask = np.zeros(size * size, dtype=bool)
    mask[np.arange(size) * (size + 1)] = True
    return mask


def _pair_chain(
    targets: np.ndarray, size: int, stop_on_diagonal: bool = False
) -> List[np.ndarray]:
    # P₀ is every pair and each Pₖ₊₁ ⊆ Pₖ, so the chain stabilizes.
    diagonal = _diagonal(size)
    current = np.ones(size * size, dtype=bool)
    chain = [current]
    while True:
        if stop_on_diagonal and not (current & ~diagonal).any():
            return chain
        following = np.zeros_like(current)
        following[targets[current].ravel()] = True
        if (following == current).all():
            return chain
        chain.append(following)
        current = following


def _class_from_chain(chain: Sequence[np.ndarray], size: int) -> Optional[int]:
    off_diagonal = ~_diagonal(size)
    for k, pairs in enumerate(chain):
        if not (pairs & off_diagonal).any():
            return k
    return None


def is_nilpotent_subset(
    monoid_table: np.ndarray, members: np.ndarray, labels: np.ndarray
) -> bool:
    """Decide nilpotency of a subsemigroup without building its table.

    The labels must contain the identity of S¹; it acts as the identity of
    the subsemigroup's own monoid.

    Args:
        monoid_table: The Cayley table of S¹.
        members: The sorted indices of the subsemigroup.
        labels: The edge labels: the members plus the identity of S¹.

    Returns:
        bool: True if the subsemigroup is nilpotent.
    """
    size = len(members)
    targets = pair_targets(monoid_table, members, labels)
    chain = _pair_chain(targets, size, stop_on_diagonal=True)
    return _class_from_chain(chain[-1:], size) is not None


class PairGraph:
    """The pair graph of a semigroup.

    Nodes are ordered pairs ``(x, y)`` of elements, numbered ``x * n + y``;
    every node has one outgoing edge per label ``w`` in S¹, leading to
    ``(xwy, ywx)``.
    """

    def __init__(self, semigroup: Semigroup, strict: bool = False) -> None:
        self.semigroup = semigroup
        self.monoid = adjoin_identity(semigroup)
        self.labels = edge_labels(semigroup, strict=strict)
        self.targets = pair_targets(
            self.monoid.array, np.arange(semigroup.order, dtype=np.intp), self.labels
        )

    @property
    def size(self) -> int:
        """The number of elements of the underlying semigroup."""
        return self.semigroup.order

    def node(self, x: int, y: int) -> int:
        """Return the node number of a pair."""
        return x * self.size + y

    def pair(self, node: int) -> Tuple[int, int]:
        """Return the pair of a node number."""
        x, y = divmod(int(node), self.size)
        return x, y

    def successors(self, x: int, y: int) -> List[Tuple[int, Tuple[int, int]]]:
        """Return the labelled edges leaving ``(x, y)``.

        Args:
            x: The first element.
            y: The second element.

        Returns:
            List[Tuple[int, Tuple[int, int]]]: ``(label, target pair)`` in
                label order.
        """
        row = self.targets[self.node(x, y)]
        return [(int(w), self.pair(t)) for w, t in zip(self.labels, row)]

    def as_networkx(self, nodes: Optional[Iterable[int]] = None) -> nx.DiGraph:
        """Return the pair graph (or the subgraph on some nodes) for networkx.

        Args:
            nodes: Node numbers to keep; all nodes when omitted.

        Returns:
            nx.DiGraph: A simple directed graph; parallel edges are merged.
        """
        kept = (
            np.arange(self.size * self.size)
            if nodes is None
            else np.fromiter(nodes, dtype=np.intp)
        )
        keep = np.zeros(self.size * self.size, dtype=bool)
        keep[kept] = True
        graph = nx.DiGraph()
        graph.add_nodes_from(int(v) for v in kept)
        for node in kept:
            for target in set(self.targets[node].tolist()):
                if keep[target]:
                    graph.add_edge(int(node), target)
        return graph


def lambda_rho(
    semigroup: Semigroup, x: int, y: int, ws: Sequence[int]
) -> Tuple[int, int]:
    """Run the λ/ρ recursion.

    Args:
        semigroup: The semigroup.
        x: The starting λ₀.
        y: The starting ρ₀.
        ws: Indices of S¹ (an adjoined identity is the last index).

    Returns:
        Tuple[int, int]: ``(λₘ, ρₘ)`` for ``m = len(ws)``.

    Raises:
        ElementIndexOutOfRange: If an index is out of range.
    """
    monoid = adjoin_identity(semigroup)
    semigroup.check_index(x)
    semigroup.check_index(y)
    for w in ws:
        monoid.check_index(w)

    lam, rho = x, y
    for w in ws:
        lam, rho = monoid.product(lam, w, rho), monoid.product(rho, w, lam)
    return lam, rho


def verify_witness(semigroup: Semigroup, witness: Witness) -> bool:
    """Return True if the witness certifies non-nilpotency.

    Args:
        semigroup: The semigroup.
        witness: The candidate witness.

    Returns:
        bool: True if ``x != y``, ``ws`` is nonempty and the recursion
            returns to ``(x, y)``.
    """
    if witness.x == witness.y or not witness.ws:
        return False
    try:
        return lambda_rho(semigroup, witness.x, witness.y, witness.ws) == (
            witness.x,
            witness.y,
        )
    except ElementIndexOutOfRange:
        return False


def descending_pair_sets(
    semigroup: Semigroup, strict: bool = False
) -> List[FrozenSet[Tuple[int, int]]]:
    """Return the chain P₀ ⊇ P₁ ⊇ … of pairs reachable in k steps.

    The chain stops at its stable limit (the last set is the first one that
    repeats).

    Args:
        semigroup: The semigroup.
        strict: Only use elements of S as edge labels.

    Returns:
        List[FrozenSet[Tuple[int, int]]]: The pair sets.
    """
    graph = PairGraph(semigroup, strict=strict)
    return [
        frozenset(graph.pair(node) for node in np.flatnonzero(pairs))
        for pairs in _pair_chain(graph.targets, graph.size)
    ]


def nilpotency_class(semigroup: Semigroup, strict: bool = False) -> Optional[int]:
    """Return the nilpotency class, or None if the semigroup is not nilpotent.

    Args:
        semigroup: The semigroup.
        strict: Only use elements of S as edge labels.

    Returns:
        Optional[int]: The least k with λₖ = ρₖ identically.
    """
    graph = PairGraph(semigroup, strict=strict)
    chain = _pair_chain(graph.targets, graph.size, stop_on_diagonal=True)
    return _class_from_chain(chain, graph.size)


def _least_witness(graph: PairGraph, stable: np.ndarray) -> Witness:
    size = graph.size
    nodes = np.flatnonzero(stable & ~_diagonal(size))
    digraph = graph.as_networkx(nodes)
    cyclic = sorted(
        node
        for component in nx.strongly_connected_components(digraph)
        for node in component
        if len(component) > 1 or digraph.has_edge(node, node)
    )
    position = {node: i for i, node in enumerate(cyclic)}
    adjacency = np.zeros((len(cyclic), len(cyclic)))
    for node in cyclic:
        for target in graph.targets[node].tolist():
            if target in position:
                adjacency[position[node], position[target]] = 1.0

    # reach[k][u, v]: a walk of exactly k steps leads from u to v.
    reach = [np.eye(len(cyclic), dtype=bool)]
    while True:
        step = (reach[-1].astype(float) @ adjacency) > 0
        if step.diagonal().any():
            break
        reach.append(step)
    length = len(reach)
    logger.debug(f"Shortest off-diagonal cycle has length {length}.")

    best: Optional[Tuple[Tuple[int, ...], int, int]] = None
    for start in np.flatnonzero(step.diagonal()):
        sequence: List[int] = []
        current = cyclic[start]
        for remaining in range(length - 1, -1, -1):
            for label_position, target in enumerate(graph.targets[current].tolist()):
                if target in position and reach[remaining][position[target], start]:
                    sequence.append(label_position)
                    current = target
                    break
        x, y = graph.pair(cyclic[start])
        key = (tuple(sequence), x, y)
        if best is None or key < best:
            best = key

    assert best is not None
    sequence_positions, x, y = best
    return Witness(
        x=x, y=y, ws=tuple(int(graph.labels[p]) for p in sequence_positions)
    )


def decide_nilpotent(semigroup: Semigroup, strict: bool = False) -> NilpotencyResult:
    """Decide whether a finite semigroup is nilpotent.

    Args:
        semigroup: The semigroup.
        strict: Only use elements of S as edge labels.

    Returns:
        NilpotencyResult: The class when nilpotent, otherwise the
            lexicographically least witness under (length, labels, x, y).
    """
    graph = PairGraph(semigroup, strict=strict)
    chain = _pair_chain(graph.targets, graph.size, stop_on_diagonal=True)
    nilpotency = _class_from_chain(chain, graph.size)
    if nilpotency is not None:
        return NilpotencyResult(nilpotency_class=nilpotency)
    return NilpotencyResult(witness=_least_witness(graph, chain[-1]))


def power_nilpotency_index(semigroup: Semigroup) -> Optional[int]:
    """Return the least m with Sᵐ = {θ}, or None if there is none.

    Args:
        semigroup: The semigroup.

    Returns:
        Optional[int]: The index, or None if S has no zero or is not power
            nilpotent.
    """
    zero = semigroup.zero
    if zero is None:
        return None

    array = semigroup.array
    current = np.ones(semigroup.order, dtype=bool)
    m = 1
    while True:
        if current.sum() == 1 and current[zero]:
            return m
        following = np.zeros_like(current)
        following[array[np.flatnonzero(current)].ravel()] = True
        if (following == current).all():
            return None
        current = following
        m += 1


def positively_engel_degree(semigroup: Semigroup) -> Optional[int]:
    """Return the least n ≥ 2 making the semigroup positively Engel.

    The semigroup is positively Engel of degree n when
    ``λₙ(a, b, 1, 1, c, c², …, cⁿ⁻²) = ρₙ(a, b, 1, 1, c, c², …, cⁿ⁻²)`` for all
    ``a, b`` in S and ``c`` in S¹.

    Args:
        semigroup: The semigroup.

    Returns:
        Optional[int]: The degree, or None if no degree exists.
    """
    monoid = adjoin_identity(semigroup)
    table = monoid.array
    one = monoid.identity
    assert one is not None
    n = semigroup.order
    xs, ys = np.divmod(np.arange(n * n), n)

    degree = 2
    for c in range(monoid.order):
        # Once the powers of c cycle, every `period` steps apply the same map
        # to the n² pairs, so a pair that has not met the diagonal within
        # n² + 1 rounds never will.
        index = period = 1
        if c != one:
            seen: Dict[int, int] = {}
            power, exponent = c, 1
            while power not in seen:
                seen[power] = exponent
                power = int(table[power, c])
                exponent += 1
            index, period = seen[power], exponent - seen[power]
        bound = 2 + index + period * (n * n + 1)

        lam, rho = xs.copy(), ys.copy()
        power = one
        for step in range(1, bound + 1):
            if step >= 3:
                power = c if step == 3 else int(table[power, c])
            w = one if step < 3 else power
            lam, rho = table[table[lam, w], rho], table[table[rho, w], lam]
            if (lam == rho).all():
                degree = max(degree, step)
                break
        else:
            return None
    return degree
