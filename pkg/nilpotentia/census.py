# -*- coding: utf-8 -*-

"""Enumeration of small semigroups up to isomorphism.

Tables are filled cell by cell in row-major order with every value tried in
ascending order, so complete tables come out in lexicographic order. Each
assignment is checked against every associativity triple it completes, and
each completed row against every relabelling (and, modulo anti-isomorphism,
every transposed relabelling): a partial table that some relabelling
already makes smaller cannot be completed to a lexicographically least one.
"""

import heapq
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Iterator, List, Optional, Sequence, Tuple

from nilpotentia.classify import Classification, classify
from nilpotentia.conf import get_setting
from nilpotentia.core import (
    Semigroup,
    Table,
    default_labels,
    idempotents,
    semigroup_from_trusted_table,
)
from nilpotentia.exceptions import BadParameter, CapExceeded
from nilpotentia.nilpotency import decide_nilpotent
from nilpotentia.signals import census_class_found
from nilpotentia.structure import MinimalityMode, is_minimal_non_nilpotent

logger = logging.getLogger(__name__)


class Modulo(str, Enum):
    """Which tables count as the same."""

    ISO = "iso"
    ISO_ANTI = "isoanti"


class CensusFilter(str, Enum):
    """Which classes a census reports."""

    ALL = "all"
    MINIMAL_NON_NILPOTENT = "mnn"


@dataclass(frozen=True)
class CensusConfig:
    """The parameters of a census."""

    order: int
    modulo: Modulo = Modulo.ISO
    shards: int = 1
    filter: CensusFilter = CensusFilter.ALL
    threads: int = 1

    def __post_init__(self) -> None:
        cap = get_setting("NILPOTENTIA_CENSUS_MAX_ORDER")
        if not 1 <= self.order <= cap:
            raise CapExceeded(
                f"Census orders must be between 1 and {cap} (got {self.order}).",
                order=self.order,
                cap=cap,
            )
        if self.shards < 1:
            raise BadParameter(f"shards must be positive (got {self.shards}).")
        if self.threads < 1:
            raise BadParameter(f"threads must be positive (got {self.threads}).")


Relabelling = Tuple[Tuple[int, ...], Tuple[int, ...], bool]


def _relabellings(n: int, modulo: Modulo) -> List[Relabelling]:
    flips = (False, True) if modulo == Modulo.ISO_ANTI else (False,)
    found = []
    for perm in permutations(range(n)):
        inverse = [0] * n
        for a, b in enumerate(perm):
            inverse[b] = a
        for flip in flips:
            if perm == tuple(range(n)) and not flip:
                continue
            found.append((perm, tuple(inverse), flip))
    return found


def _compare(
    table: Sequence[Sequence[int]], last_row: int, relabelling: Relabelling
) -> int:
    """Compare the relabelled table with the table over their known prefix.

    Returns -1 if the relabelled table is smaller, 1 if larger and 0 if
    they agree as far as both are known.
    """
    perm, inverse, flip = relabelling
    n = len(table)
    for k in range(n):
        if k > last_row:
            return 0
        a = inverse[k]
        for col in range(n):
            b = inverse[col]
            x, y = (b, a) if flip else (a, b)
            if x > last_row:
                return 0
            value, current = perm[table[x][y]], table[k][col]
            if value != current:
                return -1 if value < current else 1
    return 0


def _is_least(
    table: Sequence[Sequence[int]], last_row: int, relabellings: Sequence[Relabelling]
) -> bool:
    return all(_compare(table, last_row, r) >= 0 for r in relabellings)


def _below(
    table: Table, inverse: Sequence[int], flip: bool, best: Optional[Table]
) -> Optional[Table]:
    """Relabel the table, giving up at the first cell that exceeds ``best``.

    ``inverse[k]`` is the element placed at position k. Returns None unless
    the relabelled table is strictly smaller than ``best``.
    """
    perm = [0] * len(inverse)
    for k, a in enumerate(inverse):
        perm[a] = k
    smaller = best is None
    rows = []
    for k, a in enumerate(inverse):
        row = []
        for col, b in enumerate(inverse):
            value = perm[table[b][a]] if flip else perm[table[a][b]]
            if not smaller:
                current = best[k][col]  # type: ignore
                if value > current:
                    return None
                smaller = value < current
            row.append(value)
        rows.append(tuple(row))
    return tuple(rows) if smaller else None


def canonical_form(semigroup: Semigroup, modulo: Modulo = Modulo.ISO) -> Table:
    """Return the lexicographically least table isomorphic to the semigroup.

    The first cell of the least table is 0, so only relabellings that put an
    idempotent first are tried. Each is dropped at the first cell that
    exceeds the least table found so far.

    Args:
        semigroup: The semigroup.
        modulo: Whether anti-isomorphic tables count as the same.

    Returns:
        Table: The least table over all relabellings (and transposes).
    """
    n = semigroup.order
    table = semigroup.table
    flips = (False, True) if modulo == Modulo.ISO_ANTI else (False,)
    best: Optional[Table] = None
    for first in sorted(idempotents(semigroup)):
        rest = [a for a in range(n) if a != first]
        for tail in permutations(rest):
            for flip in flips:
                candidate = _below(table, (first,) + tail, flip, best)
                if candidate is not None:
                    best = candidate
    assert best is not None
    return best


def _consistent(table: List[List[int]], i: int, j: int) -> bool:
    """Check the associativity triples completed by assigning cell (i, j)."""
    n = len(table)
    v = table[i][j]
    for c in range(n):
        # (ij)c = i(jc)
        left, jc = table[v][c], table[j][c]
        if left >= 0 and jc >= 0:
            right = table[i][jc]
            if right >= 0 and left != right:
                return False
        # (ci)j = c(ij)
        ci = table[c][i]
        if ci >= 0:
            left, right = table[ci][j], table[c][v]
            if left >= 0 and right >= 0 and left != right:
                return False
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            # (ab)j = a(bj) where ab = i
            if ab == i:
                bj = table[b][j]
                if bj >= 0:
                    right = table[a][bj]
                    if right >= 0 and right != v:
                        return False
            # i(ab) = (ia)b where ab = j
            if ab == j:
                ia = table[i][a]
                if ia >= 0:
                    left = table[ia][b]
                    if left >= 0 and left != v:
                        return False
    return True


def _search(order: int, modulo: Modulo, shard: int, shards: int) -> Iterator[Table]:
    """Yield the canonical tables whose first row falls in the given shard."""
    n = order
    table = [[-1] * n for _ in range(n)]
    relabellings = _relabellings(n, modulo)
    first_rows = 0

    def extend(cell: int) -> Iterator[Table]:
        nonlocal first_rows
        if cell == n * n:
            yield tuple(tuple(row) for row in table)
            return
        i, j = divmod(cell, n)
        for value in range(n):
            table[i][j] = value
            if not _consistent(table, i, j):
                continue
            if j == n - 1:
                if not _is_least(table, i, relabellings):
                    continue
                if i == 0:
                    first_rows += 1
                    if (first_rows - 1) % shards != shard:
                        continue
            yield from extend(cell + 1)
        table[i][j] = -1

    yield from extend(0)


def _shard_tables(order: int, modulo: Modulo, shard: int, shards: int) -> List[Table]:
    return list(_search(order, modulo, shard, shards))


def enumerate_semigroups(config: CensusConfig) -> Iterator[Semigroup]:
    """Yield one semigroup per class, in lexicographic order of canonical tables.

    Args:
        config: The census parameters; ``filter`` is not applied here.

    Returns:
        Iterator[Semigroup]: The canonical semigroups, labelled with
            `default_labels`.
    """
    order, modulo, shards = config.order, Modulo(config.modulo), config.shards
    if config.threads > 1:
        shards = max(shards, config.threads)
    if order >= 7:
        logger.warning("A census of order 7 is long-running.")

    if config.threads > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as executor:
            futures = [
                executor.submit(_shard_tables, order, modulo, shard, shards)
                for shard in range(shards)
            ]
            streams: List[Iterator[Table]] = [iter(f.result()) for f in futures]
    else:
        streams = [_search(order, modulo, shard, shards) for shard in range(shards)]

    labels = default_labels(order)
    count = 0
    for table in heapq.merge(*streams):
        count += 1
        yield semigroup_from_trusted_table(labels, table)
    logger.info(f"Found {count} semigroups of order {order} up to {modulo.value}.")


def find_minimal_non_nilpotent(
    config: CensusConfig,
) -> List[Tuple[Semigroup, Classification]]:
    """Return the minimal non-nilpotent classes of a census, classified.

    Args:
        config: The census parameters.

    Returns:
        List[Tuple[Semigroup, Classification]]: The classes in canonical order.
    """
    found = []
    for semigroup in enumerate_semigroups(config):
        if decide_nilpotent(semigroup).nilpotent:
            continue
        verdict = is_minimal_non_nilpotent(
            semigroup, mode=MinimalityMode.EXHAUSTIVE, stop_at_first=True
        )
        if not verdict.minimal:
            continue
        classification = classify(semigroup, mode=MinimalityMode.EXHAUSTIVE)
        logger.info(f"Found a minimal non-nilpotent class: {classification.verdict.value}.")
        census_class_found.send(
            sender=find_minimal_non_nilpotent,
            semigroup=semigroup,
            classification=classification,
        )
        found.append((semigroup, classification))
    return found
