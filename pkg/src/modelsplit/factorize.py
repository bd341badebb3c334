"""Factorization checks, join composition, cylinders and finest factorizations.

A partition of a model set's scope factorizes the set when the set equals
the join of its block projections, i.e. every recombination of per-block
pieces is already a member.  Because a model set always lies inside that
join, the check reduces to comparing cardinalities, but
:func:`is_factorization` builds the join literally so that it can report a
violating recombination.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

from .core import Assignment, ModelSet, ProductSpace, project_model_set
from .errors import PartitionError, ResourceLimitError, ScopeError
from .partition import Partition, format_partition, meet_many

ORACLE_MAX_COORDINATES = 5


@dataclass(frozen=True)
class FactorizationReport:
    partition: Partition
    holds: bool
    witness: Assignment | None = None

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("a witness is present exactly when the factorization fails")

    def to_record(self) -> dict:
        return {
            "partition": format_partition(self.partition),
            "holds": self.holds,
            "witness": None if self.witness is None else list(self.witness.symbols()),
        }


def _check_partition_scope(models: ModelSet, part: Partition) -> None:
    if set(part.scope) != set(models.scope):
        raise ScopeError(f"partition scope {part.scope} differs from model set scope {models.scope}")


def block_projections(models: ModelSet, part: Partition) -> dict[tuple[str, ...], ModelSet]:
    _check_partition_scope(models, part)
    return {b: project_model_set(models, b) for b in part.blocks}


def compose_join(
    space: ProductSpace,
    factors: Mapping[Iterable[str], ModelSet],
    scope: Iterable[str] | None = None,
) -> ModelSet:
    """All assignments whose restriction to each block is a member of that block's factor.

    ``factors`` maps disjoint coordinate blocks to model sets scoped on
    exactly those blocks.  When ``scope`` is given the blocks must cover it.
    """
    items = []
    covered: set[str] = set()
    for block, factor in factors.items():
        block = space.order(block)
        if not block:
            raise PartitionError("empty block")
        if factor.space != space or factor.scope != block:
            raise PartitionError(f"factor scope {factor.scope} does not match its block {block}")
        if covered & set(block):
            raise PartitionError(f"block {block} overlaps another block")
        covered |= set(block)
        items.append(factor)
    out_scope = space.order(covered)
    if scope is not None and set(scope) != covered:
        raise PartitionError(f"blocks cover {out_scope} but the requested scope is {tuple(scope)}")
    where = [[out_scope.index(k) for k in f.scope] for f in items]
    rows = []
    for combo in itertools.product(*(f.rows for f in items)):
        row = [0] * len(out_scope)
        for idx, part in zip(where, combo):
            for i, v in zip(idx, part):
                row[i] = v
        rows.append(tuple(row))
    return ModelSet(space, out_scope, rows)


def is_factorization(models: ModelSet, part: Partition) -> FactorizationReport:
    """Check whether ``part`` factorizes ``models``.

    On failure the witness is the canonically first recombination of block
    projections that is not a member.
    """
    projections = block_projections(models, part)
    if not part.blocks:
        return FactorizationReport(part, True)
    joined = compose_join(models.space, projections, models.scope)
    extra = joined - models
    if not extra:
        return FactorizationReport(part, True)
    return FactorizationReport(part, False, Assignment(models.space, models.scope, extra.rows[0]))


def cylinder_extend(models: ModelSet, space: ProductSpace, free: Iterable[str]) -> ModelSet:
    """Pair every member of ``models`` with every assignment to ``free``."""
    if models.space != space:
        raise ScopeError("model set belongs to a different space")
    free = space.order(free)
    overlap = set(free) & set(models.scope)
    if overlap:
        raise ValueError(f"free coordinates {sorted(overlap)} already in the base scope")
    if not free:
        return models
    if not models.scope:
        return ModelSet.full(space, free) if models else ModelSet(space, free)
    return compose_join(space, {models.scope: models, free: ModelSet.full(space, free)})


def factorization_bipartitions(models: ModelSet) -> list[tuple[str, ...]]:
    """Sides ``A`` (holding the first coordinate) with ``{A, rest}`` factorizing ``models``.

    Candidates are listed by size, then lexicographically, and rejected by
    the cardinality law before the full recombination check.
    """
    scope = models.scope
    if not scope:
        raise ValueError("model set has an empty scope")
    first, rest = scope[0], scope[1:]
    found = []
    for r in range(len(rest)):
        for chosen in itertools.combinations(rest, r):
            side = (first, *chosen)
            other = tuple(k for k in rest if k not in chosen)
            if len(project_model_set(models, side)) * len(project_model_set(models, other)) != len(models):
                continue
            if is_factorization(models, Partition([side, other], scope)).holds:
                found.append(side)
    return found


def finest_factorization(models: ModelSet) -> Partition:
    """The factorization refining every other factorization of ``models``."""
    scope = models.scope
    parts = [Partition.top(scope)]
    for side in factorization_bipartitions(models):
        parts.append(Partition([side, [k for k in scope if k not in side]], scope))
    return meet_many(parts)


def set_partitions(scope: tuple[str, ...]) -> Iterator[Partition]:
    """Every partition of ``scope`` (restricted growth strings)."""
    n = len(scope)
    if n == 0:
        yield Partition([], ())
        return

    def grow(labels: list[int], top: int) -> Iterator[list[int]]:
        if len(labels) == n:
            yield labels
            return
        for lab in range(top + 2):
            yield from grow(labels + [lab], max(top, lab))

    for labels in grow([0], 0):
        blocks: dict[int, list[str]] = {}
        for k, lab in zip(scope, labels):
            blocks.setdefault(lab, []).append(k)
        yield Partition(blocks.values(), scope)


def oracle_finest(models: ModelSet, max_coordinates: int = ORACLE_MAX_COORDINATES) -> Partition:
    """Meet of every factorizing partition, found by enumerating all partitions."""
    if len(models.scope) > max_coordinates:
        raise ResourceLimitError(
            f"oracle enumeration limited to {max_coordinates} coordinates, got {len(models.scope)}"
        )
    if not models.scope:
        raise ValueError("model set has an empty scope")
    return meet_many(p for p in set_partitions(models.scope) if is_factorization(models, p).holds)
