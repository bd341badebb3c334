"""Partitions of coordinate sets: refinement, restriction and meet."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from functools import reduce

from .errors import ParseError, PartitionError, ScopeError


class Partition:
    """Disjoint nonempty blocks covering ``scope``.

    ``scope`` is an ordered tuple; it fixes the canonical form, in which
    each block lists its coordinates in scope order and blocks are sorted
    by their least coordinate.  Equality ignores the order, so two
    partitions are equal iff they have the same blocks.
    """

    __slots__ = ("scope", "blocks", "_key")

    def __init__(self, blocks: Iterable[Iterable[str]], order: Sequence[str] | None = None):
        blocks = [tuple(b) for b in blocks]
        seen: set[str] = set()
        for b in blocks:
            if not b:
                raise PartitionError("empty block")
            for k in b:
                if k in seen:
                    raise PartitionError(f"coordinate {k!r} occurs in more than one block")
                seen.add(k)
        if order is None:
            order = [k for b in blocks for k in b]
        else:
            order = list(dict.fromkeys(order))
            if set(order) != seen:
                raise PartitionError(
                    f"blocks cover {sorted(seen)} but the scope is {sorted(set(order))}"
                )
        pos = {k: i for i, k in enumerate(order)}
        canon = sorted((tuple(sorted(b, key=pos.__getitem__)) for b in blocks), key=lambda b: pos[b[0]])
        self.scope: tuple[str, ...] = tuple(order)
        self.blocks: tuple[tuple[str, ...], ...] = tuple(canon)
        self._key = frozenset(frozenset(b) for b in canon)

    @classmethod
    def top(cls, scope: Sequence[str]) -> Partition:
        """The one-block partition (empty scope gives no blocks)."""
        return cls([tuple(scope)] if scope else [], scope)

    @classmethod
    def singletons(cls, scope: Sequence[str]) -> Partition:
        return cls([(k,) for k in scope], scope)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self, coord: str) -> tuple[str, ...]:
        for b in self.blocks:
            if coord in b:
                return b
        raise ScopeError(f"{coord!r} is outside the partition scope")

    def __str__(self) -> str:
        return format_partition(self)

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)!r})"


def _same_scope(a: Partition, b: Partition) -> None:
    if set(a.scope) != set(b.scope):
        raise ScopeError(f"partitions over different scopes: {a.scope} vs {b.scope}")


def restrict_partition(part: Partition, coords: Iterable[str]) -> Partition:
    """Keep the nonempty intersections of each block with ``coords``."""
    coords = set(coords)
    outside = coords - set(part.scope)
    if outside:
        raise ScopeError(f"coordinates {sorted(outside)} are outside scope {part.scope}")
    order = [k for k in part.scope if k in coords]
    blocks = [[k for k in b if k in coords] for b in part.blocks]
    return Partition([b for b in blocks if b], order)


def is_refinement(finer: Partition, coarser: Partition) -> bool:
    """True iff every block of ``finer`` lies inside a block of ``coarser``."""
    _same_scope(finer, coarser)
    owner = {k: i for i, b in enumerate(coarser.blocks) for k in b}
    return all(len({owner[k] for k in b}) == 1 for b in finer.blocks)


def meet(a: Partition, b: Partition) -> Partition:
    """Coarsest common refinement: all nonempty pairwise block intersections."""
    _same_scope(a, b)
    owner = {k: i for i, blk in enumerate(b.blocks) for k in blk}
    pieces: dict[tuple[int, int], list[str]] = {}
    for i, blk in enumerate(a.blocks):
        for k in blk:
            pieces.setdefault((i, owner[k]), []).append(k)
    return Partition(pieces.values(), a.scope)


def meet_many(parts: Iterable[Partition]) -> Partition:
    parts = list(parts)
    if not parts:
        raise ValueError("meet_many needs at least one partition")
    return reduce(meet, parts)


def parse_partition(text: str, order: Sequence[str] | None = None) -> Partition:
    """Parse ``p,q|r`` syntax; whitespace is ignored.

    ``order`` supplies the scope (and canonical order); when given, the
    blocks must cover it exactly.
    """
    compact = "".join(text.split())
    if not compact:
        if order:
            raise ParseError("empty partition text")
        return Partition([], ())
    blocks = []
    offset = 0
    for chunk in compact.split("|"):
        names = chunk.split(",")
        if any(not n for n in names):
            raise ParseError("empty coordinate name in partition", position=offset)
        blocks.append(names)
        offset += len(chunk) + 1
    try:
        return Partition(blocks, order)
    except PartitionError as exc:
        raise ParseError(str(exc)) from None


def format_partition(part: Partition) -> str:
    return "|".join(",".join(b) for b in part.blocks)
