"""Recodings of a product space and the search for a factorable recoding.

A recoding is a bijection between the full products of two spaces of equal
size, stored as a permutation table over mixed-radix ranks.  Whether a
model set factorizes depends on the coding: the image of a set under a
recoding may factorize when the set itself does not.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass

from .core import Assignment, ModelSet, ProductSpace
from .errors import ParseError, RecodingError, ResourceLimitError, ScopeError
from .factorize import compose_join
from .logic import Formula, evaluate, format_formula, parse_formula, variables_of

MAX_POINTS = 4096


@dataclass(frozen=True)
class Recoding:
    source: ProductSpace
    target: ProductSpace
    table: tuple[int, ...]

    def __post_init__(self):
        n = self.source.size()
        if self.target.size() != n or len(self.table) != n or sorted(self.table) != list(range(n)):
            raise RecodingError("recoding table is not a permutation of the product")

    @classmethod
    def identity(cls, space: ProductSpace) -> Recoding:
        return cls(space, space, tuple(range(space.size())))

    def inverse(self) -> Recoding:
        inv = [0] * len(self.table)
        for i, j in enumerate(self.table):
            inv[j] = i
        return Recoding(self.target, self.source, tuple(inv))

    def __call__(self, sigma: Assignment) -> Assignment:
        src, dst = self.source.names, self.target.names
        if sigma.space != self.source or sigma.scope != src:
            raise ScopeError("recodings apply to total assignments over the source space")
        image = self.table[self.source.rank(src, sigma.codes)]
        return Assignment(self.target, dst, self.target.unrank(dst, image))


def recoding_from_definitions(space: ProductSpace, defs: Mapping[str, Formula]) -> Recoding:
    """Recoding sending each assignment to the truth values of the new variables' definitions."""
    if not space.is_boolean():
        raise RecodingError("definition-induced recodings need Boolean coordinates")
    for name, phi in defs.items():
        unknown = variables_of(phi) - set(space.names)
        if unknown:
            raise RecodingError(f"definition of {name!r} uses unknown variables {sorted(unknown)}")
    target = ProductSpace.boolean(defs)
    names = space.names
    seen: dict[int, tuple[int, ...]] = {}
    table = []
    for row in space.rows(names):
        env = {k: bool(v) for k, v in zip(names, row)}
        image = tuple(int(evaluate(phi, env)) for phi in defs.values())
        rank = target.rank(target.names, image)
        if rank in seen:
            pair = (Assignment(space, names, row), Assignment(space, names, seen[rank]))
            raise RecodingError(
                f"definitions collide: {pair[0]} and {pair[1]} have the same image", collision=pair
            )
        seen[rank] = row
        table.append(rank)
    if target.size() != space.size():
        raise RecodingError(
            f"{len(defs)} definitions over {len(names)} variables cannot form a bijection"
        )
    return Recoding(space, target, tuple(table))


def apply_recoding(models: ModelSet, recoding: Recoding) -> ModelSet:
    src, dst = recoding.source, recoding.target
    if models.space != src or models.scope != src.names:
        raise ScopeError("recodings apply to model sets over the full source scope")
    images = (dst.unrank(dst.names, recoding.table[src.rank(models.scope, r)]) for r in models.rows)
    return ModelSet(dst, dst.names, images)


def _prefix(space: ProductSpace, block: tuple[str, ...], count: int) -> ModelSet:
    return ModelSet(space, block, itertools.islice(space.rows(block), count))


def exists_factorable_recoding(models: ModelSet, max_points: int = MAX_POINTS) -> ModelSet | None:
    """Find an equinumerous subset of the product with a factorization into two or more blocks.

    Any equinumerous subset is the image of ``models`` under some recoding,
    so a witness exists iff some bipartition ``{A, B}`` of the coordinates
    and some ``a * b == len(models)`` fit inside the block products.  The
    canonically first witness is returned, or ``None``.
    """
    space = models.space
    names = space.names
    if models.scope != names:
        raise ScopeError("recoding search needs a model set over the full scope")
    if space.size() > max_points:
        raise ResourceLimitError(f"recoding search limited to {max_points} points, got {space.size()}")
    if len(names) < 2:
        return None
    k = len(models)
    if k == 0:
        return models
    best: ModelSet | None = None
    first, rest = names[0], names[1:]
    for r in range(len(rest)):
        for chosen in itertools.combinations(rest, r):
            side = (first, *chosen)
            other = tuple(n for n in rest if n not in chosen)
            for a in range(1, min(k, space.size(side)) + 1):
                b, rem = divmod(k, a)
                if rem or b > space.size(other):
                    continue
                cand = compose_join(
                    space, {side: _prefix(space, side, a), other: _prefix(space, other, b)}
                )
                if best is None or cand.rows < best.rows:
                    best = cand
    return best


def parse_recoding(text: str) -> dict[str, Formula]:
    """Parse ``new_var := formula`` lines; ``#`` starts a comment line."""
    defs: dict[str, Formula] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, body = line.partition(":=")
        name = name.strip()
        if not sep or not name.replace("_", "a").replace("'", "a").isalnum():
            raise ParseError("expected 'name := formula'", line=lineno)
        if name in defs:
            raise ParseError(f"variable {name!r} defined twice", line=lineno)
        try:
            defs[name] = parse_formula(body)
        except ParseError as exc:
            raise ParseError(exc.message, position=exc.position, line=lineno) from None
    return defs


def format_recoding(defs: Mapping[str, Formula]) -> str:
    return "".join(f"{name} := {format_formula(phi)}\n" for name, phi in defs.items())
