"""Random instance generators shared by the property and acceptance tests."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from modelsplit.core import ModelSet, ProductSpace
from modelsplit.factorize import compose_join
from modelsplit.logic import And, Const, Formula, Iff, Implies, Not, Or, Var
from modelsplit.partition import Partition

NAMES = ("p", "q", "r", "s", "t", "u")


def random_space(rng: random.Random, max_coords: int = 6, max_domain: int = 3, min_coords: int = 1,
                 boolean: bool = False) -> ProductSpace:
    n = rng.randint(min_coords, max_coords)
    coords = []
    for name in NAMES[:n]:
        size = 2 if boolean else rng.randint(1, max_domain)
        coords.append((name, tuple(str(i) for i in range(size))))
    return ProductSpace(tuple(coords))


def random_subset(rng: random.Random, space: ProductSpace, scope, nonempty: bool = True) -> ModelSet:
    scope = space.order(scope)
    points = list(space.rows(scope))
    density = rng.choice((0.2, 0.5, 0.8, 1.0))
    rows = [r for r in points if rng.random() < density]
    if nonempty and not rows:
        rows = [rng.choice(points)]
    return ModelSet(space, scope, rows)


def random_partition(rng: random.Random, scope) -> Partition:
    scope = tuple(scope)
    labels = [rng.randrange(len(scope)) for _ in scope]
    blocks: dict[int, list[str]] = {}
    for k, lab in zip(scope, labels):
        blocks.setdefault(lab, []).append(k)
    return Partition(blocks.values(), scope)


def random_coarsening(rng: random.Random, part: Partition) -> Partition:
    labels = [rng.randrange(len(part)) for _ in part.blocks]
    merged: dict[int, list[str]] = {}
    for b, lab in zip(part.blocks, labels):
        merged.setdefault(lab, []).extend(b)
    return Partition(merged.values(), part.scope)


def product_over(rng: random.Random, space: ProductSpace, part: Partition) -> ModelSet:
    """A model set factorized by ``part`` by construction."""
    return compose_join(space, {b: random_subset(rng, space, b) for b in part.blocks}, part.scope)


def random_model_set(rng: random.Random, space: ProductSpace) -> ModelSet:
    """Half the time structured along a random partition, otherwise unstructured."""
    scope = space.names
    if rng.random() < 0.5:
        return product_over(rng, space, random_partition(rng, scope))
    return random_subset(rng, space, scope)


def random_formula(rng: random.Random, names, depth: int = 3) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.08:
            return Const(rng.random() < 0.5)
        return Var(rng.choice(names))
    kind = rng.randrange(6)
    if kind == 0:
        return Not(random_formula(rng, names, depth - 1))
    op = (And, Or, Implies, Iff, And)[kind - 1]
    return op(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))


def all_subsets(space: ProductSpace):
    points = list(space.rows(space.names))
    for r in range(len(points) + 1):
        for combo in itertools.combinations(points, r):
            yield ModelSet(space, space.names, combo)


# -- hypothesis strategies -------------------------------------------------------


@st.composite
def spaces(draw, max_coords: int = 4, max_domain: int = 3, min_coords: int = 1):
    n = draw(st.integers(min_coords, max_coords))
    sizes = draw(st.lists(st.integers(1, max_domain), min_size=n, max_size=n))
    return ProductSpace(tuple((NAMES[i], tuple(str(v) for v in range(s))) for i, s in enumerate(sizes)))


@st.composite
def model_sets(draw, max_coords: int = 4, max_domain: int = 3, nonempty: bool = False):
    space = draw(spaces(max_coords, max_domain))
    points = list(space.rows(space.names))
    rows = draw(st.sets(st.sampled_from(points), min_size=1 if nonempty else 0))
    return ModelSet(space, space.names, rows)


@st.composite
def partitions_of(draw, scope):
    labels = draw(st.lists(st.integers(0, max(0, len(scope) - 1)), min_size=len(scope), max_size=len(scope)))
    blocks: dict[int, list[str]] = {}
    for k, lab in zip(scope, labels):
        blocks.setdefault(lab, []).append(k)
    return Partition(blocks.values(), scope)


def formulas(names=("p", "q", "r", "s")):
    atoms = st.sampled_from(names).map(Var) | st.booleans().map(Const)
    return st.recursive(
        atoms,
        lambda sub: st.one_of(
            sub.map(Not),
            *(st.tuples(sub, sub).map(lambda t, op=op: op(*t)) for op in (And, Or, Implies, Iff)),
        ),
        max_leaves=8,
    )
