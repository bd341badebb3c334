"""Product spaces, assignments and model sets.

A :class:`ProductSpace` fixes an ordered list of coordinates, each with a
finite ordered value domain.  Assignments and model sets always carry a
*scope* (a subset of the coordinates, kept in space order) and store values
as domain indices, so tuple comparison of the stored rows is exactly the
canonical lexicographic order (coordinate order, then domain order).
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .errors import EmptyModelSetError, NoCompletionError, ParseError, ScopeError

BOOLEAN = ("0", "1")

Row = tuple[int, ...]


@dataclass(frozen=True)
class ProductSpace:
    """Ordered coordinates with nonempty finite value domains."""

    coordinates: tuple[tuple[str, tuple[str, ...]], ...]
    _position: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        coords = tuple((str(name), tuple(str(v) for v in dom)) for name, dom in self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        position: dict[str, int] = {}
        for i, (name, dom) in enumerate(coords):
            if name in position:
                raise ValueError(f"duplicate coordinate {name!r}")
            if not dom:
                raise ValueError(f"coordinate {name!r} has an empty domain")
            if len(set(dom)) != len(dom):
                raise ValueError(f"coordinate {name!r} has repeated domain values")
            position[name] = i
        object.__setattr__(self, "_position", position)

    def __hash__(self):
        return hash(self.coordinates)

    @classmethod
    def boolean(cls, names: Iterable[str]) -> ProductSpace:
        return cls(tuple((n, BOOLEAN) for n in names))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.coordinates)

    def __contains__(self, name: object) -> bool:
        return name in self._position

    def domain(self, name: str) -> tuple[str, ...]:
        return self.coordinates[self.position(name)][1]

    def position(self, name: str) -> int:
        try:
            return self._position[name]
        except KeyError:
            raise ScopeError(f"unknown coordinate {name!r}") from None

    def order(self, names: Iterable[str]) -> tuple[str, ...]:
        """Return ``names`` deduplicated and sorted in space order."""
        return tuple(sorted(set(names), key=self.position))

    def radices(self, scope: Iterable[str]) -> tuple[int, ...]:
        return tuple(len(self.domain(k)) for k in scope)

    def size(self, scope: Iterable[str] | None = None) -> int:
        n = 1
        for r in self.radices(self.names if scope is None else scope):
            n *= r
        return n

    def is_boolean(self, scope: Iterable[str] | None = None) -> bool:
        return all(self.domain(k) == BOOLEAN for k in (self.names if scope is None else scope))

    def rank(self, scope: tuple[str, ...], row: Row) -> int:
        """Mixed-radix index of ``row`` over ``scope``; first coordinate most significant."""
        n = 0
        for radix, digit in zip(self.radices(scope), row):
            n = n * radix + digit
        return n

    def unrank(self, scope: tuple[str, ...], n: int) -> Row:
        digits = []
        for radix in reversed(self.radices(scope)):
            n, d = divmod(n, radix)
            digits.append(d)
        return tuple(reversed(digits))

    def rows(self, scope: tuple[str, ...]) -> Iterator[Row]:
        """All rows over ``scope`` in canonical order."""
        return itertools.product(*(range(r) for r in self.radices(scope)))


def _check_scope(space: ProductSpace, names: Iterable[str]) -> tuple[str, ...]:
    return space.order(names)


@dataclass(frozen=True, repr=False)
class Assignment:
    """A total map from ``scope`` to domain values, stored as domain indices."""

    space: ProductSpace
    scope: tuple[str, ...]
    codes: Row

    @classmethod
    def from_mapping(cls, space: ProductSpace, values: Mapping[str, object]) -> Assignment:
        scope = _check_scope(space, values)
        codes = []
        for k in scope:
            v = str(values[k])
            try:
                codes.append(space.domain(k).index(v))
            except ValueError:
                raise ScopeError(f"value {v!r} not in the domain of {k!r}") from None
        return cls(space, scope, tuple(codes))

    def __getitem__(self, name: str) -> str:
        try:
            i = self.scope.index(name)
        except ValueError:
            raise ScopeError(f"{name!r} is outside the assignment scope") from None
        return self.space.domain(name)[self.codes[i]]

    @property
    def values(self) -> dict[str, str]:
        return {k: self.space.domain(k)[c] for k, c in zip(self.scope, self.codes)}

    def symbols(self) -> tuple[str, ...]:
        return tuple(self.space.domain(k)[c] for k, c in zip(self.scope, self.codes))

    def __lt__(self, other: Assignment) -> bool:
        return self.codes < other.codes

    def __str__(self) -> str:
        return "{" + ",".join(f"{k}={v}" for k, v in self.values.items()) + "}"

    def __repr__(self) -> str:
        return f"Assignment({self})"


class ModelSet:
    """A finite set of assignments sharing one scope.

    Members are kept sorted in canonical order; membership is a hash lookup
    on the stored index rows.
    """

    __slots__ = ("space", "scope", "rows", "_rowset")

    def __init__(self, space: ProductSpace, scope: Iterable[str], rows: Iterable[Row] = ()):
        self.space = space
        self.scope = _check_scope(space, scope)
        rowset = frozenset(tuple(r) for r in rows)
        radices = space.radices(self.scope)
        for r in rowset:
            if len(r) != len(radices) or any(not 0 <= d < n for d, n in zip(r, radices)):
                raise ScopeError(f"row {r} does not fit scope {self.scope}")
        self._rowset = rowset
        self.rows: tuple[Row, ...] = tuple(sorted(rowset))

    @classmethod
    def full(cls, space: ProductSpace, scope: Iterable[str] | None = None) -> ModelSet:
        scope = space.order(space.names if scope is None else scope)
        return cls(space, scope, space.rows(scope))

    @classmethod
    def from_symbols(
        cls, space: ProductSpace, scope: Iterable[str], symbol_rows: Iterable[Iterable[str]]
    ) -> ModelSet:
        """Build from value-symbol rows given in the order of ``scope`` as passed."""
        scope = tuple(scope)
        ordered = space.order(scope)
        perm = [scope.index(k) for k in ordered]
        rows = []
        for srow in symbol_rows:
            srow = [str(v) for v in srow]
            if len(srow) != len(scope):
                raise ScopeError(f"row {srow} has {len(srow)} values, expected {len(scope)}")
            row = []
            for k, i in zip(ordered, perm):
                try:
                    row.append(space.domain(k).index(srow[i]))
                except ValueError:
                    raise ScopeError(f"value {srow[i]!r} not in the domain of {k!r}") from None
            rows.append(tuple(row))
        return cls(space, ordered, rows)

    @classmethod
    def from_assignments(
        cls, space: ProductSpace, scope: Iterable[str], members: Iterable[Assignment]
    ) -> ModelSet:
        scope = space.order(scope)
        rows = []
        for a in members:
            if a.scope != scope:
                raise ScopeError(f"assignment scope {a.scope} differs from {scope}")
            rows.append(a.codes)
        return cls(space, scope, rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[Assignment]:
        for r in self.rows:
            yield Assignment(self.space, self.scope, r)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Assignment):
            return item.scope == self.scope and item.codes in self._rowset
        return item in self._rowset

    def __bool__(self) -> bool:
        return bool(self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModelSet):
            return NotImplemented
        return self.space == other.space and self.scope == other.scope and self._rowset == other._rowset

    def __hash__(self) -> int:
        return hash((self.scope, self._rowset))

    def _same_scope(self, other: ModelSet) -> None:
        if self.space != other.space or self.scope != other.scope:
            raise ScopeError(f"model sets over different scopes: {self.scope} vs {other.scope}")

    def __and__(self, other: ModelSet) -> ModelSet:
        self._same_scope(other)
        return ModelSet(self.space, self.scope, self._rowset & other._rowset)

    def __or__(self, other: ModelSet) -> ModelSet:
        self._same_scope(other)
        return ModelSet(self.space, self.scope, self._rowset | other._rowset)

    def __sub__(self, other: ModelSet) -> ModelSet:
        self._same_scope(other)
        return ModelSet(self.space, self.scope, self._rowset - other._rowset)

    def __le__(self, other: ModelSet) -> bool:
        self._same_scope(other)
        return self._rowset <= other._rowset

    def symbol_rows(self) -> list[tuple[str, ...]]:
        doms = [self.space.domain(k) for k in self.scope]
        return [tuple(d[c] for d, c in zip(doms, r)) for r in self.rows]

    def is_full(self) -> bool:
        return len(self.rows) == self.space.size(self.scope)

    def __repr__(self) -> str:
        body = ", ".join("".join(r) for r in self.symbol_rows())
        return f"ModelSet({' '.join(self.scope)}: {{{body}}})"


def _positions(scope: tuple[str, ...], sub: Iterable[str]) -> list[int]:
    return [scope.index(k) for k in sub]


def _subscope(space: ProductSpace, scope: tuple[str, ...], sub: Iterable[str]) -> tuple[str, ...]:
    sub = set(sub)
    outside = sub - set(scope)
    if outside:
        raise ScopeError(f"coordinates {sorted(outside)} are outside scope {scope}")
    return space.order(sub)


def restrict_assignment(sigma: Assignment, coords: Iterable[str]) -> Assignment:
    """Restrict ``sigma`` to ``coords``, which must lie inside its scope."""
    sub = _subscope(sigma.space, sigma.scope, coords)
    idx = _positions(sigma.scope, sub)
    return Assignment(sigma.space, sub, tuple(sigma.codes[i] for i in idx))


def project_model_set(models: ModelSet, coords: Iterable[str]) -> ModelSet:
    sub = _subscope(models.space, models.scope, coords)
    if sub == models.scope:
        return models
    idx = _positions(models.scope, sub)
    return ModelSet(models.space, sub, {tuple(r[i] for i in idx) for r in models.rows})


def complete_assignment(sigma: Assignment, models: ModelSet) -> Assignment:
    """Return the first member of ``models`` (canonical order) extending ``sigma``."""
    if sigma.space != models.space:
        raise ScopeError("assignment and model set live in different spaces")
    if not models:
        raise EmptyModelSetError("cannot complete an assignment in an empty model set")
    sub = _subscope(models.space, models.scope, sigma.scope)
    idx = _positions(models.scope, sub)
    for r in models.rows:
        if all(r[i] == c for i, c in zip(idx, sigma.codes)):
            return Assignment(models.space, models.scope, r)
    raise NoCompletionError(f"{sigma} has no extension in the model set")


def coordinate_values(models: ModelSet, coord: str) -> set[str]:
    if coord not in models.scope:
        raise ScopeError(f"{coord!r} is outside scope {models.scope}")
    i = models.scope.index(coord)
    dom = models.space.domain(coord)
    return {dom[r[i]] for r in models.rows}


# -- text format ---------------------------------------------------------


def _domain_for(values: set[str]) -> tuple[str, ...]:
    if values <= set(BOOLEAN):
        return BOOLEAN
    if all(v.lstrip("-").isdigit() for v in values):
        return tuple(sorted(values, key=int))
    return tuple(sorted(values))


def parse_model_set(text: str, space: ProductSpace | None = None) -> ModelSet:
    """Parse the line-oriented model-set format.

    The first content line names the coordinates; every further nonblank
    line lists one member's values in that order.  Lines starting with
    ``#`` are comments.  Without an explicit ``space``, each coordinate is
    Boolean if only ``0``/``1`` occur, otherwise its domain is the sorted
    set of observed values.
    """
    header: list[str] | None = None
    body: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(set(fields)) != len(fields):
                raise ParseError("duplicate coordinate in header", line=lineno)
            header = fields
            continue
        if len(fields) != len(header):
            raise ParseError(f"expected {len(header)} values, found {len(fields)}", line=lineno)
        body.append((lineno, fields))
    if header is None:
        raise ParseError("missing coordinate header line")
    if space is None:
        observed = [set() for _ in header]
        for _, fields in body:
            for s, v in zip(observed, fields):
                s.add(v)
        space = ProductSpace(tuple((k, _domain_for(s)) for k, s in zip(header, observed)))
    rows = []
    for lineno, fields in body:
        try:
            rows.append(ModelSet.from_symbols(space, header, [fields]).rows[0])
        except ScopeError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return ModelSet(space, header, rows)


def format_model_set(models: ModelSet) -> str:
    lines = [" ".join(models.scope)]
    lines.extend(" ".join(r) for r in models.symbol_rows())
    return "\n".join(lines) + "\n"
