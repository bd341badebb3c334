"""Propositional formulas, model enumeration and theory splitting.

Grammar, loosest binding first::

    iff     ::= implies ( '<->' implies )*      left-assoc
    implies ::= or ( '->' implies )?            right-assoc
    or      ::= and ( '|' and )*                left-assoc
    and     ::= unary ( '&' unary )*            left-assoc
    unary   ::= '~' unary | atom | 'true' | 'false' | '(' iff ')'
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .core import BOOLEAN, ModelSet, ProductSpace, project_model_set
from .errors import ParseError, ResourceLimitError, ScopeError
from .factorize import finest_factorization
from .partition import Partition

MAX_VARIABLES = 20


# -- syntax ----------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    sub: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff:
    left: Formula
    right: Formula


Formula = Var | Const | Not | And | Or | Implies | Iff

TOP = Const(True)
BOTTOM = Const(False)

_TOKEN = re.compile(r"\s*(?:(<->|->|[~&|()])|([A-Za-z_][A-Za-z0-9_']*))")
_KEYWORDS = {"true": TOP, "false": BOTTOM}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        node = self.iff()
        if self.peek() == ")":
            raise ParseError("unbalanced ')'", position=self.pos())
        if self.peek():
            raise ParseError(f"unexpected token {self.peek()!r}", position=self.pos())
        return node

    def iff(self) -> Formula:
        node = self.implies()
        while self.peek() == "<->":
            self.take()
            node = Iff(node, self.implies())
        return node

    def implies(self) -> Formula:
        node = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(node, self.implies())
        return node

    def disj(self) -> Formula:
        node = self.conj()
        while self.peek() == "|":
            self.take()
            node = Or(node, self.conj())
        return node

    def conj(self) -> Formula:
        node = self.unary()
        while self.peek() == "&":
            self.take()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        tok, pos = self.tokens[self.i]
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            node = self.iff()
            if self.peek() != ")":
                raise ParseError("unbalanced '(' (missing ')')", position=pos)
            self.take()
            return node
        if tok == "":
            raise ParseError("dangling operator: formula ends early", position=pos)
        if tok in ("&", "|", "->", "<->", ")"):
            raise ParseError(f"dangling operator: unexpected {tok!r}", position=pos)
        self.take()
        if tok in _KEYWORDS:
            return _KEYWORDS[tok]
        return Var(tok)


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def format_formula(phi: Formula) -> str:
    """Render with the fewest parentheses that parse back to the same tree."""

    def go(node: Formula, ctx: int) -> str:
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Const):
            return "true" if node.value else "false"
        if isinstance(node, Not):
            return "~" + go(node.sub, 5)
        prec = _PREC[type(node)]
        if isinstance(node, Implies):
            text = f"{go(node.left, prec + 1)} -> {go(node.right, prec)}"
        else:
            text = f"{go(node.left, prec)} {_SYMBOL[type(node)]} {go(node.right, prec + 1)}"
        return f"({text})" if prec < ctx else text

    return go(phi, 0)


def variables_of(phi: Formula) -> set[str]:
    return set(_atoms_in_order(phi))


def _atoms_in_order(phi: Formula) -> list[str]:
    seen: dict[str, None] = {}
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            seen.setdefault(node.name)
        elif isinstance(node, Not):
            stack.append(node.sub)
        elif not isinstance(node, Const):
            stack.extend((node.right, node.left))
    return list(seen)


def evaluate(phi: Formula, env: Mapping[str, bool]) -> bool:
    """Truth value of ``phi`` under a single assignment."""
    if isinstance(phi, Var):
        return bool(env[phi.name])
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Not):
        return not evaluate(phi.sub, env)
    a, b = evaluate(phi.left, env), evaluate(phi.right, env)
    if isinstance(phi, And):
        return a and b
    if isinstance(phi, Or):
        return a or b
    if isinstance(phi, Implies):
        return (not a) or b
    return a == b


def _evaluate_columns(phi: Formula, columns: Mapping[str, np.ndarray], n: int) -> np.ndarray:
    if isinstance(phi, Var):
        return columns[phi.name]
    if isinstance(phi, Const):
        return np.full(n, phi.value)
    if isinstance(phi, Not):
        return ~_evaluate_columns(phi.sub, columns, n)
    a = _evaluate_columns(phi.left, columns, n)
    b = _evaluate_columns(phi.right, columns, n)
    if isinstance(phi, And):
        return a & b
    if isinstance(phi, Or):
        return a | b
    if isinstance(phi, Implies):
        return ~a | b
    return a == b


def conjoin(formulas: Iterable[Formula]) -> Formula:
    formulas = list(formulas)
    return reduce(And, formulas) if formulas else TOP


def disjoin(formulas: Iterable[Formula]) -> Formula:
    formulas = list(formulas)
    return reduce(Or, formulas) if formulas else BOTTOM


# -- theories --------------------------------------------------------------


@dataclass(frozen=True)
class Theory:
    """Formulas over an explicitly declared, ordered variable list."""

    variables: tuple[str, ...]
    formulas: tuple[Formula, ...] = ()
    space: ProductSpace = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "formulas", tuple(self.formulas))
        declared = set(self.variables)
        for phi in self.formulas:
            missing = variables_of(phi) - declared
            if missing:
                raise ScopeError(f"{format_formula(phi)!r} uses undeclared variables {sorted(missing)}")
        object.__setattr__(self, "space", ProductSpace.boolean(self.variables))

    @classmethod
    def from_formulas(cls, formulas: Sequence[Formula], variables: Sequence[str] | None = None) -> Theory:
        """Declare ``variables``, or the mentioned atoms in first-mention order."""
        if variables is None:
            order: dict[str, None] = {}
            for phi in formulas:
                for v in _atoms_in_order(phi):
                    order.setdefault(v)
            variables = list(order)
        return cls(tuple(variables), tuple(formulas))


def _satisfying_rows(formulas: Sequence[Formula], space: ProductSpace, scope: tuple[str, ...], limit: int) -> ModelSet:
    if len(scope) > limit:
        raise ResourceLimitError(f"model enumeration limited to {limit} variables, got {len(scope)}")
    if not space.is_boolean(scope):
        raise ScopeError("formulas can only be evaluated over Boolean coordinates")
    n = len(scope)
    size = 1 << n
    index = np.arange(size, dtype=np.int64)
    # first coordinate is the most significant bit, matching canonical order
    columns = {k: ((index >> (n - 1 - i)) & 1).astype(bool) for i, k in enumerate(scope)}
    mask = np.ones(size, dtype=bool)
    for phi in formulas:
        missing = variables_of(phi) - set(scope)
        if missing:
            raise ScopeError(f"formula uses variables {sorted(missing)} outside {scope}")
        mask &= _evaluate_columns(phi, columns, size)
    hits = np.flatnonzero(mask)
    if n == 0:
        return ModelSet(space, scope, [()] if hits.size else [])
    bits = ((hits[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.int8)
    return ModelSet(space, scope, map(tuple, bits.tolist()))


def models_of(theory: Theory, max_variables: int = MAX_VARIABLES) -> ModelSet:
    """All assignments to the declared variables satisfying every formula."""
    return _satisfying_rows(theory.formulas, theory.space, theory.variables, max_variables)


def formula_models(
    phi: Formula, space: ProductSpace, scope: Iterable[str] | None = None, max_variables: int = MAX_VARIABLES
) -> ModelSet:
    """Models of one formula over ``scope`` (default: the whole space)."""
    scope = space.order(space.names if scope is None else scope)
    return _satisfying_rows([phi], space, scope, max_variables)


# -- splitting -------------------------------------------------------------


def literal(name: str, value: str) -> Formula:
    return Var(name) if value == "1" else Not(Var(name))


def dnf_of(models: ModelSet) -> Formula:
    """Full disjunctive normal form: one conjunction of literals per member."""
    if not models:
        return BOTTOM
    if models.is_full():
        return TOP
    return disjoin(
        conjoin(literal(k, v) for k, v in zip(models.scope, row)) for row in models.symbol_rows()
    )


@dataclass(frozen=True)
class SplitResult:
    partition: Partition
    components: dict[tuple[str, ...], ModelSet]
    component_formulas: dict[tuple[str, ...], Formula]


def split_theory(theory: Theory, max_variables: int = MAX_VARIABLES) -> SplitResult:
    """Split a theory into variable-disjoint components along its finest factorization."""
    models = models_of(theory, max_variables)
    if not theory.variables:
        raise ValueError("cannot split a theory without variables")
    part = finest_factorization(models)
    components = {b: project_model_set(models, b) for b in part.blocks}
    return SplitResult(part, components, {b: dnf_of(m) for b, m in components.items()})


# -- theory file -------------------------------------------------------------


def parse_theory(text: str) -> Theory:
    """Parse a theory file: optional ``vars ...`` directive, then one formula per line."""
    variables: list[str] | None = None
    formulas: list[Formula] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = line.split()
        if words[0] == "vars" and not formulas and variables is None:
            variables = words[1:]
            if len(set(variables)) != len(variables):
                raise ParseError("duplicate variable in vars directive", line=lineno)
            continue
        try:
            formulas.append(parse_formula(line))
        except ParseError as exc:
            raise ParseError(exc.message, position=exc.position, line=lineno) from None
    try:
        return Theory.from_formulas(formulas, variables)
    except ScopeError as exc:
        raise ParseError(str(exc)) from None


def format_theory(theory: Theory) -> str:
    lines = ["vars " + " ".join(theory.variables)] if theory.variables else []
    lines.extend(format_formula(phi) for phi in theory.formulas)
    return "\n".join(lines) + "\n"


__all__ = [
    "And", "BOOLEAN", "BOTTOM", "Const", "Formula", "Iff", "Implies", "Not", "Or", "SplitResult",
    "TOP", "Theory", "Var", "conjoin", "disjoin", "dnf_of", "evaluate", "format_formula",
    "format_theory", "formula_models", "models_of", "parse_formula", "parse_theory", "split_theory",
    "variables_of",
]
