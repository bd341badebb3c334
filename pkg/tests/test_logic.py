import itertools

import pytest
from hypothesis import given, settings, strategies as st

from generators import formulas
from modelsplit.core import ModelSet, ProductSpace
from modelsplit.errors import ParseError, ResourceLimitError, ScopeError
from modelsplit.factorize import compose_join, oracle_finest
from modelsplit.logic import (
    BOTTOM,
    TOP,
    And,
    Iff,
    Implies,
    Not,
    Or,
    Theory,
    Var,
    conjoin,
    evaluate,
    format_formula,
    format_theory,
    models_of,
    parse_formula,
    parse_theory,
    split_theory,
    variables_of,
)
from modelsplit.partition import parse_partition

p, q, r, s = (Var(n) for n in "pqrs")


class TestParser:
    def test_precedence(self):
        assert parse_formula("p & (q | ~r)") == And(p, Or(q, Not(r)))
        assert parse_formula("p <-> q") == Iff(p, q)
        assert parse_formula("~p & q | r -> s <-> p") == Iff(Implies(Or(And(Not(p), q), r), s), p)

    def test_associativity(self):
        assert parse_formula("p -> q -> r") == Implies(p, Implies(q, r))
        assert parse_formula("p & q & r") == And(And(p, q), r)
        assert parse_formula("p | q | r") == Or(Or(p, q), r)

    def test_constants_and_identifiers(self):
        assert parse_formula("true | false") == Or(TOP, BOTTOM)
        assert parse_formula("q' & x_1") == And(Var("q'"), Var("x_1"))

    @pytest.mark.parametrize(
        "text, offset",
        [("p & & q", 4), ("(p & q", 0), ("p & q)", 5), ("p $ q", 2), ("p ->", 4), ("", 0), ("p q", 2)],
    )
    def test_errors_carry_offsets(self, text, offset):
        with pytest.raises(ParseError) as err:
            parse_formula(text)
        assert err.value.position == offset

    @settings(max_examples=300)
    @given(formulas())
    def test_format_round_trip(self, phi):
        assert parse_formula(format_formula(phi)) == phi


def test_variables_of():
    assert variables_of(And(p, q)) == {"p", "q"}
    assert variables_of(TOP) == set()
    assert variables_of(Or(p, Implies(p, p))) == {"p"}


class TestModels:
    def test_examples(self):
        space = ProductSpace.boolean("pq")
        assert models_of(Theory(("p", "q"), (And(p, q),))) == ModelSet.from_symbols(space, "pq", ["11"])
        assert models_of(Theory(("p", "q"), (Iff(p, q),))) == ModelSet.from_symbols(space, "pq", ["00", "11"])
        assert models_of(Theory(("p", "q"))) == ModelSet.full(space)

    def test_undeclared_variable(self):
        with pytest.raises(ScopeError):
            Theory(("p",), (And(p, q),))

    def test_resource_bound(self):
        theory = Theory(tuple(f"x{i}" for i in range(21)))
        with pytest.raises(ResourceLimitError):
            models_of(theory)
        assert len(models_of(Theory(("a", "b", "c")), max_variables=3)) == 8

    def test_no_variables(self):
        assert len(models_of(Theory((), (TOP,)))) == 1
        assert len(models_of(Theory((), (BOTTOM,)))) == 0

    @settings(max_examples=300)
    @given(formulas())
    def test_against_truth_table(self, phi):
        names = ("p", "q", "r", "s")
        got = {tuple(int(v) for v in row) for row in models_of(Theory(names, (phi,))).symbol_rows()}
        want = {
            bits for bits in itertools.product((0, 1), repeat=4) if evaluate(phi, dict(zip(names, map(bool, bits))))
        }
        assert got == want


class TestSplit:
    def test_biconditional(self):
        theory = parse_theory("vars p q r\np <-> q\n")
        models = models_of(theory)
        result = split_theory(theory)
        assert result.partition == oracle_finest(models) == parse_partition("p,q|r")
        space = theory.space
        assert result.components[("p", "q")] == ModelSet.from_symbols(space, "pq", ["00", "11"])
        assert result.components[("r",)] == ModelSet.full(space, "r")
        assert result.component_formulas[("r",)] == TOP

    def test_disjunction_and_fact(self):
        theory = parse_theory("vars p q r\np | q\nr\n")
        result = split_theory(theory)
        assert result.partition == oracle_finest(models_of(theory)) == parse_partition("p,q|r")
        space = theory.space
        assert result.components[("p", "q")] == ModelSet.from_symbols(space, "pq", ["01", "10", "11"])
        assert result.components[("r",)] == ModelSet.from_symbols(space, "r", ["1"])
        assert result.component_formulas[("r",)] == r

    def test_empty_theory_splits_completely(self):
        assert split_theory(Theory(("p", "q"))).partition == parse_partition("p|q")

    def test_inconsistent_theory(self):
        result = split_theory(parse_theory("vars p q\np & ~p\n"))
        assert result.partition == parse_partition("p|q")
        assert set(result.component_formulas.values()) == {BOTTOM}

    @settings(max_examples=150)
    @given(st.lists(formulas(), max_size=4))
    def test_round_trip(self, fs):
        theory = Theory(("p", "q", "r", "s", "t"), tuple(fs))
        models = models_of(theory)
        result = split_theory(theory)
        assert compose_join(theory.space, result.components, theory.variables) == models
        assert models_of(Theory(theory.variables, tuple(result.component_formulas.values()))) == models
        for block, component in result.components.items():
            assert models_of(Theory(block, (result.component_formulas[block],))).symbol_rows() == component.symbol_rows()
        assert ("t",) in result.partition.blocks


class TestTheoryFile:
    def test_implicit_variables_in_first_mention_order(self):
        theory = parse_theory("# demo\nr -> p\n\nq\n")
        assert theory.variables == ("r", "p", "q")

    def test_round_trip(self):
        theory = parse_theory("vars a b c\na & b -> c\n")
        assert parse_theory(format_theory(theory)) == theory

    def test_error_has_line(self):
        with pytest.raises(ParseError) as err:
            parse_theory("vars p q\np\np & & q\n")
        assert err.value.line == 3 and err.value.position == 4

    def test_undeclared(self):
        with pytest.raises(ParseError):
            parse_theory("vars p\nq\n")


def test_conjoin_empty_is_top():
    assert conjoin([]) == TOP
