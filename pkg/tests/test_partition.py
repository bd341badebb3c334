import pytest
from hypothesis import given, strategies as st

from generators import partitions_of
from modelsplit.errors import ParseError, PartitionError, ScopeError
from modelsplit.partition import (
    Partition,
    format_partition,
    is_refinement,
    meet,
    meet_many,
    parse_partition,
    restrict_partition,
)

SCOPE = ("p", "q", "r")
P = lambda text: parse_partition(text, SCOPE)  # noqa: E731


def test_canonical_form():
    part = Partition([["r"], ["q", "p"]], SCOPE)
    assert part.blocks == (("p", "q"), ("r",))
    assert format_partition(part) == "p,q|r"
    assert parse_partition(" r | q , p ", SCOPE) == part


def test_invalid_blocks():
    with pytest.raises(PartitionError):
        Partition([["p", "q"], ["q"]], SCOPE)
    with pytest.raises(PartitionError):
        Partition([["p"], []], ["p"])
    with pytest.raises(PartitionError):
        Partition([["p"]], SCOPE)
    with pytest.raises(ParseError):
        parse_partition("p,|q", ("p", "q"))


@pytest.mark.parametrize(
    "part, sub, expected",
    [("p,q|r", {"q", "r"}, "q|r"), ("p,q|r", set(SCOPE), "p,q|r"), ("p,q|r", {"p", "q"}, "p,q")],
)
def test_restrict(part, sub, expected):
    assert restrict_partition(P(part), sub) == parse_partition(expected)


def test_restrict_outside_scope():
    with pytest.raises(ScopeError):
        restrict_partition(P("p,q|r"), {"x"})


@pytest.mark.parametrize(
    "finer, coarser, expected",
    [("p|q|r", "p,q|r", True), ("p,q|r", "p|q,r", False), ("p,q|r", "p,q|r", True)],
)
def test_is_refinement(finer, coarser, expected):
    assert is_refinement(P(finer), P(coarser)) is expected


def test_scope_mismatch():
    with pytest.raises(ScopeError):
        is_refinement(P("p|q|r"), parse_partition("p|q"))
    with pytest.raises(ScopeError):
        meet(P("p|q|r"), parse_partition("p|q"))


def test_meet_examples():
    assert meet(P("p,q|r"), P("p|q,r")) == P("p|q|r")
    a = P("p,q|r")
    assert meet(a, P("p,q,r")) == a
    assert meet(a, a) == a


def test_meet_many_examples():
    assert meet_many([P("p|q,r"), P("p,q|r"), P("p,r|q")]) == P("p|q|r")
    assert meet_many([P("p,q|r")]) == P("p,q|r")
    assert meet_many([P("p,q,r"), P("p,q,r")]) == P("p,q,r")
    with pytest.raises(ValueError):
        meet_many([])


SCOPE5 = ("p", "q", "r", "s", "t")


@given(partitions_of(SCOPE5), partitions_of(SCOPE5), partitions_of(SCOPE5))
def test_meet_lattice_laws(a, b, c):
    assert meet(a, b) == meet(b, a)
    assert meet(meet(a, b), c) == meet(a, meet(b, c))
    assert meet(a, a) == a
    assert is_refinement(meet(a, b), a) and is_refinement(meet(a, b), b)
    if is_refinement(c, a) and is_refinement(c, b):
        assert is_refinement(c, meet(a, b))
    assert meet_many([a, b, c]) == meet_many([c, a, b])


@given(partitions_of(SCOPE5), partitions_of(SCOPE5), st.sets(st.sampled_from(SCOPE5)))
def test_restriction_commutes_with_meet(a, b, sub):
    assert restrict_partition(meet(a, b), sub) == meet(restrict_partition(a, sub), restrict_partition(b, sub))


@given(partitions_of(SCOPE5))
def test_universality_against_singletons_and_top(a):
    assert is_refinement(Partition.singletons(SCOPE5), a)
    assert is_refinement(a, Partition.top(SCOPE5))
