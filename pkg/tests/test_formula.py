import pytest

from csptopo import (
    AffineSystem,
    Clause,
    Formula,
    ParseError,
    PreconditionError,
    RelationConstraint,
    Var,
    clause_shape,
    emit_affine,
    emit_csp,
    emit_dimacs,
    formula_in_flavor,
    parse_csp,
    parse_dimacs,
    remove_tautologies,
)
from oracles import naive_solutions


def test_clause_of_and_literals():
    clause = Clause.of(2, -1, 3)
    assert clause.signed_literals() == (-1, 2, 3)
    assert clause.width == 3
    assert clause.positive_count == 2
    assert clause.negative_count == 1


def test_clause_tautology_and_empty():
    assert Clause.of(1, -1).is_tautology()
    assert Clause().is_empty()
    assert not Clause.of(1).is_empty()


def test_parse_dimacs_fig1(fig1):
    assert fig1.dimension == 3
    assert len(fig1.constraints) == 2
    assert fig1.constraints[0] == Clause.of(1, 2, 3)
    assert fig1.constraints[1] == Clause.of(-1, -2, -3)


def test_parse_dimacs_trivial_and_tautology():
    empty = parse_dimacs("p cnf 1 0\n")
    assert empty.dimension == 1 and not empty.constraints

    taut = parse_dimacs("p cnf 2 1\n1 -1 0\n")
    assert taut.constraints[0].is_tautology()
    assert naive_solutions(taut) == {0, 1, 2, 3}


def test_parse_dimacs_accepts_empty_clause():
    formula = parse_dimacs("p cnf 2 1\n0\n")
    assert formula.constraints[0].is_empty()
    assert naive_solutions(formula) == set()


@pytest.mark.parametrize(
    "text",
    [
        "1 2 0\n",                 # clause before header
        "p cnf 2 2\n1 0\n",        # count mismatch
        "p cnf 2 1\n3 0\n",        # variable out of range
        "p cnf 0 0\n",             # zero dimension
        "p cnf 2 1\n1 2\n",        # unterminated clause
    ],
)
def test_parse_dimacs_errors(text):
    with pytest.raises(ParseError):
        parse_dimacs(text)


def test_dimacs_round_trip(fig1):
    assert parse_dimacs(emit_dimacs(fig1)) == fig1
    with_empty = parse_dimacs("p cnf 2 2\n0\n-2 1 0\n")
    assert parse_dimacs(emit_dimacs(with_empty)) == with_empty


def test_clause_shape_examples(fig1):
    assert clause_shape(fig1) == (3, 3, 3)
    mixed = Formula(4, (Clause.of(1, 2, -4), Clause.of(4, 3)))
    assert clause_shape(mixed) == (3, 2, 1)
    assert clause_shape(Formula(1)) == (0, 0, 0)


def test_clause_shape_requires_cnf(nae):
    formula = Formula(
        3, (RelationConstraint(0, (Var(0), Var(1), Var(2))),), (nae,)
    )
    with pytest.raises(PreconditionError):
        clause_shape(formula)


def test_remove_tautologies():
    formula = parse_dimacs("p cnf 2 2\n1 -1 0\n1 2 0\n")
    cleaned = remove_tautologies(formula)
    assert len(cleaned.constraints) == 1
    assert cleaned.constraints[0] == Clause.of(1, 2)


def test_parse_csp_matches_dimacs_solutions(nae, fig1):
    csp = parse_csp("dim 3\nNAE v1 v2 v3\n", [nae])
    assert naive_solutions(csp) == naive_solutions(fig1)


def test_parse_csp_repeated_variable(nae):
    formula = parse_csp("dim 2\nNAE v1 v2 v2\n", [nae])
    assert naive_solutions(formula) == {1, 2}  # exactly x1 != x2


def test_parse_csp_constant_argument(nae):
    formula = parse_csp("dim 2\nNAE v1 v2 T\n", [nae])
    assert naive_solutions(formula) == {0, 1, 2}


def test_parse_csp_constants_can_be_disabled(nae):
    with pytest.raises(ParseError):
        parse_csp("dim 2\nNAE v1 v2 T\n", [nae], allow_constants=False)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("dim 2\nUNKNOWN v1 v2\n", "unknown relation"),
        ("dim 2\nNAE v1 v2\n", "expects 3"),
        ("dim 2\nNAE v1 v2 v9\n", "out of range"),
        ("NAE v1 v2 v1\n", "before"),
    ],
)
def test_parse_csp_errors(nae, text, fragment):
    with pytest.raises(ParseError) as err:
        parse_csp(text, [nae])
    assert fragment in str(err.value)


def test_emit_csp_round_trip(nae):
    formula = parse_csp("dim 3\nNAE v1 v2 T\nNAE v3 v3 F\n", [nae])
    again = parse_csp(emit_csp(formula), [nae])
    assert naive_solutions(again) == naive_solutions(formula)


def test_flavor_checks():
    assert formula_in_flavor(Formula(3, (Clause.of(1, -2),)), "two_sat")
    assert not formula_in_flavor(Formula(3, (Clause.of(1, 2, 3),)), "two_sat")
    assert formula_in_flavor(Formula(3, (Clause.of(-1, -2, 3),)), "horn")
    assert not formula_in_flavor(Formula(3, (Clause.of(1, 2),)), "horn")
    assert formula_in_flavor(Formula(3, (Clause.of(1, 2, -3),)), "dual_horn")


def test_affine_system_validation_and_normalization():
    system = AffineSystem(3, ((0b011, 1), (0b011, 1), (0, 0)))
    assert system.normalized().equations == ((0b011, 1),)
    inconsistent = AffineSystem(2, ((0, 1),))
    assert inconsistent.normalized().equations == ((0, 1),)
    with pytest.raises(ValueError):
        AffineSystem(2, ((0b100, 0),))
    assert "x1^x2=1" in emit_affine(system)
