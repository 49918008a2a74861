import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from csptopo import Formula, Relation, SimplicialComplex, parse_dimacs


FIG1_DIMACS = "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n"


@pytest.fixture
def fig1() -> Formula:
    """(x1 v x2 v x3) ^ (!x1 v !x2 v !x3): solution complex is a hexagon."""
    return parse_dimacs(FIG1_DIMACS)


@pytest.fixture
def nae() -> Relation:
    return Relation.of(3, ("001", "010", "011", "100", "101", "110"), name="NAE")


@pytest.fixture
def xor2() -> Relation:
    return Relation.of(2, ("01", "10"), name="XOR2")


@pytest.fixture
def implication() -> Relation:
    return Relation.of(2, ("00", "01", "11"), name="IMPL")


@pytest.fixture
def r_zero() -> Relation:
    """0-valid relation failing every other condition."""
    return Relation.of(3, ("000", "110", "101"), name="R0")


@pytest.fixture
def triangle_boundary() -> SimplicialComplex:
    return SimplicialComplex.of(3, [(1, 2), (2, 3), (1, 3)])


@pytest.fixture
def two_vertices() -> SimplicialComplex:
    return SimplicialComplex.of(2, [(1,), (2,)])


@pytest.fixture
def projective_plane() -> SimplicialComplex:
    """Minimal 6-vertex triangulation of the projective plane."""
    return SimplicialComplex.of(
        6,
        [
            (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 6),
            (2, 3, 4), (2, 3, 6), (2, 4, 5), (3, 5, 6), (4, 5, 6),
        ],
    )
