"""Explicit encodings and reductions between solution-space presentations.

* simplicial complexes realized as vertex sets of a cube (vertex i goes to
  the unit vector e_i; every face contributes the nonzero 0/1 vectors
  supported on it),
* canonical CNF of an arbitrary vertex set (one d-literal clause per
  excluded vertex),
* the classic clause-splitting reduction of CNF to 3-CNF, whose auxiliary
  variables project away,
* the clause-shape translation that rewrites all-positive/all-negative
  3-clauses into shape (3,2,2) via one fresh variable,
* variable elimination for 2-SAT / Horn / dual-Horn formulas (resolution
  on the eliminated variable) and for affine systems (Gaussian
  elimination), both of which stay inside their class.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bits import drop_bit
from .errors import ParseError, PreconditionError, ResourceLimitError
from .formula import (
    AffineSystem,
    Clause,
    Formula,
    clause_in_flavor,
)
from .solution_space import D_MAX, VertexSet


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex given by facets over vertices 1..n."""

    vertex_count: int
    facets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("vertex count must be >= 1")
        for facet in self.facets:
            if not facet:
                raise ValueError("facets must be nonempty")
            if list(facet) != sorted(set(facet)):
                raise ValueError(f"facet {facet} must be sorted and duplicate-free")
            if facet[0] < 1 or facet[-1] > self.vertex_count:
                raise ValueError(f"facet {facet} has a vertex out of range")

    @classmethod
    def of(cls, vertex_count: int, facets) -> "SimplicialComplex":
        return cls(vertex_count, tuple(tuple(sorted(set(f))) for f in facets))

    def graded_faces(self) -> list[list[tuple[int, ...]]]:
        """Downward closure of the facets, grouped by dimension, sorted."""
        levels: list[set[tuple[int, ...]]] = []
        for facet in self.facets:
            for size in range(1, len(facet) + 1):
                while len(levels) < size:
                    levels.append(set())
                levels[size - 1].update(combinations(facet, size))
        return [sorted(level) for level in levels]


def parse_scomplex(text: str) -> SimplicialComplex:
    """Parse ``scomplex <n>`` followed by one facet per line."""
    count = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "scomplex":
            if count is not None:
                raise ParseError("duplicate 'scomplex' header", lineno)
            if len(parts) != 2:
                raise ParseError("expected 'scomplex <n>'", lineno)
            try:
                count = int(parts[1])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[1]!r}", lineno) from None
            continue
        if count is None:
            raise ParseError("facet before 'scomplex' header", lineno)
        try:
            vertices = sorted(set(int(tok) for tok in parts))
        except ValueError:
            raise ParseError("facet vertices must be integers", lineno) from None
        if not vertices or vertices[0] < 1 or vertices[-1] > count:
            raise ParseError(f"facet {parts} out of range", lineno)
        facets.append(tuple(vertices))
    if count is None:
        raise ParseError("missing 'scomplex' header")
    return SimplicialComplex(count, tuple(facets))


def emit_scomplex(complex_: SimplicialComplex) -> str:
    lines = [f"scomplex {complex_.vertex_count}"]
    for facet in complex_.facets:
        lines.append(" ".join(str(v) for v in facet))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReductionResult:
    """A reduced formula plus the auxiliary dimensions to project away.

    ``variable_map[i]`` is the index of original variable i in the output
    (the reductions here keep original variables in place).
    """

    formula: Formula
    projection_dims: tuple[int, ...]
    variable_map: tuple[int, ...]


def simplicial_to_vertexset(complex_: SimplicialComplex) -> VertexSet:
    """Realize a simplicial complex as cube vertices.

    Each face f contributes the vectors v with 0 != v <= sum of e_i over
    i in f; the union over facets already includes every subface's
    contribution.
    """
    d = complex_.vertex_count
    if d > D_MAX:
        raise ResourceLimitError(f"vertex count {d} exceeds cap {D_MAX}")
    members: set[int] = set()
    for facet in complex_.facets:
        facet_mask = 0
        for v in facet:
            facet_mask |= 1 << (v - 1)
        sub = facet_mask
        while sub:
            members.add(sub)
            sub = (sub - 1) & facet_mask
    return VertexSet(d, frozenset(members))


def vertexset_to_cnf(vset: VertexSet) -> Formula:
    """Canonical CNF with solution set exactly ``vset``.

    Every excluded vertex u yields the unique d-literal clause falsified
    only by u.  The full cube yields the empty conjunction.
    """
    d = vset.dimension
    full = (1 << d) - 1
    clauses = []
    for u in range(1 << d):
        if u not in vset.members:
            clauses.append(Clause(pos_mask=full & ~u, neg_mask=u))
    return Formula(d, tuple(clauses))


def _signed(literals: tuple[tuple[int, bool], ...]) -> list[int]:
    return [(v + 1) if positive else -(v + 1) for v, positive in literals]


def to_3sat(formula: Formula) -> ReductionResult:
    """Split every clause of width >= 4 into the standard 3-CNF chain.

    A clause z1 v ... v zk becomes (z1 v z2 v y1) ^ (!y1 v z3 v y2) ^ ...
    ^ (!y_{k-3} v z_{k-1} v zk) with k-3 fresh variables, appended after
    all original variables in clause order.  Projecting the fresh
    dimensions away recovers the original solution set.
    """
    clauses = formula.clauses()
    if any(c.is_empty() for c in clauses):
        raise PreconditionError("empty clause cannot be split into 3-CNF")
    d = formula.dimension
    next_aux = d  # 0-based index of the next fresh variable
    out: list[Clause] = []
    for clause in clauses:
        zs = _signed(clause.literals())
        k = len(zs)
        if k <= 3:
            out.append(clause)
            continue
        ys = list(range(next_aux + 1, next_aux + k - 2))  # 1-based fresh literals
        next_aux += k - 3
        out.append(Clause.of(zs[0], zs[1], ys[0]))
        for j in range(k - 4):
            out.append(Clause.of(-ys[j], zs[j + 2], ys[j + 1]))
        out.append(Clause.of(-ys[-1], zs[k - 2], zs[k - 1]))
    reduced = Formula(next_aux if next_aux > d else d, tuple(out))
    return ReductionResult(
        reduced, tuple(range(d, next_aux)), tuple(range(d))
    )


def to_322sat(formula: Formula) -> ReductionResult:
    """Rewrite a 3-CNF so that every clause has at most two positive and
    at most two negative literals.

    (x v y v z) becomes (x v y v !a) ^ (a v z); all-negative clauses use
    the symmetric construction.  Other clauses already fit the shape.
    """
    clauses = formula.clauses()
    if any(c.width > 3 for c in clauses):
        raise PreconditionError("input is not in 3-CNF")
    d = formula.dimension
    next_aux = d
    out: list[Clause] = []
    for clause in clauses:
        if clause.width == 3 and clause.negative_count == 0:
            x, y, z = _signed(clause.literals())
            alpha = next_aux + 1
            next_aux += 1
            out.append(Clause.of(x, y, -alpha))
            out.append(Clause.of(alpha, z))
        elif clause.width == 3 and clause.positive_count == 0:
            x, y, z = _signed(clause.literals())
            alpha = next_aux + 1
            next_aux += 1
            out.append(Clause.of(x, y, alpha))
            out.append(Clause.of(-alpha, z))
        else:
            out.append(clause)
    reduced = Formula(next_aux if next_aux > d else d, tuple(out))
    return ReductionResult(
        reduced, tuple(range(d, next_aux)), tuple(range(d))
    )


def project_clausal(formula: Formula, variable: int, flavor: str) -> Formula:
    """Eliminate one variable from a 2-SAT / Horn / dual-Horn formula.

    Clauses avoiding the variable survive unchanged; every pair of a
    clause with the positive and a clause with the negative literal
    contributes the resolvent of their remainders.  A unit clause leaves
    an empty remainder, so its resolvents degenerate to the other side
    (and to the empty clause if both sides are units).  Tautological
    resolvents are dropped and duplicates collapsed; the result is again
    in the same clause class and its solutions are exactly the projection
    of the input's solutions.
    """
    clauses = formula.clauses()
    if not 0 <= variable < formula.dimension:
        raise PreconditionError(f"variable {variable} out of range")
    if formula.dimension == 1:
        raise PreconditionError("cannot project away the only dimension")
    for clause in clauses:
        if clause.is_tautology():
            raise PreconditionError("formula must be normalized (no tautologies)")
        if not clause_in_flavor(clause, flavor):
            raise PreconditionError(f"clause outside {flavor} class")
    bit = 1 << variable
    untouched: list[Clause] = []
    with_pos: list[Clause] = []
    with_neg: list[Clause] = []
    for clause in clauses:
        if clause.pos_mask & bit:
            with_pos.append(clause.drop_variable(variable))
        elif clause.neg_mask & bit:
            with_neg.append(clause.drop_variable(variable))
        else:
            untouched.append(clause.drop_variable(variable))
    out = untouched
    seen: set[Clause] = set()
    for alpha in with_pos:
        for beta in with_neg:
            resolvent = Clause(
                alpha.pos_mask | beta.pos_mask, alpha.neg_mask | beta.neg_mask
            )
            if resolvent.is_tautology() or resolvent in seen:
                continue
            seen.add(resolvent)
            out.append(resolvent)
    return Formula(formula.dimension - 1, tuple(out))


def eliminate_clausal(formula: Formula, dims, flavor: str) -> Formula:
    """Iterated single-variable elimination, highest dimension first."""
    for variable in sorted(set(dims), reverse=True):
        formula = project_clausal(formula, variable, flavor)
    return formula


def project_affine(system: AffineSystem, variable: int) -> AffineSystem:
    """Eliminate one variable from a GF(2) system by Gaussian elimination.

    One equation containing the variable is used to substitute it out of
    the others and is then dropped; if no equation mentions it, only the
    dimension shrinks.  Inconsistency survives as the 0=1 equation.
    """
    if not 0 <= variable < system.dimension:
        raise PreconditionError(f"variable {variable} out of range")
    if system.dimension == 1:
        raise PreconditionError("cannot project away the only dimension")
    bit = 1 << variable
    pivot = None
    rest = []
    for support, rhs in system.equations:
        if pivot is None and support & bit:
            pivot = (support, rhs)
        else:
            rest.append((support, rhs))
    equations = []
    for support, rhs in rest:
        if support & bit:
            support ^= pivot[0]
            rhs ^= pivot[1]
        equations.append((drop_bit(support, variable), rhs))
    return AffineSystem(system.dimension - 1, tuple(equations)).normalized()


def eliminate_affine(system: AffineSystem, dims) -> AffineSystem:
    for variable in sorted(set(dims), reverse=True):
        system = project_affine(system, variable)
    return system
