"""Logical relations as truth tables and their Schaefer-style classification.

A relation of arity k is stored as the set of its member tuples, each tuple
encoded as a k-bit integer (see :mod:`csptopo.bits`).  The six tractability
conditions are decided by closure tests on the truth table:

* 0-valid / 1-valid: membership of the constant tuples,
* Horn / dual-Horn: closure under coordinatewise AND / OR of pairs,
* bijunctive: closure under coordinatewise majority of triples,
* affine: closure under coordinatewise XOR of triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bits import bits_to_index, index_to_bits
from .errors import ParseError, PreconditionError, ResourceLimitError

ARITY_MAX = 20

#: Condition names in classification order.
CONDITIONS = ("zero_valid", "one_valid", "horn", "dual_horn", "bijunctive", "affine")


@dataclass(frozen=True)
class Relation:
    """A subset of {0,1}^k, k >= 1."""

    arity: int
    tuples: frozenset[int]
    name: str | None = None

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("relation arity must be >= 1")
        if self.arity > ARITY_MAX:
            raise ResourceLimitError(
                f"relation arity {self.arity} exceeds cap {ARITY_MAX}"
            )
        size = 1 << self.arity
        for t in self.tuples:
            if not 0 <= t < size:
                raise ValueError(f"tuple {t} out of range for arity {self.arity}")

    @classmethod
    def of(cls, arity: int, bitstrings, name: str | None = None) -> "Relation":
        """Build a relation from coordinate strings like ("001", "010")."""
        bitstrings = list(bitstrings)
        for s in bitstrings:
            if len(s) != arity:
                raise ValueError(f"tuple {s!r} does not have arity {arity}")
        return cls(arity, frozenset(bits_to_index(s) for s in bitstrings), name)

    def __contains__(self, t: int) -> bool:
        return t in self.tuples

    def __len__(self) -> int:
        return len(self.tuples)

    def tuple_strings(self) -> list[str]:
        return sorted(index_to_bits(t, self.arity) for t in self.tuples)

    def complement(self) -> "Relation":
        """Flip every bit of every tuple."""
        full = (1 << self.arity) - 1
        return Relation(self.arity, frozenset(full ^ t for t in self.tuples), self.name)

    def permuted(self, perm) -> "Relation":
        """Apply a coordinate permutation (new position i takes old perm[i])."""
        out = set()
        for t in self.tuples:
            v = 0
            for i, p in enumerate(perm):
                if (t >> p) & 1:
                    v |= 1 << i
            out.add(v)
        return Relation(self.arity, frozenset(out), self.name)


@dataclass(frozen=True)
class PropertyFlags:
    zero_valid: bool
    one_valid: bool
    horn: bool
    dual_horn: bool
    bijunctive: bool
    affine: bool

    def get(self, condition: str) -> bool:
        return getattr(self, condition)

    def as_dict(self) -> dict[str, bool]:
        return {c: getattr(self, c) for c in CONDITIONS}


@dataclass(frozen=True)
class SchaeferVerdict:
    tractable: bool
    witness_condition: str | None
    per_relation_flags: tuple[PropertyFlags, ...]
    with_constants: bool


def _majority(a: int, b: int, c: int) -> int:
    return (a & b) | (a & c) | (b & c)


def relation_properties(rel: Relation) -> PropertyFlags:
    """Decide all six conditions for a single relation.

    Closure tests only need pairwise-distinct pairs/triples: repeating an
    argument makes AND/OR/majority/XOR collapse to a member already in the
    relation.  The empty relation is vacuously closed under all four
    operations but is neither 0- nor 1-valid.
    """
    tuples = sorted(rel.tuples)
    full = (1 << rel.arity) - 1
    members = rel.tuples

    zero_valid = 0 in members
    one_valid = full in members

    horn = all(a & b in members for a, b in combinations(tuples, 2))
    dual_horn = all(a | b in members for a, b in combinations(tuples, 2))

    bijunctive = True
    affine = True
    for a, b, c in combinations(tuples, 3):
        if bijunctive and _majority(a, b, c) not in members:
            bijunctive = False
        if affine and a ^ b ^ c not in members:
            affine = False
        if not (bijunctive or affine):
            break

    return PropertyFlags(zero_valid, one_valid, horn, dual_horn, bijunctive, affine)


def schaefer_classify(
    relations, with_constants: bool = False
) -> SchaeferVerdict:
    """Classify a relation set: tractable iff one condition holds for all.

    With constants allowed, only the third through sixth conditions count.
    The witness is the first condition (in classification order) shared by
    every relation.
    """
    relations = list(relations)
    if not relations:
        raise PreconditionError("relation set must be nonempty")
    flags = tuple(relation_properties(r) for r in relations)
    usable = CONDITIONS[2:] if with_constants else CONDITIONS
    witness = None
    for cond in usable:
        if all(f.get(cond) for f in flags):
            witness = cond
            break
    return SchaeferVerdict(witness is not None, witness, flags, with_constants)


def parse_relations(text: str) -> list[Relation]:
    """Parse a relation file: blocks of ``rel <name> <arity>`` plus tuples.

    Tuples are whitespace-separated k-bit strings on the following lines;
    a block ends at a blank line, the next ``rel`` header, or EOF.  ``#``
    starts a comment.
    """
    relations: list[Relation] = []
    name = None
    arity = 0
    tuples: set[int] = set()
    header_line = 0
    in_block = False

    def finish():
        nonlocal in_block
        if in_block:
            relations.append(Relation(arity, frozenset(tuples), name))
            in_block = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            finish()
            continue
        parts = line.split()
        if parts[0] == "rel":
            finish()
            if len(parts) != 3:
                raise ParseError("expected 'rel <name> <arity>'", lineno)
            name = parts[1]
            try:
                arity = int(parts[2])
            except ValueError:
                raise ParseError(f"bad arity {parts[2]!r}", lineno) from None
            if arity < 1:
                raise ParseError(f"arity must be >= 1, got {arity}", lineno)
            if arity > ARITY_MAX:
                raise ResourceLimitError(
                    f"line {lineno}: arity {arity} exceeds cap {ARITY_MAX}"
                )
            tuples = set()
            header_line = lineno
            in_block = True
        else:
            if not in_block:
                raise ParseError("tuple data before any 'rel' header", lineno)
            for tok in parts:
                if len(tok) != arity:
                    raise ParseError(
                        f"tuple {tok!r} has {len(tok)} bits, arity is {arity}"
                        f" (relation at line {header_line})",
                        lineno,
                    )
                tuples.add(bits_to_index(tok, lineno))
    finish()
    return relations


def parse_relation(text: str) -> Relation:
    """Parse a relation file expected to contain exactly one block."""
    relations = parse_relations(text)
    if len(relations) != 1:
        raise ParseError(f"expected exactly one relation, found {len(relations)}")
    return relations[0]
