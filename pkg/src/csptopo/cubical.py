"""Induced cubical complexes of vertex sets in the unit cube.

A face of [0,1]^d is a pair (free_mask, base): free coordinates vary over
the face, fixed coordinates take the values recorded in ``base`` (which is
zero on free coordinates).  The complex induced by a vertex set V consists
of every face all of whose vertices lie in V; it is graded by dimension
and closed under subfaces.

Faces are found by breadth-first growth: a p-face exists exactly when its
two opposite (p-1)-faces obtained by fixing the highest free coordinate
both exist, so each grade is built by merging parallel faces of the grade
below.  This touches only faces that are actually present instead of the
3^d candidates of the ambient cube.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .bits import index_to_bits, iter_bits
from .errors import PreconditionError, ResourceLimitError
from .solution_space import VertexSet

FACE_MAX = 5_000_000


class Face(NamedTuple):
    free_mask: int
    base: int

    @property
    def dim(self) -> int:
        return self.free_mask.bit_count()


@dataclass(frozen=True)
class CubicalComplex:
    """Graded face lists; ``generator`` is the inducing vertex set, or None
    for complexes assembled as unions of induced complexes."""

    dimension: int
    faces: tuple[tuple[Face, ...], ...]
    generator: VertexSet | None = None

    @property
    def top_dimension(self) -> int:
        return len(self.faces) - 1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.faces)

    def face_count(self) -> int:
        return sum(len(level) for level in self.faces)

    def vertices(self) -> tuple[int, ...]:
        if not self.faces:
            return ()
        return tuple(f.base for f in self.faces[0])

    def face_keys(self) -> list[int]:
        """All faces packed as (free_mask << dimension) | base."""
        d = self.dimension
        return [(f.free_mask << d) | f.base for level in self.faces for f in level]


def _grow_level(keys: np.ndarray, d: int) -> np.ndarray:
    """Merge parallel faces of one grade into the faces of the next."""
    if len(keys) < 2:
        return np.empty(0, dtype=np.int64)
    mask = keys >> d
    base = keys & ((1 << d) - 1)
    pieces = []
    for j in range(d):
        bit = 1 << j
        # j must dominate all free coordinates and be fixed to 0 here
        sel = (mask >> j == 0) & ((base >> j) & 1 == 0)
        if not sel.any():
            continue
        partner = keys[sel] + bit
        pos = np.searchsorted(keys, partner)
        pos[pos >= len(keys)] = len(keys) - 1
        found = keys[pos] == partner
        if not found.any():
            continue
        merged = (((mask[sel][found] | bit) << d) | base[sel][found]).astype(np.int64)
        pieces.append(merged)
    if not pieces:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(pieces))


def induce_complex(vset: VertexSet, face_max: int = FACE_MAX) -> CubicalComplex:
    """Build the induced cubical complex of a vertex set."""
    d = vset.dimension
    if not vset.members:
        return CubicalComplex(d, (), vset)
    level = np.array(vset.sorted_members(), dtype=np.int64)
    levels = [level]
    total = len(level)
    if total > face_max:
        raise ResourceLimitError(f"face budget {face_max} exceeded")
    while True:
        nxt = _grow_level(levels[-1], d)
        if len(nxt) == 0:
            break
        total += len(nxt)
        if total > face_max:
            raise ResourceLimitError(f"face budget {face_max} exceeded")
        levels.append(nxt)
    graded = []
    low_mask = (1 << d) - 1
    for arr in levels:
        graded.append(
            tuple(Face(k >> d, k & low_mask) for k in arr.tolist())
        )
    return CubicalComplex(d, tuple(graded), vset)


def union_complex(complexes) -> CubicalComplex:
    """Union of cubical complexes over the same ambient cube.

    The union of complexes is again a complex but is generally not induced
    by any vertex set, so the result carries no generator.
    """
    complexes = list(complexes)
    if not complexes:
        raise PreconditionError("union of zero complexes")
    d = complexes[0].dimension
    if any(k.dimension != d for k in complexes):
        raise PreconditionError("dimension mismatch in union")
    top = max((k.top_dimension for k in complexes), default=-1)
    graded = []
    for p in range(top + 1):
        merged = set()
        for k in complexes:
            if p <= k.top_dimension:
                merged.update(k.faces[p])
        graded.append(tuple(sorted(merged)))
    while graded and not graded[-1]:
        graded.pop()
    return CubicalComplex(d, tuple(graded), None)


def f_vector(complex_: CubicalComplex) -> tuple[int, ...]:
    return complex_.f_vector()


@dataclass
class IntegerMatrix:
    """Dense integer matrix with exact (arbitrary-precision) entries."""

    rows: int
    cols: int
    data: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.data:
            self.data = [[0] * self.cols for _ in range(self.rows)]
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("inconsistent matrix dimensions")

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "IntegerMatrix":
        return cls(len(rows), len(rows[0]) if rows else 0, [list(r) for r in rows])

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = IntegerMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            out_row = out.data[i]
            for k, a in enumerate(row):
                if a:
                    other_row = other.data[k]
                    for j in range(other.cols):
                        out_row[j] += a * other_row[j]
        return out

    def is_zero(self) -> bool:
        return all(all(v == 0 for v in row) for row in self.data)


def boundary_columns(
    complex_: CubicalComplex, p: int
) -> list[list[tuple[int, int]]]:
    """Sparse boundary operator: one (row, sign) list per p-face.

    For a face with free coordinates j_1 < ... < j_p the boundary is the
    alternating sum over t of (face with j_t fixed to 1) minus (face with
    j_t fixed to 0), with sign (-1)^(t-1).
    """
    if not 1 <= p <= complex_.top_dimension:
        raise PreconditionError(f"boundary degree {p} out of range")
    row_of = {f: i for i, f in enumerate(complex_.faces[p - 1])}
    columns = []
    for face in complex_.faces[p]:
        col = []
        for t, j in enumerate(iter_bits(face.free_mask), start=1):
            sign = 1 if t % 2 == 1 else -1
            bit = 1 << j
            sub_mask = face.free_mask ^ bit
            col.append((row_of[Face(sub_mask, face.base | bit)], sign))
            col.append((row_of[Face(sub_mask, face.base)], -sign))
        columns.append(col)
    return columns


def boundary_matrix(complex_: CubicalComplex, p: int) -> IntegerMatrix:
    """Dense boundary matrix from p-faces (columns) to (p-1)-faces (rows)."""
    columns = boundary_columns(complex_, p)
    out = IntegerMatrix(len(complex_.faces[p - 1]), len(columns))
    for j, col in enumerate(columns):
        for i, sign in col:
            out.data[i][j] += sign
    return out


def skeleton_components(complex_: CubicalComplex) -> tuple[int, dict[int, int]]:
    """Connected components of the 1-skeleton.

    Returns (count, labels) where labels maps each vertex index to a
    component id; ids are assigned in order of smallest member vertex.
    """
    if not complex_.faces:
        return 0, {}
    parent: dict[int, int] = {v: v for v in complex_.vertices()}

    def find(v: int) -> int:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    if complex_.top_dimension >= 1:
        for edge in complex_.faces[1]:
            a = edge.base
            b = edge.base | edge.free_mask
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    labels: dict[int, int] = {}
    next_id = 0
    for v in sorted(parent):
        root = find(v)
        if root not in labels:
            labels[root] = next_id
            next_id += 1
    return next_id, {v: labels[find(v)] for v in parent}


def emit_complex(complex_: CubicalComplex) -> str:
    """Dump format used by golden tests: header plus one face per line."""
    d = complex_.dimension
    lines = [f"cube {d}"]
    for level in complex_.faces:
        for face in level:
            lines.append(
                f"f {index_to_bits(face.free_mask, d)} {index_to_bits(face.base, d)}"
            )
    return "\n".join(lines) + "\n"
