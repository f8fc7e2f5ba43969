"""Dense exact linear algebra over finite fields.

Matrices store raw element codes (see galois) in row-major nested lists.
Everything here is deterministic: pivots are chosen leftmost column
first, topmost row first, and particular solutions zero all free
variables.  All operations are pure; matrices are never mutated after
construction.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, FieldMismatch
from .galois import FieldElement, FieldSpec


class MatrixF:
    """r x c matrix over a FieldSpec, cells stored as element codes."""

    __slots__ = ("spec", "rows", "cols", "data")

    def __init__(self, spec: FieldSpec, data: Sequence[Sequence]):
        rows = []
        width = None
        for raw in data:
            row = []
            for cell in raw:
                if isinstance(cell, FieldElement):
                    if cell.spec != spec:
                        raise FieldMismatch("matrix cell from a different field")
                    row.append(cell.value)
                else:
                    v = int(cell)
                    if not 0 <= v < spec.q:
                        raise ValueError(f"cell code {v} outside field of order {spec.q}")
                    row.append(v)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise DimensionMismatch("ragged rows")
            rows.append(row)
        self.spec = spec
        self.rows = len(rows)
        self.cols = width if width is not None else 0
        self.data = rows

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "MatrixF":
        return cls(spec, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, spec: FieldSpec, r: int, c: int) -> "MatrixF":
        return cls(spec, [[0] * c for _ in range(r)])

    def copy_data(self) -> list[list[int]]:
        return [row[:] for row in self.data]

    def at(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.spec, self.data[i][j])

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.data]

    def matvec(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector length {len(v)} != cols {self.cols}")
        f = self.spec
        out = []
        for row in self.data:
            acc = 0
            for a, b in zip(row, v):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return out

    def to_bytes(self) -> bytes:
        """Row-major cell codes; valid only for field orders <= 256."""
        if self.spec.q > 256:
            raise ValueError("byte packing requires field order <= 256")
        out = bytearray()
        for row in self.data:
            out.extend(row)
        return bytes(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixF)
            and other.spec == self.spec
            and other.data == self.data
        )

    def __repr__(self) -> str:
        return f"MatrixF({self.rows}x{self.cols} over GF({self.spec.p}^{self.spec.k}))"


class RrefResult(NamedTuple):
    matrix: MatrixF
    pivots: tuple[int, ...]
    rank: int


def _eliminate(spec: FieldSpec, a: list[list[int]], aug: list[list[int]] | None) -> list[int]:
    """In-place reduced row echelon form of `a`, mirroring row ops on `aug`.

    Returns the pivot column list.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots: list[int] = []
    piv_row = 0
    for col in range(ncols):
        if piv_row == nrows:
            break
        hit = None
        for i in range(piv_row, nrows):
            if a[i][col]:
                hit = i
                break
        if hit is None:
            continue
        if hit != piv_row:
            a[piv_row], a[hit] = a[hit], a[piv_row]
            if aug is not None:
                aug[piv_row], aug[hit] = aug[hit], aug[piv_row]
        lead = a[piv_row][col]
        if lead != 1:
            scale = spec.inv(lead)
            a[piv_row] = [spec.mul(scale, v) for v in a[piv_row]]
            if aug is not None:
                aug[piv_row] = [spec.mul(scale, v) for v in aug[piv_row]]
        for i in range(nrows):
            if i != piv_row and a[i][col]:
                factor = a[i][col]
                src = a[piv_row]
                dst = a[i]
                for j in range(col, ncols):
                    if src[j]:
                        dst[j] = spec.sub(dst[j], spec.mul(factor, src[j]))
                if aug is not None:
                    srcb, dstb = aug[piv_row], aug[i]
                    for j in range(len(srcb)):
                        if srcb[j]:
                            dstb[j] = spec.sub(dstb[j], spec.mul(factor, srcb[j]))
        pivots.append(col)
        piv_row += 1
    return pivots


def rref(A: MatrixF) -> RrefResult:
    """Reduced row echelon form with pivot columns and rank."""
    work = A.copy_data()
    pivots = _eliminate(A.spec, work, None)
    return RrefResult(MatrixF(A.spec, work), tuple(pivots), len(pivots))


def rank(A: MatrixF) -> int:
    return rref(A).rank


def solve_many(A: MatrixF, targets: Sequence[Sequence[int]]) -> list[list[int] | None]:
    """Particular solutions of A x = b for several right-hand sides b.

    One elimination serves all targets.  Free variables are set to zero;
    inconsistent targets yield None.
    """
    for b in targets:
        if len(b) != A.rows:
            raise DimensionMismatch(f"rhs length {len(b)} != rows {A.rows}")
    work = A.copy_data()
    aug = [[int(b[i]) for b in targets] for i in range(A.rows)]
    pivots = _eliminate(A.spec, work, aug)
    nrank = len(pivots)
    out: list[list[int] | None] = []
    for idx in range(len(targets)):
        if any(aug[i][idx] for i in range(nrank, A.rows)):
            out.append(None)
            continue
        x = [0] * A.cols
        for i, col in enumerate(pivots):
            x[col] = aug[i][idx]
        out.append(x)
    return out


def solve_particular(A: MatrixF, b: Sequence[int]) -> list[int] | None:
    """One particular solution of A x = b, or None if inconsistent."""
    return solve_many(A, [list(b)])[0]


def kernel_basis(A: MatrixF) -> list[list[int]]:
    """Basis of the right kernel, one vector per free column in increasing order."""
    reduced, pivots, nrank = rref(A)
    f = A.spec
    pivot_set = set(pivots)
    basis = []
    for free in range(A.cols):
        if free in pivot_set:
            continue
        v = [0] * A.cols
        v[free] = 1
        for i, col in enumerate(pivots):
            v[col] = f.neg(reduced.data[i][free])
        basis.append(v)
    return basis


def restrict_columns(G: MatrixF, labels: Sequence[int], keep: Iterable[int]) -> MatrixF:
    """Columns of G whose label is in `keep`, original order preserved."""
    wanted = set(keep)
    idx = [j for j in range(G.cols) if labels[j] in wanted]
    return MatrixF(G.spec, [[row[j] for j in idx] for row in G.data])


def column_indices(labels: Sequence[int], keep: Iterable[int]) -> list[int]:
    """Coordinate indices whose label is in `keep`, in increasing order."""
    wanted = set(keep)
    return [j for j in range(len(labels)) if labels[j] in wanted]
