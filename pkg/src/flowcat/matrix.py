"""Dense matrices over k[s, s^-1]: the arrows of the prop Mat k[s, s^-1].

An ``n x m`` matrix is an arrow ``m -> n``. Empty shapes (0 x n, n x 0)
are legal and distinct.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import QQ, Field
from .laurent import LaurentPoly, format_poly, parse_poly


class ShapeError(ValueError):
    pass


class PolyMatrix:
    __slots__ = ("rows", "cols", "field", "_e", "_hash")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence] | None = None,
                 field: Field = QQ):
        self.rows = rows
        self.cols = cols
        self.field = field
        if entries is None:
            z = LaurentPoly.zero(field)
            self._e = tuple(tuple(z for _ in range(cols)) for _ in range(rows))
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ShapeError(f"entries do not match shape {rows}x{cols}")
            self._e = tuple(tuple(_lift(x, field) for x in r) for r in entries)
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None,
                  field: Field = QQ) -> PolyMatrix:
        """Build from nested lists; entries may be polys, field scalars, ints or strings."""
        n = len(rows)
        if cols is None:
            if n == 0:
                raise ShapeError("column count required for a matrix with no rows")
            cols = len(rows[0])
        return cls(n, cols, rows, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> PolyMatrix:
        one, zero = LaurentPoly.one(field), LaurentPoly.zero(field)
        return cls._raw(n, n, tuple(tuple(one if i == j else zero for j in range(n))
                                    for i in range(n)), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> PolyMatrix:
        return cls(rows, cols, None, field)

    @classmethod
    def permutation(cls, perm: Sequence[int], field: Field = QQ) -> PolyMatrix:
        """Matrix sending basis vector j to basis vector perm[j]."""
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError(f"{perm} is not a permutation")
        one, zero = LaurentPoly.one(field), LaurentPoly.zero(field)
        rows = [[zero] * n for _ in range(n)]
        for j, i in enumerate(perm):
            rows[i][j] = one
        return cls._raw(n, n, tuple(tuple(r) for r in rows), field)

    @classmethod
    def diagonal(cls, diag: Sequence, rows: int | None = None, cols: int | None = None,
                 field: Field = QQ) -> PolyMatrix:
        k = len(diag)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        z = LaurentPoly.zero(field)
        e = [[z] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            e[i][i] = _lift(d, field)
        return cls._raw(rows, cols, tuple(tuple(r) for r in e), field)

    @classmethod
    def _raw(cls, rows: int, cols: int, e: tuple, field: Field) -> PolyMatrix:
        m = cls.__new__(cls)
        m.rows, m.cols, m.field, m._e, m._hash = rows, cols, field, e, None
        return m

    @classmethod
    def from_lists(cls, rows: int, cols: int, e: list[list[LaurentPoly]], field: Field) -> PolyMatrix:
        return cls._raw(rows, cols, tuple(tuple(r) for r in e), field)

    # -- access ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self._e[i]

    def to_lists(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self._e]

    def submatrix(self, rows: Iterable[int] | slice | None = None,
                  cols: Iterable[int] | slice | None = None) -> PolyMatrix:
        ri = _indices(rows, self.rows)
        ci = _indices(cols, self.cols)
        e = tuple(tuple(self._e[i][j] for j in ci) for i in ri)
        return PolyMatrix._raw(len(ri), len(ci), e, self.field)

    def transpose(self) -> PolyMatrix:
        e = tuple(tuple(self._e[i][j] for i in range(self.rows)) for j in range(self.cols))
        return PolyMatrix._raw(self.cols, self.rows, e, self.field)

    T = property(transpose)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._e for x in r)

    def is_identity(self) -> bool:
        return self == PolyMatrix.identity(self.rows, self.field) if self.rows == self.cols else False

    # -- algebra --------------------------------------------------------

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        z = LaurentPoly.zero(self.field)
        oc = list(zip(*other._e)) if other.rows else [() for _ in range(other.cols)]
        e = []
        for r in self._e:
            row = []
            for c in oc:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            e.append(tuple(row))
        return PolyMatrix._raw(self.rows, other.cols, tuple(e), self.field)

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        self._same_shape(other)
        e = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self._e, other._e))
        return PolyMatrix._raw(self.rows, self.cols, e, self.field)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        self._same_shape(other)
        e = tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self._e, other._e))
        return PolyMatrix._raw(self.rows, self.cols, e, self.field)

    def __neg__(self) -> PolyMatrix:
        return PolyMatrix._raw(self.rows, self.cols,
                               tuple(tuple(-a for a in r) for r in self._e), self.field)

    def scale(self, c) -> PolyMatrix:
        return PolyMatrix._raw(self.rows, self.cols,
                               tuple(tuple(a * c for a in r) for r in self._e), self.field)

    def _same_shape(self, other: PolyMatrix) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._e))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(", ".join(format_poly(x) for x in r) for r in self._e)
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"

    __str__ = __repr__

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[format_poly(x) for x in r] for r in self._e]}

    @classmethod
    def from_json(cls, data: dict, field: Field = QQ) -> PolyMatrix:
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = [[parse_poly(x, field) if isinstance(x, str) else x for x in r]
                   for r in data["entries"]]
        return cls(rows, cols, entries, field)


def _lift(x, field: Field) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, str):
        return parse_poly(x, field)
    return LaurentPoly.const(x, field)


def _indices(sel, n: int) -> list[int]:
    if sel is None:
        return list(range(n))
    if isinstance(sel, slice):
        return list(range(n))[sel]
    return list(sel)


def hstack(*ms: PolyMatrix) -> PolyMatrix:
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ShapeError("hstack needs equal row counts")
    e = tuple(tuple(x for m in ms for x in m._e[i]) for i in range(rows))
    return PolyMatrix._raw(rows, sum(m.cols for m in ms), e, ms[0].field)


def vstack(*ms: PolyMatrix) -> PolyMatrix:
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ShapeError("vstack needs equal column counts")
    e = tuple(r for m in ms for r in m._e)
    return PolyMatrix._raw(sum(m.rows for m in ms), cols, e, ms[0].field)


def direct_sum(*ms: PolyMatrix) -> PolyMatrix:
    """Block-diagonal matrix: the monoidal product of Mat k[s, s^-1]."""
    field = ms[0].field
    z = LaurentPoly.zero(field)
    total_cols = sum(m.cols for m in ms)
    e = []
    offset = 0
    for m in ms:
        for r in m._e:
            e.append((z,) * offset + r + (z,) * (total_cols - offset - m.cols))
        offset += m.cols
    return PolyMatrix._raw(sum(m.rows for m in ms), total_cols, tuple(e), field)
