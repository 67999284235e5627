"""Exact linear algebra over the coefficient field k itself.

Matrices are lists of rows of field elements. Over Z/p (p < 2**31) row
reduction runs through the compiled kernel; over Q it is plain Fraction
elimination.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .field import Field, PrimeField


def rref(field: Field, rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if not rows or ncols == 0:
        return [], []
    if isinstance(field, PrimeField) and field.p < kernels.MAX_FAST_PRIME:
        p = field.p
        a = np.array([[int(x) for x in r] for r in rows], dtype=np.int64)
        a %= p
        a = np.ascontiguousarray(a)
        pivots = list(kernels.rref_modp(a, p))
        out = [[field(int(x)) for x in a[i]] for i in range(len(pivots))]
        return out, pivots
    return _rref_generic(field, rows, ncols)


def _rref_generic(field: Field, rows, ncols):
    A = [list(r) for r in rows]
    n = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.one / A[r][c]
        pr = [x * inv for x in A[r]]
        A[r] = pr
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(n):
            if i != r:
                f = A[i][c]
                if f:
                    row = A[i]
                    for j in nz:
                        row[j] = row[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(field: Field, rows, ncols: int) -> int:
    return len(rref(field, rows, ncols)[1])


def nullspace(field: Field, rows, ncols: int) -> list[list]:
    """Basis of ``{x : rows @ x = 0}``."""
    R, pivots = rref(field, rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def eliminate(field: Field, rows, ncols: int, keep: Sequence[int]) -> list[list]:
    """Constraints on the ``keep`` coordinates of ``{x : rows @ x = 0}`` after
    existentially quantifying every other coordinate."""
    keepset = set(keep)
    drop = [j for j in range(ncols) if j not in keepset]
    order = drop + list(keep)
    permuted = [[r[j] for j in order] for r in rows]
    R, pivots = rref(field, permuted, ncols)
    nd = len(drop)
    return [r[nd:] for r, pc in zip(R, pivots) if pc >= nd]


def solve(field: Field, rows, rhs: Sequence, ncols: int) -> list | None:
    """A solution of ``rows @ x = rhs`` with free variables set to 0, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(field, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


class Subspace:
    """A subspace of k^n held by its canonical (RREF) basis."""

    __slots__ = ("field", "n", "basis")

    def __init__(self, field: Field, n: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.n = n
        vecs = [list(v) for v in vectors]
        self.basis = [tuple(r) for r in rref(field, vecs, n)[0]] if vecs else []

    @classmethod
    def from_constraints(cls, field: Field, rows, n: int) -> Subspace:
        return cls(field, n, nullspace(field, rows, n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Sequence) -> bool:
        return rank(self.field, self.basis + [list(v)], self.n) == self.dim

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains_vector(v) for v in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.basis)))

    def elements(self):
        """Every vector of the subspace (finite fields only)."""
        F = self.field
        if not isinstance(F, PrimeField):
            raise ValueError("enumeration needs a finite field")
        for coeffs in itertools.product(F.elements(), repeat=self.dim):
            v = [F.zero] * self.n
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = [x + c * y for x, y in zip(v, b)]
            yield tuple(v)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.n}, field={self.field!r})"
