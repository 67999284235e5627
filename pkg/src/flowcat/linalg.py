"""Normal forms and module-theoretic operations on PolyMatrix.

Smith form ``M = V D U`` (with certified inverses), row-style Hermite form,
the epi / split-mono factorization, kernels, free cokernels and exact
linear solves, all over k[s, s^-1].
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import (
    LaurentPoly,
    canonical_associate,
    canonical_residue,
    divrem,
    exact_div,
)
from .matrix import PolyMatrix, ShapeError


@dataclass(frozen=True)
class SmithDecomposition:
    V: PolyMatrix
    D: PolyMatrix
    U: PolyMatrix
    V_inv: PolyMatrix
    U_inv: PolyMatrix

    @property
    def diagonal(self) -> list[LaurentPoly]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if not d.is_zero())


@dataclass(frozen=True)
class HermiteForm:
    """``T @ M`` equals ``H`` padded below with zero rows; T is square unimodular."""

    H: PolyMatrix
    T: PolyMatrix
    T_inv: PolyMatrix

    @property
    def rank(self) -> int:
        return self.H.rows


def _ident(n: int, field) -> list[list[LaurentPoly]]:
    one, zero = LaurentPoly.one(field), LaurentPoly.zero(field)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


class _Reducer:
    """Mutable working copy tracking ``L @ M @ R == A`` plus inverses."""

    def __init__(self, M: PolyMatrix, track_cols: bool = True):
        f = M.field
        self.field = f
        self.r, self.c = M.shape
        self.A = M.to_lists()
        self.L = _ident(self.r, f)
        self.Linv = _ident(self.r, f)
        self.track_cols = track_cols
        if track_cols:
            self.R = _ident(self.c, f)
            self.Rinv = _ident(self.c, f)

    def swap_rows(self, a: int, b: int) -> None:
        if a == b:
            return
        for X in (self.A, self.L):
            X[a], X[b] = X[b], X[a]
        for row in self.Linv:
            row[a], row[b] = row[b], row[a]

    def add_row(self, i: int, t: int, f: LaurentPoly) -> None:
        """row_i += f * row_t"""
        if f.is_zero():
            return
        for X in (self.A, self.L):
            Xi, Xt = X[i], X[t]
            for j in range(len(Xi)):
                if Xt[j]:
                    Xi[j] = Xi[j] + f * Xt[j]
        for row in self.Linv:
            if row[i]:
                row[t] = row[t] - f * row[i]

    def scale_row(self, t: int, u: LaurentPoly) -> None:
        """row_t *= u for a unit u."""
        ui = u.unit_inverse()
        for X in (self.A, self.L):
            X[t] = [x * u for x in X[t]]
        for row in self.Linv:
            row[t] = row[t] * ui

    def swap_cols(self, a: int, b: int) -> None:
        if a == b:
            return
        for row in self.A:
            row[a], row[b] = row[b], row[a]
        for row in self.R:
            row[a], row[b] = row[b], row[a]
        self.Rinv[a], self.Rinv[b] = self.Rinv[b], self.Rinv[a]

    def add_col(self, j: int, t: int, f: LaurentPoly) -> None:
        """col_j += f * col_t"""
        if f.is_zero():
            return
        for X in (self.A, self.R):
            for row in X:
                if row[t]:
                    row[j] = row[j] + f * row[t]
        Rt, Rj = self.Rinv[t], self.Rinv[j]
        for k in range(len(Rt)):
            if Rj[k]:
                Rt[k] = Rt[k] - f * Rj[k]

    def mat(self, X: list[list[LaurentPoly]], rows: int, cols: int) -> PolyMatrix:
        return PolyMatrix.from_lists(rows, cols, X, self.field)


def _smallest(entries):
    """Nonzero entry of minimal span; ties by lowest (row, col)."""
    best = None
    for key, p in entries:
        if p.is_zero():
            continue
        k = (p.span, key)
        if best is None or k < best:
            best = k
    return None if best is None else best[1]


def smith_normal_form(M: PolyMatrix) -> SmithDecomposition:
    """Smith form ``M = V @ D @ U`` with V, U unimodular and inverses returned.

    Diagonal entries are canonical associates with d1 | d2 | ...
    """
    w = _Reducer(M)
    A = w.A
    r, c = w.r, w.c
    for t in range(min(r, c)):
        piv = _smallest(((i, j), A[i][j]) for i in range(t, r) for j in range(t, c))
        if piv is None:
            break
        w.swap_rows(t, piv[0])
        w.swap_cols(t, piv[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, r):
                if A[i][t]:
                    q, _ = divrem(A[i][t], p)
                    w.add_row(i, t, -q)
            for j in range(t + 1, c):
                if A[t][j]:
                    q, _ = divrem(A[t][j], p)
                    w.add_col(j, t, -q)
            cand = [((i, t), A[i][t]) for i in range(t + 1, r)]
            cand += [((t, j), A[t][j]) for j in range(t + 1, c)]
            nxt = _smallest(cand)
            if nxt is not None:
                w.swap_rows(t, nxt[0])
                w.swap_cols(t, nxt[1])
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if A[i][j] and not divrem(A[i][j], p)[1].is_zero():
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            w.add_row(t, bad, LaurentPoly.one(w.field))
        u, _ = canonical_associate(A[t][t])
        w.scale_row(t, u.unit_inverse())
    return SmithDecomposition(
        V=w.mat(w.Linv, r, r),
        D=w.mat(A, r, c),
        U=w.mat(w.Rinv, c, c),
        V_inv=w.mat(w.L, r, r),
        U_inv=w.mat(w.R, c, c),
    )


def hermite_normal_form(M: PolyMatrix) -> HermiteForm:
    """Row-style Hermite form: canonical representative of the row module.

    Pivots are canonical associates; entries above a pivot are reduced to the
    unique residue of degree below the pivot's; zero rows are dropped.
    """
    w = _Reducer(M, track_cols=False)
    A = w.A
    r, c = w.r, w.c
    p = 0
    for col in range(c):
        if p == r:
            break
        found = False
        while True:
            i0 = _smallest(((i,), A[i][col]) for i in range(p, r))
            if i0 is None:
                break
            found = True
            w.swap_rows(p, i0[0])
            piv = A[p][col]
            clean = True
            for i in range(p + 1, r):
                if A[i][col]:
                    q, rem = divrem(A[i][col], piv)
                    w.add_row(i, p, -q)
                    if rem:
                        clean = False
            if clean:
                break
        if not found:
            continue
        u, piv = canonical_associate(A[p][col])
        w.scale_row(p, u.unit_inverse())
        for i in range(p):
            a = A[i][col]
            if a:
                res = canonical_residue(a, piv)
                w.add_row(i, p, -exact_div(a - res, piv))
        p += 1
    return HermiteForm(H=w.mat(A[:p], p, c), T=w.mat(w.L, r, r), T_inv=w.mat(w.Linv, r, r))


def rank(M: PolyMatrix) -> int:
    return hermite_normal_form(M).rank


def epi_splitmono_factor(M: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix]:
    """Factor ``M = S @ E`` with E epi (full row rank) and S split mono."""
    snf = smith_normal_form(M)
    k = snf.rank
    E = PolyMatrix.diagonal(snf.diagonal[:k], field=M.field) @ snf.U.submatrix(range(k), None)
    S = snf.V.submatrix(None, range(k))
    return E, S


def left_inverse(M: PolyMatrix) -> PolyMatrix | None:
    """A matrix X with ``X @ M == I``, or None when M is not split mono."""
    snf = smith_normal_form(M)
    k = snf.rank
    diag = snf.diagonal
    if k != M.cols or any(not d.is_unit() for d in diag[:k]):
        return None
    inv = PolyMatrix.diagonal([d.unit_inverse() for d in diag[:k]], field=M.field)
    return snf.U_inv @ inv @ snf.V_inv.submatrix(range(k), None)


def is_epi(M: PolyMatrix) -> bool:
    return rank(M) == M.rows


def is_split_mono(M: PolyMatrix) -> bool:
    snf = smith_normal_form(M)
    return snf.rank == M.cols and all(d.is_unit() for d in snf.diagonal[: snf.rank])


def is_invertible(M: PolyMatrix) -> bool:
    return M.rows == M.cols and is_split_mono(M)


def kernel_basis(M: PolyMatrix) -> PolyMatrix:
    """Columns form a basis of ``{x : M x = 0}`` (a free module)."""
    snf = smith_normal_form(M)
    return snf.U_inv.submatrix(None, range(snf.rank, M.cols))


def cokernel_free(M: PolyMatrix) -> PolyMatrix:
    """Universal epi Q with ``Q @ M == 0`` into a free module (torsion killed)."""
    snf = smith_normal_form(M)
    return snf.V_inv.submatrix(range(snf.rank, M.rows), None)


def solve_left(M: PolyMatrix, N: PolyMatrix) -> PolyMatrix | None:
    """X with ``X @ M == N``, or None if no solution exists over the ring."""
    if M.cols != N.cols:
        raise ShapeError(f"solve_left needs equal column counts, got {M.cols} and {N.cols}")
    snf = smith_normal_form(M)
    k = snf.rank
    diag = snf.diagonal
    Np = N @ snf.U_inv
    zero = LaurentPoly.zero(M.field)
    Y = [[zero] * M.rows for _ in range(N.rows)]
    for i in range(N.rows):
        for j in range(M.cols):
            a = Np[i, j]
            if j < k:
                q, rem = divrem(a, diag[j])
                if rem:
                    return None
                Y[i][j] = q
            elif a:
                return None
    return PolyMatrix.from_lists(N.rows, M.rows, Y, M.field) @ snf.V_inv


def solve_right(M: PolyMatrix, N: PolyMatrix) -> PolyMatrix | None:
    """X with ``M @ X == N``, or None."""
    X = solve_left(M.transpose(), N.transpose())
    return None if X is None else X.transpose()


def same_row_module(M: PolyMatrix, N: PolyMatrix) -> bool:
    """Row modules equal, decided by mutual solvability (no Hermite form)."""
    return solve_left(M, N) is not None and solve_left(N, M) is not None
