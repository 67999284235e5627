"""Denotational semantics: terms -> cospans of matrices -> corelations.

A cospan ``m -A-> d <-B- n`` denotes ``{(x, y) | A x = B y}`` on biinfinite
streams. Behaviours are compared through the Hermite form of the epi part
of ``[A | -B]``, which is canonical for the behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    GENERATORS,
    Gen,
    Id,
    Seq,
    Tensor,
    Term,
    Twist,
    TypedTerm,
    parse,
    typecheck,
)
from .field import QQ, Field
from .laurent import LaurentPoly
from .linalg import cokernel_free, epi_splitmono_factor, hermite_normal_form, same_row_module
from .matrix import PolyMatrix, ShapeError, direct_sum, hstack, vstack


@dataclass(frozen=True)
class Cospan:
    m: int
    n: int
    A: PolyMatrix  # apex x m
    B: PolyMatrix  # apex x n

    def __post_init__(self):
        if self.A.rows != self.B.rows or self.A.cols != self.m or self.B.cols != self.n:
            raise ShapeError(f"bad cospan legs {self.A.shape}, {self.B.shape} for {self.m} -> {self.n}")

    @property
    def apex(self) -> int:
        return self.A.rows

    @property
    def field(self) -> Field:
        return self.A.field


@dataclass(frozen=True)
class Corelation:
    """Jointly-epic cospan; equality is equality of ``kernel_rep``."""

    m: int
    n: int
    A: PolyMatrix
    B: PolyMatrix
    kernel_rep: PolyMatrix

    @property
    def apex(self) -> int:
        return self.A.rows

    @property
    def field(self) -> Field:
        return self.A.field

    def as_cospan(self) -> Cospan:
        return Cospan(self.m, self.n, self.A, self.B)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Corelation):
            return NotImplemented
        return (self.m, self.n, self.kernel_rep) == (other.m, other.n, other.kernel_rep)

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.kernel_rep))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "apex": self.apex, "kernel_rep": self.kernel_rep.to_json()}


@dataclass(frozen=True)
class Span:
    """``m <-R- waist -S-> n``, denoting the image of [R; S]."""

    m: int
    n: int
    R: PolyMatrix  # m x waist
    S: PolyMatrix  # n x waist

    @property
    def waist(self) -> int:
        return self.R.cols

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "waist": self.waist,
                "R": self.R.to_json(), "S": self.S.to_json()}


# -- generators -----------------------------------------------------------


def _mat(rows, cols, field, entries=None) -> PolyMatrix:
    return PolyMatrix(rows, cols, entries, field)


def generator_cospan(g: Term, field: Field = QQ) -> Cospan:
    """Cospan of a generator, ``id@n`` or ``tw``."""
    one = LaurentPoly.one(field)
    if isinstance(g, Id):
        I = PolyMatrix.identity(g.n, field)
        return Cospan(g.n, g.n, I, I)
    if isinstance(g, Twist):
        return Cospan(2, 2, PolyMatrix.identity(2, field), PolyMatrix.permutation([1, 0], field))
    if not isinstance(g, Gen) or g.name not in GENERATORS:
        raise ValueError(f"unknown generator {g!r}")
    name = g.name
    if name.startswith("co_"):
        c = generator_cospan(Gen(name[3:], g.param), field)
        return Cospan(c.n, c.m, c.B, c.A)
    if name == "add":
        return Cospan(2, 1, _mat(1, 2, field, [[one, one]]), _mat(1, 1, field, [[one]]))
    if name == "zero":
        return Cospan(0, 1, _mat(1, 0, field, [[]]), _mat(1, 1, field, [[one]]))
    if name == "copy":
        return Cospan(1, 2, _mat(2, 1, field, [[one], [one]]), PolyMatrix.identity(2, field))
    if name == "discard":
        return Cospan(1, 0, _mat(0, 1, field), _mat(0, 0, field))
    if name == "delay":
        return Cospan(1, 1, _mat(1, 1, field, [[LaurentPoly.s(field)]]), _mat(1, 1, field, [[one]]))
    if name == "scalar":
        a = LaurentPoly.const(field(g.param), field)
        return Cospan(1, 1, _mat(1, 1, field, [[a]]), _mat(1, 1, field, [[one]]))
    raise ValueError(f"unknown generator {name!r}")


# -- composition ----------------------------------------------------------


def cospan_compose(c1: Cospan, c2: Cospan) -> Cospan:
    """Composite by pushout of ``c1.B`` and ``c2.A`` in Mat k[s, s^-1]."""
    if c1.n != c2.m:
        raise ShapeError(f"cannot compose {c1.m}->{c1.n} with {c2.m}->{c2.n}")
    Q = cokernel_free(vstack(c1.B, -c2.A))
    C = Q.submatrix(None, range(c1.apex))
    D = Q.submatrix(None, range(c1.apex, c1.apex + c2.apex))
    return Cospan(c1.m, c2.n, C @ c1.A, D @ c2.B)


def cospan_tensor(c1: Cospan, c2: Cospan) -> Cospan:
    return Cospan(c1.m + c2.m, c1.n + c2.n, direct_sum(c1.A, c2.A), direct_sum(c1.B, c2.B))


def identity_cospan(n: int, field: Field = QQ) -> Cospan:
    return generator_cospan(Id(n), field)


def term_to_cospan(t: Term | TypedTerm | str, field: Field = QQ) -> Cospan:
    if isinstance(t, str):
        t = parse(t)
    if isinstance(t, TypedTerm):
        t = t.term
    else:
        typecheck(t)
    return _fold(t, field)


def _fold(t: Term, field: Field) -> Cospan:
    if isinstance(t, Seq):
        return cospan_compose(_fold(t.left, field), _fold(t.right, field))
    if isinstance(t, Tensor):
        return cospan_tensor(_fold(t.top, field), _fold(t.bottom, field))
    return generator_cospan(t, field)


# -- corelations ----------------------------------------------------------


def corelation_of(c: Cospan) -> Corelation:
    """Jointly-epic part of a cospan via the epi / split-mono factorization."""
    E, _ = epi_splitmono_factor(hstack(c.A, c.B))
    A = E.submatrix(None, range(c.m))
    B = E.submatrix(None, range(c.m, c.m + c.n))
    K = hermite_normal_form(hstack(A, -B)).H
    return Corelation(c.m, c.n, A, B, K)


def corelation(t: Term | TypedTerm | str, field: Field = QQ) -> Corelation:
    return corelation_of(term_to_cospan(t, field))


def kernel_representation(x: Corelation) -> PolyMatrix:
    return x.kernel_rep


def corelation_from_kernel(K: PolyMatrix, m: int) -> Corelation:
    """Corelation whose behaviour is ``ker K`` with the first m columns as domain."""
    n = K.cols - m
    A = K.submatrix(None, range(m))
    B = -K.submatrix(None, range(m, m + n))
    return corelation_of(Cospan(m, n, A, B))


def _check_types(x: Corelation, y: Corelation) -> None:
    if (x.m, x.n) != (y.m, y.n):
        raise ShapeError(f"boundary types differ: {x.m}->{x.n} vs {y.m}->{y.n}")


def behavior_equal(x: Corelation, y: Corelation) -> bool:
    """Equal behaviours iff identical canonical kernel representations."""
    _check_types(x, y)
    return x.kernel_rep == y.kernel_rep


def behavior_equal_by_solve(x: Corelation, y: Corelation) -> bool:
    """Same decision via mutual left divisibility of the kernel representations."""
    _check_types(x, y)
    return same_row_module(x.kernel_rep, y.kernel_rep)


def behavior_contains(big: Corelation, small: Corelation) -> bool:
    """ker(small) is contained in ker(big)."""
    from .linalg import solve_left

    _check_types(big, small)
    return solve_left(small.kernel_rep, big.kernel_rep) is not None


def span_to_cospan(sp: Span) -> Cospan:
    """Cospan with the span's behaviour, composing ``m -I-> m <-R- e`` with ``e -S-> n <-I- n``."""
    f = sp.R.field
    left = Cospan(sp.m, sp.waist, PolyMatrix.identity(sp.m, f), sp.R)
    right = Cospan(sp.waist, sp.n, sp.S, PolyMatrix.identity(sp.n, f))
    return cospan_compose(left, right)


# -- axiom suite ----------------------------------------------------------

# (label, lhs, rhs); scalars chosen so that the laws are non-trivial over Q.
AXIOMS: list[tuple[str, str, str]] = [
    ("add commutative", "tw ; add", "add"),
    ("add associative", "(add | id) ; add", "(id | add) ; add"),
    ("add unit", "(zero | id) ; add", "id"),
    ("add right unit", "(id | zero) ; add", "id"),
    ("copy cocommutative", "copy ; tw", "copy"),
    ("copy coassociative", "copy ; (copy | id)", "copy ; (id | copy)"),
    ("copy counit", "copy ; (discard | id)", "id"),
    ("co_add cocommutative", "co_add ; tw", "co_add"),
    ("co_add coassociative", "co_add ; (co_add | id)", "co_add ; (id | co_add)"),
    ("co_add counit", "co_add ; (co_zero | id)", "id"),
    ("co_copy commutative", "tw ; co_copy", "co_copy"),
    ("co_copy associative", "(co_copy | id) ; co_copy", "(id | co_copy) ; co_copy"),
    ("co_copy unit", "(co_discard | id) ; co_copy", "id"),
    ("bimonoid add/copy", "add ; copy", "(copy | copy) ; (id | tw | id) ; (add | add)"),
    ("bimonoid zero/copy", "zero ; copy", "zero | zero"),
    ("bimonoid add/discard", "add ; discard", "discard | discard"),
    ("bimonoid zero/discard", "zero ; discard", "id@0"),
    ("delay then inverse", "delay ; co_delay", "id"),
    ("inverse then delay", "co_delay ; delay", "id"),
    ("delay through copy", "delay ; copy", "copy ; (delay | delay)"),
    ("delay through add", "(delay | delay) ; add", "add ; delay"),
    ("delay of zero", "zero ; delay", "zero"),
    ("delay then discard", "delay ; discard", "discard"),
    ("scalar multiplicative", "scalar(2) ; scalar(3)", "scalar(6)"),
    ("scalar multiplicative (fractions)", "scalar(1/2) ; scalar(-4)", "scalar(-2)"),
    ("co_scalar multiplicative", "co_scalar(2) ; co_scalar(3)", "co_scalar(6)"),
    ("scalar additive", "copy ; (scalar(2) | scalar(3)) ; add", "scalar(5)"),
    ("scalar one", "scalar(1)", "id"),
    ("scalar zero", "scalar(0)", "discard ; zero"),
    ("scalar through copy", "scalar(3) ; copy", "copy ; (scalar(3) | scalar(3))"),
    ("scalar through add", "(scalar(3) | scalar(3)) ; add", "add ; scalar(3)"),
    ("scalar commutes with delay", "delay ; scalar(5)", "scalar(5) ; delay"),
    ("nonzero scalar inverse", "scalar(2) ; co_scalar(2)", "id"),
    ("antipode", "copy ; (id | scalar(-1)) ; add", "discard ; zero"),
    ("copy special", "copy ; co_copy", "id"),
    ("add special", "co_add ; add", "id"),
    ("copy Frobenius", "(copy | id) ; (id | co_copy)", "co_copy ; copy"),
    ("add Frobenius", "(co_add | id) ; (id | add)", "add ; co_add"),
    ("polynomial co-p then p", "co_add ; (co_delay | id) ; co_copy ; copy ; (delay | id) ; add",
     "id"),
    ("black bone", "co_discard ; discard", "id@0"),
    ("white bone", "zero ; co_zero", "id@0"),
]


@dataclass(frozen=True)
class AxiomResult:
    label: str
    lhs: str
    rhs: str
    holds: bool


def axiom_soundness_suite(field: Field = QQ) -> list[AxiomResult]:
    """Check every curated axiom pair by behavioural equality."""
    results = []
    for label, lhs, rhs in AXIOMS:
        tl, tr = parse(lhs), parse(rhs)
        if not all(_survives(q, field) for q in _literals(tl) | _literals(tr)):
            continue
        holds = behavior_equal(corelation(tl, field), corelation(tr, field))
        results.append(AxiomResult(label, lhs, rhs, holds))
    return results


def _literals(t: Term) -> set:
    if isinstance(t, Gen):
        return {t.param} if t.param is not None else set()
    if isinstance(t, Seq):
        return _literals(t.left) | _literals(t.right)
    if isinstance(t, Tensor):
        return _literals(t.top) | _literals(t.bottom)
    return set()


def _survives(q, field: Field) -> bool:
    """Rational literal maps into the field without collapsing to zero."""
    p = field.characteristic
    if p == 0 or q == 0:
        return True
    return q.numerator % p != 0 and q.denominator % p != 0
