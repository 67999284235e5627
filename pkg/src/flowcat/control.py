"""Controllability: pullback spans, controllable parts and SISO cross-checks."""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly, exact_div, gcd
from .linalg import cokernel_free, is_invertible, kernel_basis, solve_left
from .matrix import PolyMatrix, ShapeError, vstack
from .semantics import (
    Corelation,
    Cospan,
    Span,
    behavior_equal,
    corelation_of,
)


class ObservabilityError(ValueError):
    pass


@dataclass(frozen=True)
class ControllabilityReport:
    controllable: bool
    span: Span
    controllable_part: Corelation
    obstruction: PolyMatrix  # X with X @ controllable_part.kernel_rep == kernel_rep

    def to_json(self) -> dict:
        return {
            "controllable": self.controllable,
            "span": self.span.to_json(),
            "controllable_part": self.controllable_part.to_json(),
            "obstruction": self.obstruction.to_json(),
        }


def pullback_span(x: Corelation) -> Span:
    """Pullback of the cospan: a basis of ker [A | -B] split into (R; S)."""
    K = kernel_basis(x.kernel_rep)
    R = K.submatrix(range(x.m), None)
    S = K.submatrix(range(x.m, x.m + x.n), None)
    return Span(x.m, x.n, R, S)


def span_pushout(sp: Span) -> Cospan:
    """Pushout cospan of a span, via the free cokernel of [R; -S]."""
    Q = cokernel_free(vstack(sp.R, -sp.S))
    return Cospan(sp.m, sp.n, Q.submatrix(None, range(sp.m)),
                  Q.submatrix(None, range(sp.m, sp.m + sp.n)))


def span_corelation(sp: Span) -> Corelation:
    return corelation_of(span_pushout(sp))


def controllable_part(x: Corelation) -> Corelation:
    """Maximal controllable sub-behaviour: pushout of the pullback, normalized."""
    return span_corelation(pullback_span(x))


def is_controllable(x: Corelation) -> ControllabilityReport:
    sp = pullback_span(x)
    part = span_corelation(sp)
    X = solve_left(part.kernel_rep, x.kernel_rep)
    if X is None:  # the controllable part is always contained in x
        raise ArithmeticError("controllable part not contained in the behaviour")
    return ControllabilityReport(behavior_equal(part, x), sp, part, X)


def invertible_leg_shortcut(c: Cospan) -> bool | None:
    """True when a leg is invertible (sufficient for controllability), else None."""
    if is_invertible(c.A) or is_invertible(c.B):
        return True
    return None


def composite_controllable_sufficient(b: Span, c: Span) -> bool | None:
    """True if the middle cospan ``-B2-> <-C1-`` is controllable; None otherwise."""
    if b.n != c.m:
        raise ShapeError(f"cannot compose spans {b.m}->{b.n} and {c.m}->{c.n}")
    middle = Cospan(b.waist, c.waist, b.S, c.R)
    if is_controllable(corelation_of(middle)).controllable:
        return True
    return None


def siso_gcd_check(kernel_row: PolyMatrix) -> bool:
    """For a 1 x 2 kernel row [a, b]: controllable iff gcd(a, b) is a unit."""
    if kernel_row.shape != (1, 2):
        raise ShapeError(f"expected a 1x2 kernel row, got {kernel_row.rows}x{kernel_row.cols}")
    a, b = kernel_row[0, 0], kernel_row[0, 1]
    if a.is_zero() and b.is_zero():
        return True  # no constraint: the full behaviour is controllable
    return gcd(a, b).is_unit()


def siso_interconnection_kernel(B1: LaurentPoly, B2: LaurentPoly,
                                C1: LaurentPoly, C2: LaurentPoly) -> PolyMatrix:
    """Eliminated kernel row ``[C2' B2, -B1' C1]`` of the interconnection of
    the image representations (B1; B2) and (C1; C2), where G = gcd(B1, C2),
    B1 = G B1' and C2 = G C2'."""
    for name, (p, q) in (("B", (B1, B2)), ("C", (C1, C2))):
        if (p.is_zero() and q.is_zero()) or not gcd(p, q).is_unit():
            raise ObservabilityError(f"representation {name} is not observable")
    if B1.is_zero() and C2.is_zero():
        raise ValueError("B1 = C2 = 0: the interconnection has no 1x2 kernel row")
    G = gcd(B1, C2)
    B1p, C2p = exact_div(B1, G), exact_div(C2, G)
    return PolyMatrix.from_rows([[C2p * B2, -(B1p * C1)]], field=B1.field)
