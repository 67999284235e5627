import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys
from flowcat.control import (
    ObservabilityError,
    composite_controllable_sufficient,
    controllable_part,
    invertible_leg_shortcut,
    is_controllable,
    pullback_span,
    siso_gcd_check,
    siso_interconnection_kernel,
    span_pushout,
)
from flowcat.diagram import GENERATORS
from flowcat.laurent import LaurentPoly, gcd, parse_poly
from flowcat.linalg import kernel_basis, solve_right
from flowcat.matrix import PolyMatrix, ShapeError, hstack, vstack
from flowcat.randomterms import random_poly, random_term
from flowcat.semantics import (
    Cospan,
    Span,
    behavior_contains,
    behavior_equal,
    corelation,
    corelation_from_kernel,
    corelation_of,
    cospan_compose,
    span_to_cospan,
)

P = parse_poly
T_EX = "copy ; (delay|id) ; add ; co_add ; (co_delay|id) ; co_copy"
ONE = P("1")


def M(*rows):
    return PolyMatrix.from_rows([[P(x) if isinstance(x, str) else x for x in r] for r in rows])


def kernel_corelation(*entries):
    return corelation_from_kernel(M(list(entries)), 1)


def span(b1, b2):
    return Span(1, 1, M([b1]), M([b2]))


def composite(b: Span, c: Span):
    return corelation_of(cospan_compose(span_to_cospan(b), span_to_cospan(c)))


# -- pullback span ------------------------------------------------------------


def test_pullback_examples():
    sp = pullback_span(corelation(T_EX))
    assert sp.R[0, 0].is_unit() and sp.R == sp.S  # identity span up to a unit
    sp = pullback_span(corelation("id"))
    assert sp.R[0, 0].is_unit() and sp.R == sp.S
    sp = pullback_span(kernel_corelation("s", "-1"))  # the delay
    assert sp.R[0, 0].is_unit() and sp.S[0, 0] == P("s") * sp.R[0, 0]


@given(st.integers(0, 10**6))
def test_pullback_exact_and_complete(seed):
    rng = random.Random(seed)
    x = corelation(random_term(rng))
    sp = pullback_span(x)
    K = x.kernel_rep
    assert (K @ vstack(sp.R, sp.S)).is_zero()
    # any kernel vector factors through [R; S]
    X = kernel_basis(K) @ PolyMatrix.from_rows([[random_poly(rng)] for _ in range(sp.waist)], cols=1)
    assert solve_right(vstack(sp.R, sp.S), X) is not None


# -- controllable part --------------------------------------------------------


def test_controllable_part_examples():
    ident = corelation("id")
    assert behavior_equal(controllable_part(corelation(T_EX)), ident)
    assert behavior_equal(controllable_part(kernel_corelation("s^2 + 2*s + 1", "-s^2 - 2*s - 1")), ident)
    x = corelation_of(span_to_cospan(span(P("s+2"), P("3*s^-1"))))
    assert behavior_equal(controllable_part(x), x)


@given(st.integers(0, 10**6))
def test_controllable_part_idempotent(seed):
    x = corelation(random_term(random.Random(seed)))
    part = controllable_part(x)
    assert is_controllable(part).controllable
    assert behavior_equal(controllable_part(part), part)
    assert behavior_contains(x, part)


@given(st.integers(0, 10**6))
def test_controllable_part_is_maximal(seed):
    rng = random.Random(seed)
    x = corelation(random_term(rng))
    sp = pullback_span(x)
    if sp.waist == 0:
        return
    # a span whose behaviour sits inside x: pullback columns times random polynomials
    Y = PolyMatrix.from_rows([[random_poly(rng) for _ in range(2)] for _ in range(sp.waist)], cols=2)
    sub = corelation_of(span_to_cospan(Span(x.m, x.n, sp.R @ Y, sp.S @ Y)))
    assert behavior_contains(x, sub)
    assert behavior_contains(controllable_part(x), sub)


# -- decision ----------------------------------------------------------------------


def test_t_ex_not_controllable():
    report = is_controllable(corelation(T_EX))
    assert not report.controllable
    assert report.obstruction == M(["s+1"])
    assert report.obstruction @ report.controllable_part.kernel_rep == corelation(T_EX).kernel_rep
    data = report.to_json()
    assert data["controllable"] is False and data["obstruction"]["entries"] == [["s + 1"]]


def test_generators_controllable():
    assert is_controllable(corelation("id")).controllable
    for name, (_, _, has_param) in GENERATORS.items():
        text = f"{name}(3)" if has_param else name
        assert is_controllable(corelation(text)).controllable, text


def test_invertible_leg_shortcut():
    assert invertible_leg_shortcut(Cospan(1, 1, M(["1"]), M(["s+1"]))) is True
    assert invertible_leg_shortcut(Cospan(1, 1, M(["s+1"]), M(["s+1"]))) is None
    assert invertible_leg_shortcut(Cospan(1, 1, M(["s"]), M(["s^2 - 3"]))) is True


@given(st.integers(0, 10**6))
def test_shortcut_is_sound(seed):
    c = corelation(random_term(random.Random(seed))).as_cospan()
    if invertible_leg_shortcut(c):
        assert is_controllable(corelation_of(c)).controllable


def test_composite_sufficient_condition():
    ident = span(ONE, ONE)
    assert composite_controllable_sufficient(ident, span(P("s+1"), P("s^2"))) is True
    assert composite_controllable_sufficient(span(ONE, P("s+1")), span(P("s+1"), ONE)) is None
    assert composite_controllable_sufficient(span(ONE, P("s")), span(P("s+1"), ONE)) is True
    with pytest.raises(ShapeError):
        composite_controllable_sufficient(Span(1, 2, M(["1"]), M(["1"], ["1"])), ident)


def test_siso_gcd_examples():
    assert siso_gcd_check(M(["s+1", "-s-1"])) is False
    assert siso_gcd_check(M(["1", "-s^2 + 4"])) is True
    assert siso_gcd_check(M(["s^2 - 1", "s + 1"])) is False
    assert is_controllable(kernel_corelation("s^2 - 1", "s + 1")).controllable is False
    with pytest.raises(ShapeError):
        siso_gcd_check(M(["1"], ["1"]))


@given(polys(max_span=3), polys(max_span=3), polys(max_span=1, allow_zero=False), st.booleans())
def test_siso_gcd_agrees_with_round_trip(a, b, g, plant):
    if plant:
        a, b = a * g, b * g
    row = PolyMatrix.from_rows([[a, b]])
    assert siso_gcd_check(row) == is_controllable(corelation_from_kernel(row, 1)).controllable


# -- elimination -----------------------------------------------------------------


def test_interconnection_examples():
    assert siso_interconnection_kernel(ONE, ONE, ONE, ONE) == M(["1", "-1"])
    K = siso_interconnection_kernel(ONE, P("s+1"), P("s+1"), ONE)
    assert K == M(["s+1", "-s-1"]) and not siso_gcd_check(K)
    K = siso_interconnection_kernel(ONE, P("s"), P("s+1"), ONE)
    assert K == M(["s", "-s-1"]) and siso_gcd_check(K)
    assert behavior_equal(corelation_from_kernel(K, 1), composite(span(ONE, P("s")), span(P("s+1"), ONE)))


def test_interconnection_requires_observability():
    with pytest.raises(ObservabilityError):
        siso_interconnection_kernel(P("s+1"), P("s^2-1"), ONE, ONE)
    with pytest.raises(ObservabilityError):
        siso_interconnection_kernel(ONE, ONE, LaurentPoly.zero(), LaurentPoly.zero())
    with pytest.raises(ValueError):
        siso_interconnection_kernel(LaurentPoly.zero(), ONE, ONE, LaurentPoly.zero())


def _observable(a, b):
    return not (a.is_zero() and b.is_zero()) and gcd(a, b).is_unit()


@given(polys(max_span=3), polys(max_span=3), polys(max_span=3), polys(max_span=3),
       polys(max_span=1, allow_zero=False), st.booleans())
def test_elimination_agrees_with_composition(b1, b2, c1, c2, g, plant):
    if plant:
        b2, c1 = b2 * g, c1 * g
    if not (_observable(b1, b2) and _observable(c1, c2)) or (b1.is_zero() and c2.is_zero()):
        return
    K = siso_interconnection_kernel(b1, b2, c1, c2)
    comp = composite(span(b1, b2), span(c1, c2))
    assert behavior_equal(corelation_from_kernel(K, 1), comp)
    assert siso_gcd_check(K) == is_controllable(comp).controllable
    # the middle cospan condition is sufficient
    if composite_controllable_sufficient(span(b1, b2), span(c1, c2)):
        assert is_controllable(comp).controllable


def test_span_pushout_round_trip():
    sp = span(P("s"), P("s+1"))
    c = span_pushout(sp)
    assert (hstack(c.A, -c.B) @ vstack(sp.R, sp.S)).is_zero()
