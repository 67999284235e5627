from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from flowcat.field import GF, QQ
from flowcat.laurent import LaurentPoly
from flowcat.matrix import PolyMatrix

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

F2 = GF(2)

rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def polys(draw, field=QQ, max_span=3, allow_zero=True):
    if allow_zero and draw(st.integers(0, 6)) == 0:
        return LaurentPoly.zero(field)
    lo = draw(st.integers(-2, 2))
    span = draw(st.integers(0, max_span))
    if field is QQ:
        cs = draw(st.lists(rationals, min_size=span + 1, max_size=span + 1))
    else:
        cs = draw(st.lists(st.integers(0, field.characteristic - 1), min_size=span + 1, max_size=span + 1))
    p = LaurentPoly({lo + i: field(c) for i, c in enumerate(cs)}, field)
    if not allow_zero and p.is_zero():
        p = LaurentPoly.monomial(field.one, lo, field)
    return p


@st.composite
def matrices(draw, field=QQ, max_rows=3, max_cols=3, max_span=2, rows=None, cols=None):
    r = draw(st.integers(0, max_rows)) if rows is None else rows
    c = draw(st.integers(0, max_cols)) if cols is None else cols
    entries = [[draw(polys(field, max_span)) for _ in range(c)] for _ in range(r)]
    return PolyMatrix.from_rows(entries, cols=c, field=field)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
