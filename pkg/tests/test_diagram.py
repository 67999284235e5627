import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from flowcat.diagram import (
    GENERATORS,
    BoundaryError,
    DiagramSyntaxError,
    Gen,
    Id,
    Seq,
    Tensor,
    Twist,
    arity,
    mirror,
    parse,
    permutation_term,
    poly_term,
    pretty,
    typecheck,
)
from flowcat.laurent import parse_poly
from flowcat.randomterms import random_term

T_EX = "copy ; (delay|id) ; add ; co_add ; (co_delay|id) ; co_copy"


def _gen(name, param=None):
    return Gen(name, param)


atoms = st.one_of(
    st.sampled_from([n for n, (_, _, p) in GENERATORS.items() if not p]).map(_gen),
    st.builds(Gen, st.sampled_from(["scalar", "co_scalar"]), rationals),
    st.builds(Id, st.integers(0, 3)),
    st.just(Twist()),
)
asts = st.recursive(atoms, lambda kids: st.one_of(st.builds(Seq, kids, kids), st.builds(Tensor, kids, kids)),
                    max_leaves=12)


def test_parse_examples():
    assert parse("copy ; (delay | id) ; add") == Seq(Seq(Gen("copy"), Tensor(Gen("delay"), Id(1))), Gen("add"))
    assert parse("zero ; co_zero") == Seq(Gen("zero"), Gen("co_zero"))
    assert parse("scalar(-1)") == Gen("scalar", Fraction(-1))
    assert parse("co_scalar(3/4)") == Gen("co_scalar", Fraction(3, 4))
    assert parse("id@3") == Id(3) and parse("id") == Id(1) and parse("tw") == Twist()


def test_tensor_binds_tighter():
    assert parse("add | zero ; add") == Seq(Tensor(Gen("add"), Gen("zero")), Gen("add"))


def test_comments_and_whitespace():
    text = "# the unit law\n(zero | id)  # left unit\n ; add\n"
    assert parse(text) == parse("(zero|id);add")


@pytest.mark.parametrize("text,line,col", [
    ("add ;", 1, 6),
    ("copy ;\n  frob", 2, 3),
    ("scalar(x)", 1, 8),
    ("scalar", 1, 7),
    ("delay(2)", 1, 6),
    ("(add", 1, 5),
    ("add )", 1, 5),
    ("id@", 1, 3),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(DiagramSyntaxError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_unknown_generator():
    with pytest.raises(DiagramSyntaxError, match="unknown generator"):
        parse("frobnicate")


def test_typecheck_examples():
    tt = typecheck(parse("copy ; (delay | id) ; add"))
    assert (tt.arity, tt.coarity) == (1, 1)
    assert [r.kind for r in tt.registers] == ["delay"]
    tt = typecheck(parse(T_EX))
    assert (tt.arity, tt.coarity, tt.d) == (1, 1, 2)
    assert [r.kind for r in tt.registers] == ["delay", "co_delay"]
    with pytest.raises(BoundaryError) as exc:
        typecheck(parse("add ; add"))
    assert (exc.value.left, exc.value.right) == (1, 2)
    assert "add ; add" in str(exc.value)


def test_register_order_is_depth_first():
    tt = typecheck(parse("(delay | co_delay) ; (id | delay) ; (co_delay | id)"))
    assert [r.kind for r in tt.registers] == ["delay", "co_delay", "delay", "co_delay"]
    assert [r.index for r in tt.registers] == [0, 1, 2, 3]
    assert len({r.path for r in tt.registers}) == 4


def test_pretty_examples():
    assert pretty(Id(3)) == "id@3"
    assert pretty(Tensor(Gen("add"), Gen("zero"))) == "add | zero"
    assert pretty(parse(T_EX)) == "copy ; (delay | id) ; add ; co_add ; (co_delay | id) ; co_copy"
    assert pretty(Gen("scalar", Fraction(-1, 2))) == "scalar(-1/2)"


@given(asts)
def test_pretty_parse_round_trip(t):
    assert parse(pretty(t)) == t


@given(st.integers(0, 10**6))
def test_random_terms_typecheck(seed):
    t = random_term(random.Random(seed))
    tt = typecheck(t)
    assert (tt.arity, tt.coarity) == arity(t)
    assert typecheck(parse(pretty(t))).registers == tt.registers


def test_generator_arities():
    for name, (a, b, has_param) in GENERATORS.items():
        g = Gen(name, Fraction(2) if has_param else None)
        assert arity(g) == (a, b)
        assert arity(mirror(g)) == (b, a)


def test_mirror_reverses_composites():
    t = parse("copy ; (delay | id)")
    assert mirror(t) == parse("(co_delay | id) ; co_copy")
    assert mirror(mirror(t)) == t


def test_builders_typecheck():
    tt = typecheck(poly_term(parse_poly("2*s^2 - s^-1 + 3")))
    assert (tt.arity, tt.coarity) == (1, 1)
    tt = typecheck(permutation_term([2, 0, 1]))
    assert (tt.arity, tt.coarity) == (3, 3)
