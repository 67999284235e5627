"""Random well-typed terms and random polynomial matrices for testing."""

from __future__ import annotations

import random
from fractions import Fraction

from .diagram import GENERATORS, Gen, Id, Seq, Tensor, Term, Twist
from .field import QQ, Field
from .laurent import LaurentPoly
from .matrix import PolyMatrix

_Q_PARAMS = (Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(3), Fraction(0))


def _params(field: Field) -> tuple[Fraction, ...]:
    if field.characteristic == 0:
        return _Q_PARAMS
    return tuple(Fraction(i) for i in range(min(field.characteristic, 4)))


def _block(rng: random.Random, avail: int, room: int, regs_left: int, field: Field):
    """A generator using at most ``avail`` inputs and producing at most ``room`` outputs."""
    options = []
    for name, (a, b, has_param) in GENERATORS.items():
        if a > avail or b > room:
            continue
        if name.endswith("delay") and regs_left == 0:
            continue
        options.append(name)
    if avail >= 1 and room >= 1:
        options += ["id", "id"]
    if avail >= 2 and room >= 2:
        options.append("tw")
    if not options:
        return None
    name = rng.choice(options)
    if name == "id":
        return Id(1), 1, 1
    if name == "tw":
        return Twist(), 2, 2
    a, b, has_param = GENERATORS[name]
    param = rng.choice(_params(field)) if has_param else None
    return Gen(name, param), a, b


def random_term(rng: random.Random, max_width: int = 3, max_registers: int = 3,
                max_layers: int = 5, field: Field = QQ) -> Term:
    """Layers of tensored generators; every wire bundle stays at most max_width."""
    width = rng.randint(0, max_width)
    regs = 0
    layers: list[Term] = []
    for _ in range(rng.randint(1, max_layers)):
        blocks: list[Term] = []
        used = out = 0
        while used < width or (out < max_width and rng.random() < 0.1):
            # wires not yet consumed can always be discarded, so room is what is left
            pick = _block(rng, width - used, max_width - out, max_registers - regs, field)
            if pick is None:
                break
            g, a, b = pick
            blocks.append(g)
            used += a
            out += b
            if isinstance(g, Gen) and g.name.endswith("delay"):
                regs += 1
        if used < width:
            # out of room: drop the leftovers
            blocks += [Gen("discard")] * (width - used)
        layer: Term = blocks[0] if blocks else Id(0)
        for g in blocks[1:]:
            layer = Tensor(layer, g)
        layers.append(layer)
        width = out
    term = layers[0]
    for layer in layers[1:]:
        term = Seq(term, layer)
    return term


def random_poly(rng: random.Random, field: Field = QQ, max_span: int = 3,
                low: int = -1, zero_prob: float = 0.2) -> LaurentPoly:
    if rng.random() < zero_prob:
        return LaurentPoly.zero(field)
    lo = rng.randint(low, 1)
    span = rng.randint(0, max_span)
    if field.characteristic == 0:
        coeffs = {lo + i: field(Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)))) for i in range(span + 1)}
    else:
        coeffs = {lo + i: field(rng.randrange(field.characteristic)) for i in range(span + 1)}
    return LaurentPoly(coeffs, field)


def random_matrix(rng: random.Random, rows: int, cols: int, field: Field = QQ,
                  max_span: int = 3) -> PolyMatrix:
    entries = [[random_poly(rng, field, max_span) for _ in range(cols)] for _ in range(rows)]
    return PolyMatrix.from_rows(entries, cols=cols, field=field)
