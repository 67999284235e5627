"""Laurent polynomials over an exact field, with the Euclidean structure of k[s, s^-1].

Elements are immutable. Units of the ring are exactly ``a * s**k`` with
``a != 0``; the Euclidean norm is the exponent span ``max_exp - min_exp``.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .field import QQ, Field, parse_rational


class LaurentPoly:
    __slots__ = ("field", "_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None, field: Field = QQ):
        self.field = field
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                a = field(a)
                if a:
                    c[int(e)] = a
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict, field: Field) -> LaurentPoly:
        # c must already be canonical: field elements, no zeros
        p = cls.__new__(cls)
        p.field = field
        p._c = c
        p._hash = None
        return p

    @classmethod
    def const(cls, a, field: Field = QQ) -> LaurentPoly:
        return cls({0: a}, field)

    @classmethod
    def monomial(cls, a, k: int, field: Field = QQ) -> LaurentPoly:
        return cls({k: a}, field)

    @classmethod
    def zero(cls, field: Field = QQ) -> LaurentPoly:
        return cls._raw({}, field)

    @classmethod
    def one(cls, field: Field = QQ) -> LaurentPoly:
        return cls._raw({0: field.one}, field)

    @classmethod
    def s(cls, field: Field = QQ) -> LaurentPoly:
        return cls._raw({1: field.one}, field)

    # -- inspection -----------------------------------------------------

    def items(self) -> list[tuple[int, object]]:
        """(exponent, coefficient) pairs by increasing exponent."""
        return sorted(self._c.items())

    def coeff(self, e: int):
        return self._c.get(e, self.field.zero)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    @property
    def span(self) -> int:
        """Euclidean norm: max_exp - min_exp (0 exactly on units)."""
        return self.max_exp - self.min_exp

    def is_unit(self) -> bool:
        return len(self._c) == 1

    def is_one(self) -> bool:
        return len(self._c) == 1 and self._c.get(0) == self.field.one

    def leading(self):
        return self._c[self.max_exp]

    # -- arithmetic -----------------------------------------------------

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.field is not self.field and other.field != self.field:
                raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")
            return other
        return LaurentPoly.const(other, self.field)

    def __add__(self, other) -> LaurentPoly:
        o = self._lift(other)
        c = dict(self._c)
        for e, a in o._c.items():
            b = c.get(e)
            if b is None:
                c[e] = a
            else:
                b = b + a
                if b:
                    c[e] = b
                else:
                    del c[e]
        return LaurentPoly._raw(c, self.field)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -a for e, a in self._c.items()}, self.field)

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            a = self.field(other)
            if not a:
                return LaurentPoly._raw({}, self.field)
            return LaurentPoly._raw({e: b * a for e, b in self._c.items()}, self.field)
        o = self._lift(other)
        c: dict = {}
        for e1, a1 in self._c.items():
            for e2, a2 in o._c.items():
                e = e1 + e2
                if e in c:
                    c[e] = c[e] + a1 * a2
                else:
                    c[e] = a1 * a2
        return LaurentPoly._raw({e: a for e, a in c.items() if a}, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = LaurentPoly.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by s**k."""
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()}, self.field)

    def unit_inverse(self) -> LaurentPoly:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of k[s, s^-1]")
        (e, a), = self._c.items()
        return LaurentPoly._raw({-e: self.field.one / a}, self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c and (self.field is other.field or self.field == other.field)
        if isinstance(other, int):
            if other == 0:
                return not self._c
            return self._c == {0: self.field(other)}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        return format_poly(self)


# -- Euclidean structure --------------------------------------------------


def _poly_divmod(a: dict, b: dict, field: Field) -> tuple[dict, dict]:
    """Ordinary polynomial division on dicts with nonnegative exponents."""
    r = dict(a)
    q: dict = {}
    db = max(b)
    lead_inv = field.one / b[db]
    while r:
        dr = max(r)
        if dr < db:
            break
        f = r[dr] * lead_inv
        k = dr - db
        q[k] = f
        for e, c in b.items():
            e2 = e + k
            v = r.get(e2, field.zero) - f * c
            if v:
                r[e2] = v
            else:
                r.pop(e2, None)
    return q, r


def canonical_associate(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split ``p = u * q`` with ``u`` a unit and ``q`` an ordinary monic
    polynomial with nonzero constant term."""
    if p.is_zero():
        raise ZeroDivisionError("zero has no canonical associate")
    k = p.min_exp
    lead = p.leading()
    inv = p.field.one / lead
    q = LaurentPoly._raw({e - k: a * inv for e, a in p._c.items()}, p.field)
    u = LaurentPoly._raw({k: lead}, p.field)
    return u, q


def normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical associate of p (zero maps to zero)."""
    if p.is_zero():
        return p
    return canonical_associate(p)[1]


def divrem(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division: ``a = q*b + r`` with ``r == 0`` or ``span(r) < span(b)``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    field = a.field
    if a.is_zero():
        return a, a
    u, bq = canonical_associate(b)
    k = a.min_exp
    a0 = {e - k: c for e, c in a._c.items()}
    q0, r0 = _poly_divmod(a0, bq._c, field)
    q = LaurentPoly._raw({e + k: c for e, c in q0.items()}, field) * u.unit_inverse()
    r = LaurentPoly._raw({e + k: c for e, c in r0.items()}, field)
    return q, r


def divides(a: LaurentPoly, b: LaurentPoly) -> bool:
    """True iff a | b."""
    if a.is_zero():
        return b.is_zero()
    return divrem(b, a)[1].is_zero()


def exact_div(b: LaurentPoly, a: LaurentPoly) -> LaurentPoly:
    q, r = divrem(b, a)
    if not r.is_zero():
        raise ArithmeticError(f"{a} does not divide {b}")
    return q


def gcd_ext(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """Extended gcd: returns ``(g, x, y)`` with ``x*a + y*b == g`` and g canonical."""
    if a.is_zero() and b.is_zero():
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    field = a.field
    zero, one = LaurentPoly.zero(field), LaurentPoly.one(field)
    r0, r1 = a, b
    x0, x1 = one, zero
    y0, y1 = zero, one
    while not r1.is_zero():
        q, r = divrem(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    u, g = canonical_associate(r0)
    ui = u.unit_inverse()
    return g, x0 * ui, y0 * ui


def gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return gcd_ext(a, b)[0]


def canonical_residue(a: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Unique representative of ``a`` modulo ``q`` (q canonical, i.e. monic with
    nonzero constant term): an ordinary polynomial of degree < deg q.

    Zero when q is 1. Used to make Hermite forms canonical; plain ``divrem``
    remainders depend on the shift of ``a``.
    """
    field = a.field
    n = q.max_exp
    if n == 0 or a.is_zero():
        return LaurentPoly.zero(field)
    k = a.min_exp
    a0 = {e - k: c for e, c in a._c.items()}
    if k >= 0:
        mult = {k: field.one}
    else:
        # s^-1 == -(q - q0)/(s*q0) mod q, an ordinary polynomial of degree n-1
        q0 = q._c[0]
        inv_s = {e - 1: -c / q0 for e, c in q._c.items() if e != 0}
        mult = _pow_mod(inv_s, -k, q._c, field)
    prod = _mul_dict(a0, mult, field)
    _, r = _poly_divmod(prod, q._c, field)
    return LaurentPoly._raw(r, field)


def _mul_dict(a: dict, b: dict, field: Field) -> dict:
    c: dict = {}
    for e1, a1 in a.items():
        for e2, a2 in b.items():
            e = e1 + e2
            c[e] = c.get(e, field.zero) + a1 * a2
    return {e: v for e, v in c.items() if v}


def _pow_mod(base: dict, k: int, mod: dict, field: Field) -> dict:
    result = {0: field.one}
    _, base = _poly_divmod(base, mod, field)
    while k:
        if k & 1:
            _, result = _poly_divmod(_mul_dict(result, base, field), mod, field)
        _, base = _poly_divmod(_mul_dict(base, base, field), mod, field)
        k >>= 1
    return result


# -- text syntax ----------------------------------------------------------

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?
        (?:(?P<s>s)(?:\s*\^\s*(?P<exp>[+-]?\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str, field: Field = QQ) -> LaurentPoly:
    """Parse e.g. ``3/2*s^-1 + s^2 - 1``."""
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial")
    c: dict = {}
    pos = 0
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if (m.end() == pos or (m.group("coef") is None and m.group("s") is None)
                or (m.group("star") and not m.group("s"))
                or (pos > 0 and not m.group("sign"))):
            raise ValueError(f"malformed polynomial {text!r} at offset {pos}")
        coef = parse_rational(m.group("coef")) if m.group("coef") else 1
        e = 0
        if m.group("s"):
            e = int(m.group("exp")) if m.group("exp") is not None else 1
        a = field(coef)
        if m.group("sign") == "-":
            a = -a
        c[e] = c.get(e, field.zero) + a
        pos = m.end()
    return LaurentPoly(c, field)


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    field = p.field
    parts = []
    for e, a in sorted(p._c.items(), reverse=True):
        text = field.format(a)
        neg = False
        if field.characteristic == 0 and text.startswith("-"):
            neg, text = True, text[1:]
        if e == 0:
            mono = text
        else:
            sp = "s" if e == 1 else f"s^{e}"
            mono = sp if text == "1" else f"{text}*{sp}"
        parts.append(("-" if neg else "+", mono))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sg, mono in parts[1:]:
        out += f" {sg} {mono}"
    return out


def poly_to_json(p: LaurentPoly) -> list:
    return [[e, p.field.format(a)] for e, a in p.items()]


def poly_from_json(data: Iterable, field: Field = QQ) -> LaurentPoly:
    c = {}
    last = None
    for e, a in data:
        e = int(e)
        if last is not None and e <= last:
            raise ValueError("exponents must be strictly increasing")
        last = e
        c[e] = field.parse(str(a))
    return LaurentPoly(c, field)
