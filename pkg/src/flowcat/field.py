"""Exact coefficient fields: the rationals and prime fields Z/p."""

from __future__ import annotations

import functools
import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``int`` or ``int/int`` into a Fraction."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational literal {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Field:
    """Base class for the supported coefficient fields."""

    characteristic: int = 0
    zero: object
    one: object

    def __call__(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        return self(parse_rational(text))

    def format(self, x) -> str:
        raise NotImplementedError

    def is_finite(self) -> bool:
        return self.characteristic != 0


class RationalField(Field):
    characteristic = 0

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return parse_rational(x)
        if isinstance(x, ModP):
            raise TypeError("cannot lift a residue mod p to Q")
        return Fraction(x)

    def format(self, x) -> str:
        return format_rational(x)

    def __repr__(self) -> str:
        return "QQ"

    def __reduce__(self):
        return "QQ"


class ModP:
    """Residue class modulo a prime ``p``; value kept in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int) -> None:
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing Z/{self.p} and Z/{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self) -> ModP:
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 mod p")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by 0 mod p")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __eq__(self, other) -> bool:
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.v, self.p))

    def __bool__(self) -> bool:
        return self.v != 0

    def __int__(self) -> int:
        return self.v

    def __repr__(self) -> str:
        return f"ModP({self.v}, {self.p})"

    def __str__(self) -> str:
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField(Field):
    def __init__(self, p: int) -> None:
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.p = p
        self.zero = ModP(0, p)
        self.one = ModP(1, p)

    def __call__(self, x) -> ModP:
        p = self.p
        if isinstance(x, ModP):
            if x.p != p:
                raise ValueError(f"mixing Z/{p} and Z/{x.p}")
            return x
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, int):
            return ModP(x, p)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in Z/{p}")
            return ModP(x.numerator * pow(x.denominator, -1, p), p)
        raise TypeError(f"cannot coerce {x!r} into Z/{p}")

    def format(self, x) -> str:
        return str(x.v)

    def elements(self) -> list[ModP]:
        return [ModP(i, self.p) for i in range(self.p)]

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """``"Q"`` / ``"QQ"`` or ``"zp:<p>"`` (also ``"gf:<p>"``)."""
    s = name.strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    for prefix in ("zp:", "gf:", "z/"):
        if s.startswith(prefix):
            return GF(int(s[len(prefix):]))
    raise ValueError(f"unknown field {name!r}; expected Q or zp:<prime>")
