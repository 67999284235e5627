"""The string-diagram term language: AST, parser, typechecker, printer.

Concrete syntax::

    term   := tensor (';' tensor)*
    tensor := atom ('|' atom)*
    atom   := NAME | NAME '(' RATIONAL ')' | 'id@' NAT | 'id' | 'tw' | '(' term ')'

``;`` is sequential composition in diagrammatic order and binds looser
than ``|`` (monoidal product). ``#`` starts a line comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .field import format_rational, parse_rational

# name -> (arity, coarity, takes a scalar parameter)
GENERATORS: dict[str, tuple[int, int, bool]] = {
    "add": (2, 1, False),
    "zero": (0, 1, False),
    "copy": (1, 2, False),
    "discard": (1, 0, False),
    "delay": (1, 1, False),
    "scalar": (1, 1, True),
    "co_add": (1, 2, False),
    "co_zero": (1, 0, False),
    "co_copy": (2, 1, False),
    "co_discard": (0, 1, False),
    "co_delay": (1, 1, False),
    "co_scalar": (1, 1, True),
}

REGISTER_GENERATORS = ("delay", "co_delay")


def mirror_name(name: str) -> str:
    return name[3:] if name.startswith("co_") else "co_" + name


@dataclass(frozen=True)
class Gen:
    name: str
    param: Fraction | None = None


@dataclass(frozen=True)
class Id:
    n: int = 1


@dataclass(frozen=True)
class Twist:
    pass


@dataclass(frozen=True)
class Seq:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Tensor:
    top: "Term"
    bottom: "Term"


Term = Union[Gen, Id, Twist, Seq, Tensor]


@dataclass(frozen=True)
class Register:
    index: int
    kind: str  # "delay" or "co_delay"
    path: tuple[int, ...]  # child indices from the root


@dataclass(frozen=True)
class TypedTerm:
    term: Term
    arity: int
    coarity: int
    registers: tuple[Register, ...]

    @property
    def d(self) -> int:
        return len(self.registers)


class DiagramSyntaxError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


class BoundaryError(TypeError):
    """Sequential composite whose inner boundaries disagree."""

    def __init__(self, node: Seq, left: int, right: int):
        super().__init__(
            f"boundary mismatch in `{pretty(node)}`: left side has coarity {left}, "
            f"right side has arity {right}"
        )
        self.node = node
        self.left = left
        self.right = right


# -- parser ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+|\#[^\n]*)
      | (?P<idn>id@(?P<nat>\d+))
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<rat>[+-]?\d+(?:\s*/\s*\d+)?)
      | (?P<op>[;|()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    pos, line, line_start = 0, 1, 0
    toks = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DiagramSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup if m.lastgroup != "nat" else "idn"
        if m.group("idn"):
            kind = "idn"
        if kind != "ws":
            toks.append((kind, m.group(0), line, pos - line_start + 1))
        for k, ch in enumerate(m.group(0)):
            if ch == "\n":
                line += 1
                line_start = pos + k + 1
        pos = m.end()
    toks.append(("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        t = self.take()
        if t[1] != value:
            found = "end of input" if t[0] == "eof" else repr(t[1])
            raise DiagramSyntaxError(f"expected {value!r}, found {found}", t[2], t[3])
        return t

    def term(self) -> Term:
        t = self.tensor()
        while self.peek()[1] == ";":
            self.take()
            t = Seq(t, self.tensor())
        return t

    def tensor(self) -> Term:
        t = self.atom()
        while self.peek()[1] == "|":
            self.take()
            t = Tensor(t, self.atom())
        return t

    def atom(self) -> Term:
        kind, val, line, col = self.take()
        if kind == "idn":
            return Id(int(val[3:]))
        if val == "(":
            t = self.term()
            self.expect(")")
            return t
        if kind == "name":
            if val == "id":
                return Id(1)
            if val == "tw":
                return Twist()
            if val not in GENERATORS:
                raise DiagramSyntaxError(f"unknown generator {val!r}", line, col)
            if GENERATORS[val][2]:
                self.expect("(")
                k2, v2, l2, c2 = self.take()
                if k2 != "rat":
                    raise DiagramSyntaxError(f"malformed scalar literal {v2!r}", l2, c2)
                try:
                    q = parse_rational(v2)
                except ValueError as e:
                    raise DiagramSyntaxError(str(e), l2, c2) from None
                self.expect(")")
                return Gen(val, q)
            return Gen(val)
        found = "end of input" if kind == "eof" else repr(val)
        raise DiagramSyntaxError(f"expected a term, found {found}", line, col)


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    kind, val, line, col = p.peek()
    if kind != "eof":
        raise DiagramSyntaxError(f"unexpected {val!r}", line, col)
    return t


# -- printer --------------------------------------------------------------


def pretty(t: Term) -> str:
    if isinstance(t, Gen):
        if t.param is not None:
            return f"{t.name}({format_rational(t.param)})"
        return t.name
    if isinstance(t, Id):
        return "id" if t.n == 1 else f"id@{t.n}"
    if isinstance(t, Twist):
        return "tw"
    if isinstance(t, Seq):
        left = pretty(t.left) if isinstance(t.left, Seq) else _wrap(t.left)
        return f"{left} ; {_wrap(t.right)}"
    if isinstance(t, Tensor):
        top = pretty(t.top) if isinstance(t.top, Tensor) else _wrap(t.top)
        return f"{top} | {_wrap(t.bottom)}"
    raise TypeError(f"not a term: {t!r}")


def _wrap(t: Term) -> str:
    if isinstance(t, (Seq, Tensor)):
        return f"({pretty(t)})"
    return pretty(t)


# -- typing ---------------------------------------------------------------


def arity(t: Term) -> tuple[int, int]:
    """(arity, coarity) computed bottom-up; raises BoundaryError."""
    if isinstance(t, Gen):
        if t.name not in GENERATORS:
            raise ValueError(f"unknown generator {t.name!r}")
        a, c, _ = GENERATORS[t.name]
        return a, c
    if isinstance(t, Id):
        return t.n, t.n
    if isinstance(t, Twist):
        return 2, 2
    if isinstance(t, Seq):
        m, k = arity(t.left)
        k2, n = arity(t.right)
        if k != k2:
            raise BoundaryError(t, k, k2)
        return m, n
    if isinstance(t, Tensor):
        m1, n1 = arity(t.top)
        m2, n2 = arity(t.bottom)
        return m1 + m2, n1 + n2
    raise TypeError(f"not a term: {t!r}")


def registers(t: Term) -> tuple[Register, ...]:
    """Delay / co_delay sites in depth-first, left-to-right (top-to-bottom) order."""
    out: list[Register] = []

    def walk(node: Term, path: tuple[int, ...]) -> None:
        if isinstance(node, Gen):
            if node.name in REGISTER_GENERATORS:
                out.append(Register(len(out), node.name, path))
        elif isinstance(node, Seq):
            walk(node.left, path + (0,))
            walk(node.right, path + (1,))
        elif isinstance(node, Tensor):
            walk(node.top, path + (0,))
            walk(node.bottom, path + (1,))

    walk(t, ())
    return tuple(out)


def typecheck(t: Term) -> TypedTerm:
    m, n = arity(t)
    return TypedTerm(t, m, n, registers(t))


# -- constructions --------------------------------------------------------


def mirror(t: Term) -> Term:
    """Mirror image: swaps every generator with its co_ twin and reverses ``;``."""
    if isinstance(t, Gen):
        return Gen(mirror_name(t.name), t.param)
    if isinstance(t, (Id, Twist)):
        return t
    if isinstance(t, Seq):
        return Seq(mirror(t.right), mirror(t.left))
    if isinstance(t, Tensor):
        return Tensor(mirror(t.top), mirror(t.bottom))
    raise TypeError(f"not a term: {t!r}")


def seq(*ts: Term) -> Term:
    out = ts[0]
    for t in ts[1:]:
        out = Seq(out, t)
    return out


def tensor(*ts: Term) -> Term:
    if not ts:
        return Id(0)
    out = ts[0]
    for t in ts[1:]:
        out = Tensor(out, t)
    return out


def copies(k: int) -> Term:
    """1 -> k duplicator built from copy and discard."""
    if k == 0:
        return Gen("discard")
    if k == 1:
        return Id(1)
    return Seq(Gen("copy"), Tensor(Id(1), copies(k - 1)))


def sums(k: int) -> Term:
    """k -> 1 adder built from add and zero."""
    if k == 0:
        return Gen("zero")
    if k == 1:
        return Id(1)
    return Seq(Tensor(Id(1), sums(k - 1)), Gen("add"))


def permutation_term(perm: list[int]) -> Term:
    """Wiring sending input wire j to output wire perm[j], built from twists."""
    n = len(perm)
    if n == 0:
        return Id(0)
    cur = list(perm)  # cur[position] = destination of the wire at that position
    layers: list[Term] = []
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                parts = ([Id(i)] if i else []) + [Twist()] + ([Id(n - i - 2)] if n - i - 2 else [])
                layers.append(tensor(*parts))
                changed = True
    return seq(*layers) if layers else Id(n)


def poly_term(p) -> Term:
    """A 1 -> 1 term denoting ``{(x, p*x)}`` for a Laurent polynomial p."""
    items = p.items()
    if not items:
        return Seq(Gen("discard"), Gen("zero"))
    branches = []
    for e, a in items:
        parts: list[Term] = []
        a_q = _scalar_literal(a, p.field)
        if a_q != 1:
            parts.append(Gen("scalar", a_q))
        step = "delay" if e > 0 else "co_delay"
        parts.extend(Gen(step) for _ in range(abs(e)))
        branches.append(seq(*parts) if parts else Id(1))
    return seq(copies(len(branches)), tensor(*branches), sums(len(branches)))


def matrix_term(M) -> Term:
    """An m -> n term (M is n x m) denoting the graph ``{(x, M x)}``."""
    n, m = M.rows, M.cols
    if m == 0:
        return tensor(*[Gen("zero") for _ in range(n)]) if n else Id(0)
    fan_out = tensor(*[copies(n) for _ in range(m)])  # wires ordered (col j, row i)
    perm = [i * m + j for j in range(m) for i in range(n)]
    cells = tensor(*[poly_term(M[i, j]) for i in range(n) for j in range(m)])
    fan_in = tensor(*[sums(m) for _ in range(n)])
    parts = [fan_out]
    if n * m > 1:
        parts.append(permutation_term(perm))
    parts += [cells, fan_in]
    return seq(*parts)


def cospan_term(A, B) -> Term:
    """Term whose cospan is m -A-> d <-B- n (A is d x m, B is d x n)."""
    return Seq(matrix_term(A), mirror(matrix_term(B)))


def span_term(R, S) -> Term:
    """Term whose span is m <-R- e -S-> n (R is m x e, S is n x e)."""
    return Seq(mirror(matrix_term(R)), matrix_term(S))


def _scalar_literal(a, field) -> Fraction:
    if field.characteristic == 0:
        return Fraction(a)
    return Fraction(int(a))
