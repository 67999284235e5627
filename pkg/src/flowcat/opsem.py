"""Operational semantics: per-tick transition relations and finite windows.

A term with d registers steps by a linear relation on (u, v, r, r') where
u is the input at a tick, v the output, r the register contents before the
tick and r' after. Registers are numbered as in ``diagram.registers``.

Windows cover ticks t0..t1 and carry registers at t0..t1+1. In every
window computation the edge registers are quantified over the states that
lie on some biinfinite run: r(t0) must be reachable from arbitrarily far in
the past and r(t1+1) must admit an infinite future.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diagram import Gen, Id, Seq, Tensor, Term, Twist, TypedTerm, parse, typecheck
from .field import QQ, Field
from .fieldla import Subspace, eliminate, rank, rref, solve
from .matrix import PolyMatrix


@dataclass(frozen=True)
class StepRelation:
    """Valid (u | v | r | r') tuples are the kernel of ``constraint``."""

    m: int
    n: int
    d: int
    constraint: tuple[tuple, ...]
    field: Field = QQ

    @property
    def width(self) -> int:
        return self.m + self.n + 2 * self.d

    def holds(self, u, v, r, r2) -> bool:
        x = list(u) + list(v) + list(r) + list(r2)
        return all(sum((a * b for a, b in zip(row, x)), self.field.zero) == 0
                   for row in self.constraint)


@dataclass(frozen=True)
class TraceWindow:
    t0: int
    t1: int
    u: tuple[tuple, ...]
    v: tuple[tuple, ...]
    registers: tuple[tuple, ...] | None = None

    def __post_init__(self):
        L = self.t1 - self.t0 + 1
        if L < 1 or len(self.u) != L or len(self.v) != L:
            raise ValueError("window boundary length does not match t0..t1")
        if self.registers is not None and len(self.registers) != L + 1:
            raise ValueError("window needs registers at t0..t1+1")

    @property
    def length(self) -> int:
        return self.t1 - self.t0 + 1

    def flat(self) -> list:
        """Boundary values tick by tick: u(t0), v(t0), u(t0+1), ..."""
        out = []
        for a, b in zip(self.u, self.v):
            out += list(a) + list(b)
        return out

    def to_json(self, field: Field = QQ) -> dict:
        fmt = field.format
        regs = None if self.registers is None else [[fmt(x) for x in r] for r in self.registers]
        return {
            "t0": self.t0,
            "t1": self.t1,
            "u": [[fmt(x) for x in r] for r in self.u],
            "v": [[fmt(x) for x in r] for r in self.v],
            "registers": regs,
        }

    @classmethod
    def from_json(cls, data: dict, field: Field = QQ) -> TraceWindow:
        conv = lambda rows: tuple(tuple(field(str(x)) for x in r) for r in rows)
        regs = data.get("registers")
        return cls(int(data["t0"]), int(data["t1"]), conv(data["u"]), conv(data["v"]),
                   None if regs is None else conv(regs))


# -- compiling the step relation ---------------------------------------------


def _rows(field: Field, width: int, eqs) -> list[list]:
    """Each equation is a dict column -> coefficient."""
    out = []
    for eq in eqs:
        row = [field.zero] * width
        for j, c in eq.items():
            row[j] = row[j] + field(c)
        out.append(row)
    return out


def _generator_relation(g: Term, field: Field) -> StepRelation:
    if isinstance(g, Id):
        n = g.n
        return StepRelation(n, n, 0, tuple(map(tuple, _rows(field, 2 * n, [{i: 1, n + i: -1} for i in range(n)]))), field)
    if isinstance(g, Twist):
        eqs = [{2: 1, 1: -1}, {3: 1, 0: -1}]  # v1 = u2, v2 = u1
        return StepRelation(2, 2, 0, tuple(map(tuple, _rows(field, 4, eqs))), field)
    name = g.name
    if name.startswith("co_"):
        base = _generator_relation(Gen(name[3:], g.param), field)
        m, n = base.m, base.n
        # the mirror reads the same relation with u and v exchanged
        perm = list(range(m, m + n)) + list(range(m)) + list(range(m + n, base.width))
        rows = [tuple(row[j] for j in perm) for row in base.constraint]
        return StepRelation(n, m, base.d, tuple(rows), field)
    if name == "add":  # columns u1 u2 v
        eqs, m, n, d = [{2: 1, 0: -1, 1: -1}], 2, 1, 0
    elif name == "zero":  # v
        eqs, m, n, d = [{0: 1}], 0, 1, 0
    elif name == "copy":  # u v1 v2
        eqs, m, n, d = [{1: 1, 0: -1}, {2: 1, 0: -1}], 1, 2, 0
    elif name == "discard":
        eqs, m, n, d = [], 1, 0, 0
    elif name == "delay":  # u v r r'
        eqs, m, n, d = [{1: 1, 2: -1}, {3: 1, 0: -1}], 1, 1, 1
    elif name == "scalar":  # u v
        eqs, m, n, d = [{1: 1, 0: -g.param}], 1, 1, 0
    else:
        raise ValueError(f"unknown generator {name!r}")
    width = m + n + 2 * d
    return StepRelation(m, n, d, tuple(map(tuple, _rows(field, width, eqs))), field)


def _compose(a: StepRelation, b: StepRelation, field: Field) -> StepRelation:
    """Join on the shared wire w and project it away."""
    m, k, n, d1, d2 = a.m, a.n, b.n, a.d, b.d
    d = d1 + d2
    # combined columns: u | v | r1 r2 | r1' r2' | w
    U, V, R, R2, W = 0, m, m + n, m + n + d, m + n + 2 * d
    width = W + k
    amap = list(range(U, U + m)) + list(range(W, W + k)) + list(range(R, R + d1)) + list(range(R2, R2 + d1))
    bmap = list(range(W, W + k)) + list(range(V, V + n)) + list(range(R + d1, R + d)) + list(range(R2 + d1, R2 + d))
    rows = []
    for rel, cmap in ((a, amap), (b, bmap)):
        for row in rel.constraint:
            full = [field.zero] * width
            for j, c in zip(cmap, row):
                full[j] = c
            rows.append(full)
    kept = eliminate(field, rows, width, list(range(W)))
    return StepRelation(m, n, d, tuple(map(tuple, kept)), field)


def _tensor(a: StepRelation, b: StepRelation, field: Field) -> StepRelation:
    m, n, d = a.m + b.m, a.n + b.n, a.d + b.d
    width = m + n + 2 * d
    amap = (list(range(a.m)) + list(range(m, m + a.n)) + list(range(m + n, m + n + a.d))
            + list(range(m + n + d, m + n + d + a.d)))
    bmap = (list(range(a.m, m)) + list(range(m + a.n, m + n)) + list(range(m + n + a.d, m + n + d))
            + list(range(m + n + d + a.d, width)))
    rows = []
    for rel, cmap in ((a, amap), (b, bmap)):
        for row in rel.constraint:
            full = [field.zero] * width
            for j, c in zip(cmap, row):
                full[j] = c
            rows.append(full)
    return StepRelation(m, n, d, tuple(map(tuple, rows)), field)


def _as_typed(t) -> TypedTerm:
    if isinstance(t, str):
        t = parse(t)
    return t if isinstance(t, TypedTerm) else typecheck(t)


def step_relation(t: Term | TypedTerm | str, field: Field = QQ) -> StepRelation:
    tt = _as_typed(t)

    def fold(node: Term) -> StepRelation:
        if isinstance(node, Seq):
            return _compose(fold(node.left), fold(node.right), field)
        if isinstance(node, Tensor):
            return _tensor(fold(node.top), fold(node.bottom), field)
        return _generator_relation(node, field)

    rel = fold(tt.term)
    R, _ = rref(field, [list(r) for r in rel.constraint], rel.width)
    return StepRelation(rel.m, rel.n, rel.d, tuple(map(tuple, R)), field)


# -- states that lie on biinfinite runs ------------------------------------


def _state_fixpoint(rel: StepRelation, forward: bool) -> list[list]:
    """Constraint rows (over k^d) of the greatest set S of register states
    with a transition into S (forward) or out of S (backward)."""
    F, d = rel.field, rel.d
    if d == 0:
        return []
    w = rel.width
    src = rel.m + rel.n if forward else rel.m + rel.n + d
    dst = rel.m + rel.n + d if forward else rel.m + rel.n
    S: list[list] = []
    dim = d
    while True:
        rows = [list(r) for r in rel.constraint]
        for c in S:
            row = [F.zero] * w
            row[dst:dst + d] = c
            rows.append(row)
        S = eliminate(F, rows, w, list(range(src, src + d)))
        new_dim = d - rank(F, S, d)
        if new_dim == dim:
            return S
        dim = new_dim


def forward_states(t, field: Field = QQ) -> Subspace:
    """Register states admitting an infinite forward computation."""
    rel = step_relation(t, field)
    return Subspace.from_constraints(field, _state_fixpoint(rel, True), rel.d)


def backward_states(t, field: Field = QQ) -> Subspace:
    """Register states reachable from arbitrarily far in the past."""
    rel = step_relation(t, field)
    return Subspace.from_constraints(field, _state_fixpoint(rel, False), rel.d)


# -- unrolled windows -------------------------------------------------------


class _Unrolled:
    """Variables of an L-tick window: per tick (u, v), then registers 0..L."""

    def __init__(self, rel: StepRelation, L: int):
        self.rel, self.L = rel, L
        self.mn = rel.m + rel.n
        self.nsig = self.mn * L
        self.width = self.nsig + rel.d * (L + 1)
        F = rel.field
        self.rows: list[list] = []
        d = rel.d
        for t in range(L):
            cols = (list(range(self.sig(t), self.sig(t) + self.mn))
                    + list(range(self.reg(t), self.reg(t) + d))
                    + list(range(self.reg(t + 1), self.reg(t + 1) + d)))
            for row in rel.constraint:
                full = [F.zero] * self.width
                for j, c in zip(cols, row):
                    full[j] = c
                self.rows.append(full)

    def sig(self, t: int) -> int:
        return self.mn * t

    def reg(self, t: int) -> int:
        return self.nsig + self.rel.d * t

    def constrain_register(self, t: int, cons: list[list]) -> None:
        F, d = self.rel.field, self.rel.d
        for c in cons:
            full = [F.zero] * self.width
            full[self.reg(t):self.reg(t) + d] = c
            self.rows.append(full)


def _edges(u: _Unrolled, rel: StepRelation) -> None:
    u.constrain_register(0, _state_fixpoint(rel, False))
    u.constrain_register(u.L, _state_fixpoint(rel, True))


def opsem_window_set(t, L: int, field: Field = QQ) -> Subspace:
    """Boundary windows of length L produced by some register trajectory."""
    if L < 1:
        raise ValueError("window length must be positive")
    rel = step_relation(t, field)
    un = _Unrolled(rel, L)
    _edges(un, rel)
    cons = eliminate(field, un.rows, un.width, list(range(un.nsig)))
    return Subspace.from_constraints(field, cons, un.nsig)


def _window_vars(field: Field, rel: StepRelation, un: _Unrolled, w: TraceWindow):
    rows, rhs = list(un.rows), [field.zero] * len(un.rows)
    pins = []
    for t in range(un.L):
        base = un.sig(t)
        pins += [(base + i, x) for i, x in enumerate(w.u[t])]
        pins += [(base + rel.m + i, x) for i, x in enumerate(w.v[t])]
    for col, x in pins:
        row = [field.zero] * un.width
        row[col] = field.one
        rows.append(row)
        rhs.append(field(x))
    return rows, rhs


def check_window_trace(t, w: TraceWindow, field: Field = QQ) -> bool:
    """Whether the window is consistent with the term's tick relation.

    With registers given, every tick must satisfy the step relation with
    exactly those register values (a finite computation; the edge values are
    whatever the window says). Without registers, the boundary window must
    be the restriction of a biinfinite trace, i.e. lie in opsem_window_set.
    """
    rel = step_relation(t, field)
    if any(len(x) != rel.m for x in w.u) or any(len(x) != rel.n for x in w.v):
        raise ValueError("window boundary does not match the term's type")
    if w.registers is not None and any(len(r) != rel.d for r in w.registers):
        raise ValueError("window registers do not match the term's register count")
    if w.registers is not None:
        for k in range(w.length):
            if not rel.holds(w.u[k], w.v[k], w.registers[k], w.registers[k + 1]):
                return False
        return True
    un = _Unrolled(rel, w.length)
    _edges(un, rel)
    rows, rhs = _window_vars(field, rel, un, w)
    return solve(field, rows, rhs, un.width) is not None


def simulate(t, sigma: Sequence, inputs: Sequence[Sequence], L: int | None = None,
             direction: str = "forward", field: Field = QQ,
             outputs: Sequence[Sequence] | None = None) -> TraceWindow | None:
    """Run L ticks from (forward) or into (backward) the register state sigma.

    ``inputs`` (and optionally ``outputs``) are per-tick partial valuations:
    entries may be None. Whatever is left undetermined is set to 0. The
    result is None when the valuations are inconsistent.
    """
    rel = step_relation(t, field)
    if L is None:
        L = len(inputs)
    if L < 1:
        raise ValueError("window length must be positive")
    if len(sigma) != rel.d:
        raise ValueError(f"expected {rel.d} register values, got {len(sigma)}")
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    un = _Unrolled(rel, L)
    rows, rhs = list(un.rows), [field.zero] * len(un.rows)

    def pin(col, x):
        row = [field.zero] * un.width
        row[col] = field.one
        rows.append(row)
        rhs.append(field(x))

    def pin_partial(vals, offset, k, what):
        for tick, vec in enumerate(vals):
            if tick >= L:
                break
            if len(vec) != k:
                raise ValueError(f"{what} at tick {tick} has {len(vec)} entries, expected {k}")
            for i, x in enumerate(vec):
                if x is not None:
                    pin(un.sig(tick) + offset + i, x)

    pin_partial(inputs, 0, rel.m, "input")
    if outputs is not None:
        pin_partial(outputs, rel.m, rel.n, "output")
    anchor, far, far_forward = (0, L, True) if direction == "forward" else (L, 0, False)
    for i, x in enumerate(sigma):
        pin(un.reg(anchor) + i, x)
    # the open end must still continue indefinitely
    for c in _state_fixpoint(rel, far_forward):
        row = [field.zero] * un.width
        row[un.reg(far):un.reg(far) + rel.d] = c
        rows.append(row)
        rhs.append(field.zero)
    x = solve(field, rows, rhs, un.width)
    if x is None:
        return None
    t0 = 0 if direction == "forward" else -L
    u = tuple(tuple(x[un.sig(k):un.sig(k) + rel.m]) for k in range(L))
    v = tuple(tuple(x[un.sig(k) + rel.m:un.sig(k) + un.mn]) for k in range(L))
    regs = tuple(tuple(x[un.reg(k):un.reg(k) + rel.d]) for k in range(L + 1))
    return TraceWindow(t0, t0 + L - 1, u, v, regs)


# -- the denotational side ---------------------------------------------------


def _unrolled_kernel(K: PolyMatrix, lo: int, hi: int) -> list[list]:
    """Rows of the difference equations of ker K at every tick whose full
    stencil fits in [lo, hi]; columns are per tick (w_1 .. w_c)."""
    F, c = K.field, K.cols
    T = hi - lo + 1
    out = []
    for i in range(K.rows):
        terms = [(j, e, a) for j in range(c) for e, a in K[i, j].items()]
        if not terms:
            continue
        emin = min(e for _, e, _ in terms)
        emax = max(e for _, e, _ in terms)
        # (s^e w)(t) = w(t - e): the row at t touches t - emax .. t - emin
        for t in range(lo + emax, hi + emin + 1):
            row = [F.zero] * (T * c)
            for j, e, a in terms:
                col = (t - e - lo) * c + j
                row[col] = row[col] + a
            out.append(row)
    return out


def window_behavior(K: PolyMatrix, L: int, max_margin: int | None = None) -> Subspace:
    """Restriction of ker K to the ticks 0..L-1.

    The difference equations are unrolled over a margin M on either side and
    the margin is projected out; M grows until the projected dimension is
    the same for two consecutive margins and M is at least the total span
    of the rows (beyond which no new constraint can reach the window).
    """
    if L < 1:
        raise ValueError("window length must be positive")
    F, c = K.field, K.cols
    n = c * L
    floor = sum(max((K[i, j].span for j in range(c) if K[i, j]), default=0) for i in range(K.rows))
    if max_margin is None:
        max_margin = 4 * floor + 8
    prev = None
    M = 0
    while True:
        rows = _unrolled_kernel(K, -M, L - 1 + M)
        keep = list(range(M * c, M * c + n))
        cons = eliminate(F, rows, c * (L + 2 * M), keep)
        sub = Subspace.from_constraints(F, cons, n)
        if prev is not None and prev.dim == sub.dim and M > floor:
            return sub
        if M >= max_margin:
            return sub
        prev = sub
        M += 1


def compare_window_sets(t, L: int, field: Field = QQ) -> tuple[bool, Subspace, Subspace]:
    """Compare the operational window set with the denotational one."""
    from .semantics import corelation

    ops = opsem_window_set(t, L, field)
    den = window_behavior(corelation(t, field).kernel_rep, L)
    return ops == den, ops, den


__all__ = [
    "StepRelation",
    "TraceWindow",
    "step_relation",
    "forward_states",
    "backward_states",
    "simulate",
    "check_window_trace",
    "opsem_window_set",
    "window_behavior",
    "compare_window_sets",
]
