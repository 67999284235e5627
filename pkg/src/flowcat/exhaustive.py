"""Brute-force window sets over a small prime field.

Transitions are enumerated generator by generator from the tick rules and
composed as finite relations, so nothing here goes through row reduction.
Only sensible for tiny terms over Z/p with p small.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from .diagram import Gen, Id, Seq, Tensor, Term, Twist, TypedTerm, parse, typecheck
from .field import PrimeField

# a transition is (u, v, r, r2), each a tuple of field elements


def _vectors(F: PrimeField, k: int):
    return itertools.product(F.elements(), repeat=k)


def _generator(g: Term, F: PrimeField) -> set:
    if isinstance(g, Id):
        return {(x, x, (), ()) for x in _vectors(F, g.n)}
    if isinstance(g, Twist):
        return {((a, b), (b, a), (), ()) for a, b in _vectors(F, 2)}
    name = g.name
    if name.startswith("co_"):
        return {(v, u, r, r2) for u, v, r, r2 in _generator(Gen(name[3:], g.param), F)}
    if name == "add":
        return {((a, b), (a + b,), (), ()) for a, b in _vectors(F, 2)}
    if name == "zero":
        return {((), (F.zero,), (), ())}
    if name == "copy":
        return {((a,), (a, a), (), ()) for a in F.elements()}
    if name == "discard":
        return {((a,), (), (), ()) for a in F.elements()}
    if name == "delay":
        # holding l, read k: emit l and hold k
        return {((k,), (l,), (l,), (k,)) for k, l in _vectors(F, 2)}
    if name == "scalar":
        c = F(g.param)
        return {((a,), (c * a,), (), ()) for a in F.elements()}
    raise ValueError(f"unknown generator {name!r}")


def transitions(t: Term | TypedTerm | str, F: PrimeField) -> set:
    if isinstance(t, str):
        t = parse(t)
    if isinstance(t, TypedTerm):
        t = t.term
    else:
        typecheck(t)

    def fold(node: Term) -> set:
        if isinstance(node, Seq):
            left, right = fold(node.left), fold(node.right)
            by_w = defaultdict(list)
            for w, v, r, r2 in right:
                by_w[w].append((v, r, r2))
            return {(u, v, r1 + r, r1n + r2)
                    for u, w, r1, r1n in left for v, r, r2 in by_w[w]}
        if isinstance(node, Tensor):
            return {(u1 + u2, v1 + v2, r1 + r2, s1 + s2)
                    for u1, v1, r1, s1 in fold(node.top)
                    for u2, v2, r2, s2 in fold(node.bottom)}
        return _generator(node, F)

    return fold(t)


def _fixpoint(trans: set, forward: bool) -> set:
    states = {r for _, _, r, _ in trans} | {r2 for _, _, _, r2 in trans}
    while True:
        if forward:
            nxt = {r for _, _, r, r2 in trans if r in states and r2 in states}
        else:
            nxt = {r2 for _, _, r, r2 in trans if r in states and r2 in states}
        if nxt == states:
            return states
        states = nxt


def window_set(t: Term | TypedTerm | str, L: int, F: PrimeField) -> set:
    """All flattened boundary windows (u(0), v(0), u(1), ...) of length L that
    some register run realizes, with edge states on biinfinite runs."""
    trans = transitions(t, F)
    fwd, back = _fixpoint(trans, True), _fixpoint(trans, False)
    by_state = defaultdict(list)
    for u, v, r, r2 in trans:
        by_state[r].append((u + v, r2))
    frontier = {r: {()} for r in back}
    for _ in range(L):
        nxt = defaultdict(set)
        for r, prefixes in frontier.items():
            for uv, r2 in by_state[r]:
                bucket = nxt[r2]
                for p in prefixes:
                    bucket.add(p + uv)
        frontier = nxt
    out = set()
    for r, prefixes in frontier.items():
        if r in fwd:
            out |= prefixes
    return out
