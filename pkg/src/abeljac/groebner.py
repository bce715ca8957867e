"""Buchberger's algorithm over Q with sugar selection and Gebauer-Moller pruning.

Polynomials are plain dicts ``{exponent tuple: Fraction}`` over a fixed
variable list.  Orders: ``grevlex``, ``lex`` and block orders (grevlex
inside each block, blocks compared lexicographically), which eliminate the
earlier blocks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Mono = tuple
Poly = dict  # Mono -> Fraction


class BudgetExhausted(RuntimeError):
    def __init__(self, message: str, pairs: int = 0, elapsed: float = 0.0):
        super().__init__(message)
        self.pairs = pairs
        self.elapsed = elapsed


@dataclass
class Budget:
    seconds: float | None = None
    max_pairs: int | None = None

    def start(self) -> "_Clock":
        return _Clock(self)


class _Clock:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.t0 = time.monotonic()
        self.pairs = 0

    def tick(self):
        self.pairs += 1
        b = self.budget
        elapsed = time.monotonic() - self.t0
        if b.max_pairs is not None and self.pairs > b.max_pairs:
            raise BudgetExhausted(f"S-pair budget of {b.max_pairs} exhausted", self.pairs, elapsed)
        if b.seconds is not None and elapsed > b.seconds:
            raise BudgetExhausted(f"time budget of {b.seconds}s exhausted", self.pairs, elapsed)


# ---------------------------------------------------------------------------
# orders


def grevlex_key(m: Mono):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Mono):
    return m


def block_key(sizes: Sequence[int]) -> Callable:
    cuts = []
    k = 0
    for s in sizes:
        cuts.append((k, k + s))
        k += s

    def key(m: Mono):
        return tuple(grevlex_key(m[a:b]) for a, b in cuts)

    return key


def order_key(order) -> Callable:
    if callable(order):
        return order
    if order == "grevlex":
        return grevlex_key
    if order == "lex":
        return lex_key
    if isinstance(order, tuple) and order[0] == "block":
        return block_key(order[1])
    raise ValueError(f"unknown monomial order {order!r}")


# ---------------------------------------------------------------------------
# polynomial helpers


def lm(p: Poly, key) -> Mono:
    return max(p, key=key)


def divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monic(p: Poly, key) -> Poly:
    c = p[lm(p, key)]
    if c == 1:
        return p
    inv = 1 / c
    return {m: v * inv for m, v in p.items()}


def _sub_scaled(p: Poly, q: Poly, c: Fraction, shift: Mono) -> None:
    """p -= c * x^shift * q, in place."""
    for m, v in q.items():
        k = tuple(a + b for a, b in zip(m, shift))
        w = p.get(k, 0) - c * v
        if w:
            p[k] = w
        else:
            p.pop(k, None)


def normal_form(f: Poly, G: Sequence[Poly], key, lms: Sequence[Mono] | None = None) -> Poly:
    """Full reduction of ``f`` modulo ``G`` (each element monic)."""
    if lms is None:
        lms = [lm(g, key) for g in G]
    p = dict(f)
    r: Poly = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, gm in zip(G, lms):
            if divides(gm, m):
                _sub_scaled(p, g, c, mono_div(m, gm))
                break
        else:
            r[m] = c
            del p[m]
    return r


def s_poly(f: Poly, g: Poly, key) -> Poly:
    mf, mg = lm(f, key), lm(g, key)
    L = mono_lcm(mf, mg)
    out: Poly = {}
    _sub_scaled(out, f, Fraction(-1) / f[mf], mono_div(L, mf))
    _sub_scaled(out, g, Fraction(1) / g[mg], mono_div(L, mg))
    return out


# ---------------------------------------------------------------------------
# Buchberger


def groebner(F: Iterable[Poly], order="grevlex", budget: Budget | None = None,
             strategy: str | None = None) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by ``F``.

    ``strategy`` picks the next S-pair: ``"sugar"`` (default for grevlex) or
    ``"normal"``, smallest lcm first (default for lex and block orders).
    """
    if strategy is None:
        strategy = "sugar" if order == "grevlex" else "normal"
    key = order_key(order)
    clock = (budget or Budget()).start()
    G: list[Poly] = []
    lms: list[Mono] = []
    sugar: list[int] = []
    alive: list[bool] = []
    pairs: list[tuple[int, int]] = []

    def deg(m: Mono) -> int:
        return sum(m)

    def pair_sugar(i: int, j: int) -> int:
        L = mono_lcm(lms[i], lms[j])
        return max(sugar[i] - deg(lms[i]), sugar[j] - deg(lms[j])) + deg(L)

    def select_key(i: int, j: int):
        L = key(mono_lcm(lms[i], lms[j]))
        return L if strategy == "normal" else (pair_sugar(i, j), L)

    def update(h: int):
        nonlocal pairs
        mh = lms[h]
        current = [i for i in range(h) if alive[i]]
        C = [(i, mono_lcm(mh, lms[i])) for i in current]
        D = []
        for idx, (i, L) in enumerate(C):
            if coprime(mh, lms[i]):
                D.append((i, L))
                continue
            rest = [L2 for _, L2 in C[idx + 1:]] + [L2 for _, L2 in D]
            if not any(divides(L2, L) for L2 in rest):
                D.append((i, L))
        E = [(i, h) for i, L in D if not coprime(mh, lms[i])]
        kept = []
        for (a, b) in pairs:
            L = mono_lcm(lms[a], lms[b])
            if divides(mh, L) and mono_lcm(lms[a], mh) != L and mono_lcm(lms[b], mh) != L:
                continue
            kept.append((a, b))
        pairs = kept + E
        for i in current:
            if divides(mh, lms[i]):
                alive[i] = False

    def add(p: Poly, s: int):
        p = monic(p, key)
        G.append(p)
        lms.append(lm(p, key))
        sugar.append(s)
        alive.append(True)
        update(len(G) - 1)

    for f in F:
        f = {m: Fraction(c) for m, c in f.items() if c}
        if not f:
            continue
        active = [i for i in range(len(G)) if alive[i]]
        f = normal_form(f, [G[i] for i in active], key, [lms[i] for i in active])
        if f:
            add(f, max(deg(m) for m in f))

    while pairs:
        clock.tick()
        best = min(range(len(pairs)), key=lambda k: select_key(*pairs[k]))
        i, j = pairs.pop(best)
        s = pair_sugar(i, j)
        sp = s_poly(G[i], G[j], key)
        active = [k for k in range(len(G)) if alive[k]]
        h = normal_form(sp, [G[k] for k in active], key, [lms[k] for k in active])
        if h:
            if all(v == 0 for v in lm(h, key)):
                return [{tuple(0 for _ in lm(h, key)): Fraction(1)}]
            add(h, s)

    basis = [G[i] for i in range(len(G)) if alive[i]]
    return reduce_basis(basis, key)


def reduce_basis(G: list[Poly], key) -> list[Poly]:
    G = [monic(g, key) for g in G if g]
    # drop elements whose leading monomial is divisible by another's
    G.sort(key=lambda g: key(lm(g, key)))
    minimal: list[Poly] = []
    for g in G:
        m = lm(g, key)
        if not any(divides(lm(h, key), m) for h in minimal):
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        out.append(monic(normal_form(g, others, key), key))
    out.sort(key=lambda g: key(lm(g, key)), reverse=True)
    return out


def is_unit_ideal(G: Sequence[Poly]) -> bool:
    return any(len(g) == 1 and all(v == 0 for v in next(iter(g))) for g in G)


def reduces_to_zero(f: Poly, G: Sequence[Poly], order="grevlex") -> bool:
    key = order_key(order)
    return not normal_form(f, G, key)
