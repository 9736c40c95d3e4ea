"""Exact arithmetic in the coordinate ring of a tower.

Elements are polynomials in ``f_0, ..., f_k`` over ``F_p`` kept in normal
form: the exponent of ``f_i`` (``i >= 1``) stays below ``p^{n_i}``.  The
defining equation of each step serves as the rewrite rule

    f_i^(p^n) -> D_i - sum_j a_j f_i^(p^j).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .order import ExpTuple, Monomial, colex_key
from .semigroup import norm
from .tower import Tower


class ReducedPoly:
    """A tower function in normal form; keys are reduced exponent tuples."""

    __slots__ = ("tower", "terms")

    def __init__(self, tower: Tower, terms: Mapping[ExpTuple, int] | None = None):
        p = tower.p
        self.tower = tower
        clean = {}
        for key, c in (terms or {}).items():
            c %= p
            if c:
                clean[tuple(key)] = c
        self.terms = dict(sorted(clean.items(), key=lambda kv: colex_key(kv[0])))

    @classmethod
    def one(cls, tower: Tower) -> ReducedPoly:
        return cls(tower, {(0,) * (tower.k + 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedPoly):
            return NotImplemented
        return self.tower == other.tower and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __add__(self, other: ReducedPoly) -> ReducedPoly:
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return ReducedPoly(self.tower, out)

    def __neg__(self) -> ReducedPoly:
        return ReducedPoly(self.tower, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: ReducedPoly) -> ReducedPoly:
        return self + (-other)

    def scale(self, c: int) -> ReducedPoly:
        return ReducedPoly(self.tower, {key: c * v for key, v in self.terms.items()})

    def __mul__(self, other: ReducedPoly) -> ReducedPoly:
        return multiply(self, other)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in reversed(self.terms.items()):
            factors = [f"f{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(key) if e]
            parts.append(f"{c}*" + "*".join(factors) if factors else str(c))
        return " + ".join(parts)


def _offending(tower: Tower, key: Sequence[int]) -> int:
    """Highest index whose exponent breaks the normal-form bound, or 0."""
    degrees = tower.degrees
    for i in range(len(key) - 1, 0, -1):
        if key[i] >= degrees[i - 1]:
            return i
    return 0


def _measure(tower: Tower, key: Sequence[int]) -> tuple[int, int]:
    i = _offending(tower, key)
    return (i, key[i]) if i else (0, 0)


def _rewrite(tower: Tower, key: ExpTuple, i: int) -> list[tuple[ExpTuple, int]]:
    """One application of step ``i``'s equation to ``f^key``."""
    step = tower.steps[i - 1]
    q = tower.degrees[i - 1]
    base = list(key)
    base[i] -= q
    out = []
    for lam, c in step.rhs.items():
        t = list(base)
        for nu, e in enumerate(lam):
            t[nu] += e
        out.append((tuple(t), c))
    for j, a in step.additive.items():
        t = list(base)
        t[i] += tower.p**j
        out.append((tuple(t), -a))
    return out


@lru_cache(maxsize=1 << 18)
def reduce_monomial(tower: Tower, key: ExpTuple) -> tuple[tuple[ExpTuple, int], ...]:
    """Normal form of ``f^key`` as a tuple of (reduced key, coefficient) pairs."""
    i = _offending(tower, key)
    if i == 0:
        return ((key, 1),)
    acc: dict[ExpTuple, int] = {}
    p = tower.p
    for t, c in _rewrite(tower, key, i):
        for r, d in reduce_monomial(tower, t):
            acc[r] = (acc.get(r, 0) + c * d) % p
    return tuple((r, c) for r, c in acc.items() if c)


def reduce(tower: Tower, terms: Mapping[Sequence[int], int] | Iterable[tuple[Sequence[int], int]]) -> ReducedPoly:
    """Normal form of an arbitrary polynomial in ``f_0, ..., f_k``.

    Works term by term off a worklist, always rewriting the pending term
    whose offending index and exponent are largest, so every rewrite
    strictly lowers a well-founded measure.
    """
    items = terms.items() if isinstance(terms, Mapping) else terms
    p = tower.p
    pending: dict[ExpTuple, int] = {}
    for key, c in items:
        key = tuple(key)
        pending[key] = (pending.get(key, 0) + c) % p
    done: dict[ExpTuple, int] = {}
    while pending:
        key = max(pending, key=lambda t: _measure(tower, t))
        c = pending.pop(key)
        if not c:
            continue
        i = _offending(tower, key)
        if i == 0:
            done[key] = (done.get(key, 0) + c) % p
            continue
        for t, d in _rewrite(tower, key, i):
            pending[t] = (pending.get(t, 0) + c * d) % p
    return ReducedPoly(tower, done)


def monomial_function(tower: Tower, key: Sequence[int], coeff: int = 1) -> ReducedPoly:
    return ReducedPoly(tower, {r: coeff * c for r, c in reduce_monomial(tower, tuple(key))})


def multiply(a: ReducedPoly, b: ReducedPoly) -> ReducedPoly:
    tower = a.tower
    if b.tower != tower:
        raise ValueError("operands belong to different towers")
    acc: dict[ExpTuple, int] = {}
    p = tower.p
    for s, c in a.terms.items():
        for t, d in b.terms.items():
            u = tuple(x + y for x, y in zip(s, t))
            for r, e in reduce_monomial(tower, u):
                acc[r] = (acc.get(r, 0) + c * d * e) % p
    return ReducedPoly(tower, acc)


def naive_product(a: ReducedPoly, b: ReducedPoly) -> dict[ExpTuple, int]:
    """Unreduced product of two polynomials."""
    acc: dict[ExpTuple, int] = {}
    for s, c in a.terms.items():
        for t, d in b.terms.items():
            u = tuple(x + y for x, y in zip(s, t))
            acc[u] = acc.get(u, 0) + c * d
    return acc


def valuation_at_P(a: ReducedPoly) -> float:
    """``-max norm`` over the support; ``math.inf`` for zero."""
    if not a.terms:
        return math.inf
    return -max(norm(a.tower, key) for key in a.terms)


def phi_image(tower: Tower, form: Mapping[Monomial, int]) -> ReducedPoly:
    """Image of a form in the differentials under the canonical map.

    The product ``w_A w_B ...`` goes to ``f_{A+B+...} df_0^{(deg)}``; the
    differential factor is dropped.  Accepts any object with a ``terms``
    mapping or a plain mapping from monomials to coefficients.
    """
    terms = getattr(form, "terms", form)
    acc: dict[ExpTuple, int] = {}
    p = tower.p
    for m, c in terms.items():
        u = tuple(map(sum, zip(*m)))
        for r, e in reduce_monomial(tower, u):
            acc[r] = (acc.get(r, 0) + c * e) % p
    return ReducedPoly(tower, acc)


def kernel_membership(tower: Tower, form: Mapping[Monomial, int]) -> bool:
    return phi_image(tower, form).is_zero()
