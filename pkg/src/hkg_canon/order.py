"""Colexicographic order on exponent tuples and on products of differentials.

Coordinate ``k`` (the top generator) is the most significant one.  Monomials
in the differentials are stored as colex-sorted tuples of their factor
indices, so ``w_A * w_B`` and ``w_B * w_A`` share one key.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import AmbiguousInitialTerm

ExpTuple = tuple[int, ...]
Monomial = tuple[ExpTuple, ...]


def colex_key(t: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(t))


def colex_cmp(u: Sequence[int], v: Sequence[int]) -> int:
    """Return -1, 0 or 1 as ``u`` is colex-smaller, equal or larger than ``v``."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            return -1 if a < b else 1
    return 0


def colex_sorted(tuples: Iterable[Sequence[int]]) -> list:
    return sorted(tuples, key=colex_key)


def monomial(*factors: Sequence[int]) -> Monomial:
    """Canonical key of the product of the given basis differentials."""
    return tuple(sorted((tuple(f) for f in factors), key=colex_key))


def exponent_sum(m: Monomial) -> ExpTuple:
    return tuple(map(sum, zip(*m)))


def product_cmp(m1: Monomial, m2: Monomial) -> int:
    """Term order on products: colex comparison of the coordinatewise sums."""
    return colex_cmp(exponent_sum(m1), exponent_sum(m2))


@lru_cache(maxsize=1 << 16)
def monomial_key(m: Monomial) -> tuple:
    """Total sort key refining the term order by the factors themselves.

    Among products with equal sums the one whose colex-smallest factor is
    colex-largest sorts last; this is the tie-break used for designated
    initial terms.
    """
    return (colex_key(exponent_sum(m)), tuple(colex_key(f) for f in m))


def initial_term(terms: Mapping[Monomial, int], tie_break: bool = False) -> Monomial:
    """The monomial of ``terms`` with colex-maximal exponent sum.

    Raises :class:`AmbiguousInitialTerm` if the maximum is shared, unless
    ``tie_break`` is set, in which case :func:`monomial_key` decides.
    """
    if not terms:
        raise ValueError("initial term of the zero form")
    ranked = sorted(terms, key=monomial_key)
    top = ranked[-1]
    if len(ranked) > 1 and exponent_sum(ranked[-2]) == exponent_sum(top) and not tie_break:
        raise AmbiguousInitialTerm(f"ambiguous initial term: {ranked[-2]} and {top} share sum {exponent_sum(top)}")
    return top
