"""The exponent set A indexing holomorphic differentials, its Minkowski sum,
and the pole-order norm that groups sums into equivalence classes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import InvariantError
from .order import ExpTuple, Monomial, colex_key, colex_sorted, monomial
from .tower import Tower


def norm(tower: Tower, t: Sequence[int]) -> int:
    gens = tower.generators
    if len(t) != len(gens):
        raise ValueError(f"tuple {tuple(t)} has length {len(t)}, expected {len(gens)}")
    return sum(e * g for e, g in zip(t, gens))


def iter_bounded(weights: Sequence[int], budget: int, caps: Sequence[int | None] | None = None) -> Iterator[ExpTuple]:
    """All nonnegative tuples ``t`` with ``sum(t_i w_i) <= budget`` and ``t_i < caps[i]``."""
    n = len(weights)
    if caps is None:
        caps = (None,) * n
    if budget < 0:
        return

    def rec(pos: int, remaining: int, prefix: list[int]) -> Iterator[ExpTuple]:
        if pos == n:
            yield tuple(prefix)
            return
        top = remaining // weights[pos]
        if caps[pos] is not None:
            top = min(top, caps[pos] - 1)
        for e in range(top + 1):
            prefix.append(e)
            yield from rec(pos + 1, remaining - e * weights[pos], prefix)
            prefix.pop()

    yield from rec(0, budget, [])


@lru_cache(maxsize=256)
def basis_A(tower: Tower) -> tuple[ExpTuple, ...]:
    """Reduced tuples of norm at most ``2g - 2``, colex-ascending; one per basis differential."""
    g = tower.genus
    result = tuple(colex_sorted(iter_bounded(tower.generators, 2 * g - 2, tower.bounds)))
    if len(result) != g:
        raise InvariantError(f"basis count mismatch: |A| = {len(result)} but g = {g}")
    return result


@lru_cache(maxsize=256)
def bounded_H(tower: Tower, s: int) -> tuple[int, ...]:
    """Semigroup elements up to ``s(2g - 2)``."""
    if s < 1:
        raise ValueError("s must be positive")
    g = tower.genus
    top = s * (2 * g - 2)
    member = [False] * (top + 1)
    member[0] = True
    gens = tower.generators
    for x in range(1, top + 1):
        member[x] = any(x >= a and member[x - a] for a in gens)
    result = tuple(x for x in range(top + 1) if member[x])
    expected = g if s == 1 else (2 * s - 1) * (g - 1)
    if len(result) != expected:
        raise InvariantError(f"#H_{s} = {len(result)}, expected {expected}")
    return result


@lru_cache(maxsize=256)
def minkowski_sum(tower: Tower) -> tuple[ExpTuple, ...]:
    """``A + A`` as a colex-sorted tuple without repetitions."""
    A = basis_A(tower)
    sums = {tuple(a + b for a, b in zip(s, t)) for i, s in enumerate(A) for t in A[i:]}
    return tuple(colex_sorted(sums))


@dataclass(frozen=True)
class NormClass:
    norm: int
    members: tuple[ExpTuple, ...]

    @property
    def representative(self) -> ExpTuple:
        return self.members[0]


@lru_cache(maxsize=256)
def norm_classes(tower: Tower) -> tuple[NormClass, ...]:
    """Partition of ``A + A`` by norm, ordered by norm."""
    groups: dict[int, list[ExpTuple]] = {}
    for u in minkowski_sum(tower):
        groups.setdefault(norm(tower, u), []).append(u)
    classes = tuple(NormClass(h, tuple(colex_sorted(ms))) for h, ms in sorted(groups.items()))
    if len(classes) > 3 * tower.genus - 3:
        raise InvariantError(f"{len(classes)} norm classes exceed 3g - 3 = {3 * tower.genus - 3}")
    return classes


@lru_cache(maxsize=256)
def _class_by_norm(tower: Tower) -> dict[int, NormClass]:
    return {c.norm: c for c in norm_classes(tower)}


def class_of(tower: Tower, u: Sequence[int]) -> NormClass:
    try:
        return _class_by_norm(tower)[norm(tower, u)]
    except KeyError:
        raise ValueError(f"{tuple(u)} is not in A + A") from None


@lru_cache(maxsize=256)
def _decompositions(tower: Tower) -> dict[ExpTuple, tuple[Monomial, ...]]:
    A = basis_A(tower)
    found: dict[ExpTuple, list[Monomial]] = {}
    for i, s in enumerate(A):
        for t in A[i:]:
            u = tuple(a + b for a, b in zip(s, t))
            found.setdefault(u, []).append(monomial(s, t))
    # the pair with the colex-smallest factor first
    return {u: tuple(sorted(ms, key=lambda m: colex_key(m[0]))) for u, ms in found.items()}


def decompose_all(tower: Tower, u: Sequence[int]) -> tuple[Monomial, ...]:
    """Every unordered pair ``(A, B)`` of basis tuples with ``A + B = u`` exactly.

    The first entry is the pair whose smaller factor is colex-smallest; an
    empty result means ``u`` is not in ``A + A``.
    """
    return _decompositions(tower).get(tuple(u), ())


def gamma_set(tower: Tower, u: Sequence[int]) -> frozenset[Monomial]:
    """Products ``w_A w_B`` whose index sum has the same norm as ``u``."""
    cls = class_of(tower, u)
    return frozenset(m for member in cls.members for m in decompose_all(tower, member))
