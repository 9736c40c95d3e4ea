"""Quadratic relations among the basis differentials.

Two families are built: binomials identifying products with the same index
sum, and one relation per admissible shift ``v`` and step ``i`` obtained by
multiplying the step equation by ``f^v`` and reading every term as a
product of two basis differentials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import PetriPreconditionError, PhiBijectionError
from .order import ExpTuple, Monomial, colex_key, colex_sorted, exponent_sum, initial_term, monomial, monomial_key
from .semigroup import NormClass, basis_A, decompose_all, iter_bounded, minkowski_sum, norm, norm_classes
from .funcfield import reduce_monomial
from .tower import Tower, petri_report


class QuadForm:
    """A linear combination of products of basis differentials over ``F_p``.

    ``source`` records which family produced the form (``"G0"``, or
    ``"G"`` with the shift and step); it does not take part in equality.
    """

    __slots__ = ("p", "terms", "source")

    def __init__(self, p: int, terms: Mapping[Monomial, int] | None = None, source: tuple = ()):
        self.p = p
        merged: dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            m = monomial(*m)
            merged[m] = (merged.get(m, 0) + c) % p
        self.terms = {m: c for m, c in sorted(merged.items(), key=lambda kv: monomial_key(kv[0]), reverse=True) if c}
        self.source = source

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    def scale(self, c: int) -> QuadForm:
        return QuadForm(self.p, {m: c * v for m, v in self.terms.items()}, self.source)

    def __neg__(self) -> QuadForm:
        return self.scale(-1)

    def __add__(self, other: QuadForm) -> QuadForm:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return QuadForm(self.p, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadForm):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.p, tuple(self.terms.items())))

    def initial(self) -> Monomial:
        """Designated initial monomial (ties on the index sum broken by factors)."""
        return initial_term(self.terms, tie_break=True)

    def normalized(self) -> QuadForm:
        """Rescaled so the designated initial monomial has coefficient 1."""
        if not self.terms:
            return self
        lead = self.terms[self.initial()]
        return self.scale(pow(lead, -1, self.p))

    def __repr__(self) -> str:
        return f"QuadForm(p={self.p}, {self.terms!r})"


@dataclass(frozen=True)
class SkipDiagnostic:
    """A candidate relation left out because one of its tuples is not a sum of two basis tuples."""

    v: ExpTuple
    step: int
    tuple: ExpTuple
    reason: str


def build_G0(tower: Tower, minimal: bool = False) -> list[QuadForm]:
    """Binomials ``w_L w_K - w_L' w_K'`` with ``L + K = L' + K'``.

    By default every pair of decompositions of a sum gives one binomial.
    With ``minimal`` each family is tied to its first decomposition only,
    which spans the same space with no redundancy.  Either way the first
    decomposition is never an initial term.
    """
    forms = []
    for u in minkowski_sum(tower):
        decs = decompose_all(tower, u)
        for i, first in enumerate(decs):
            # decompositions come in tie-break order, so ``other`` is the initial term
            for other in decs[i + 1 :]:
                forms.append(QuadForm(tower.p, {other: 1, first: -1}, ("G0", u)))
            if minimal:
                break
    return forms


def enumerate_v(tower: Tower, i: int) -> list[ExpTuple]:
    """Shifts ``v`` with ``||v|| + p^{n_i} m_i <= 4g - 4``, colex-ascending."""
    if not 1 <= i <= tower.k:
        raise ValueError(f"step index {i} outside 1..{tower.k}")
    budget = 4 * tower.genus - 4 - tower.degrees[i - 1] * tower.generators[i]
    return colex_sorted(iter_bounded(tower.generators, budget))


def _shift(v: Sequence[int], idx: int, amount: int) -> ExpTuple:
    t = list(v)
    t[idx] += amount
    return tuple(t)


def relation_tuples(tower: Tower, v: Sequence[int], i: int) -> list[tuple[ExpTuple, int]]:
    """The (index sum, coefficient) pairs of the step-``i`` relation shifted by ``v``."""
    p = tower.p
    step = tower.steps[i - 1]
    n = step.n
    out = [(_shift(v, i, p**n), 1)]
    for nu in range(1, n + 1):
        a = step.additive.get(n - nu, 0)
        if a:
            out.append((_shift(v, i, p ** (n - nu)), a))
    for lam, c in step.rhs.items():
        beta = tuple(x + (lam[j] if j < len(lam) else 0) for j, x in enumerate(v))
        out.append((beta, -c))
    return out


def build_Gvi(tower: Tower, v: Sequence[int], i: int, rewrite: bool = False) -> QuadForm | SkipDiagnostic:
    """The step-``i`` relation multiplied by ``f^v``, written in products of basis differentials.

    Each index sum is replaced by its first exact decomposition.  A
    non-leading sum without one may, when ``rewrite`` is set and the sum is
    not in normal form, be replaced by the normal form of its monomial,
    provided every resulting monomial decomposes.  Otherwise the candidate
    is skipped with a diagnostic naming the offending sum.
    """
    v = tuple(v)
    if len(v) != tower.k + 1 or any(x < 0 for x in v):
        raise ValueError(f"shift {v} is not a nonnegative tuple of length {tower.k + 1}")
    if norm(tower, v) + tower.degrees[i - 1] * tower.generators[i] > 4 * tower.genus - 4:
        raise ValueError(f"shift {v} lies outside the admissible region for step {i}")
    terms: dict[Monomial, int] = {}
    for pos, (t, c) in enumerate(relation_tuples(tower, v, i)):
        decs = decompose_all(tower, t)
        if decs:
            terms[decs[0]] = terms.get(decs[0], 0) + c
            continue
        expansion = _rewritten(tower, t) if rewrite and pos > 0 else None
        if expansion is None:
            return SkipDiagnostic(v, i, t, f"{t} is not a sum of two basis tuples")
        for m, d in expansion:
            terms[m] = terms.get(m, 0) + c * d
    return QuadForm(tower.p, terms, ("G", v, i))


def _rewritten(tower: Tower, t: ExpTuple) -> list[tuple[Monomial, int]] | None:
    if tower.is_reduced(t):
        return None
    out = []
    for r, c in reduce_monomial(tower, t):
        decs = decompose_all(tower, r)
        if not decs:
            return None
        out.append((decs[0], c))
    return out


def assemble_J(tower: Tower, rewrite: bool = False) -> tuple[list[QuadForm], list[SkipDiagnostic]]:
    """Full generating set: binomials first, then step relations by step and shift."""
    report = petri_report(tower)
    if not report.verdict:
        names = ", ".join(f"step {g.step} {g.name}" for g in report.failures)
        raise PetriPreconditionError(f"Petri preconditions unmet: {names}")
    forms = build_G0(tower)
    skipped: list[SkipDiagnostic] = []
    for i in range(1, tower.k + 1):
        for v in enumerate_v(tower, i):
            res = build_Gvi(tower, v, i, rewrite)
            if isinstance(res, SkipDiagnostic):
                skipped.append(res)
            elif not res.is_zero():
                forms.append(res)
    return forms, skipped


def all_quad_monomials(tower: Tower) -> list[Monomial]:
    A = basis_A(tower)
    return sorted((monomial(a, b) for i, a in enumerate(A) for b in A[i:]), key=monomial_key)


def survivors(tower: Tower, J: Iterable[QuadForm]) -> list[Monomial]:
    """Degree-2 monomials that are not the designated initial term of any element of ``J``."""
    leading = {q.initial() for q in J if not q.is_zero()}
    return [m for m in all_quad_monomials(tower) if m not in leading]


def phi_class_map(tower: Tower, surv: Sequence[Monomial]) -> dict[Monomial, NormClass]:
    """Send each surviving product ``w_L w_K`` to the norm class of ``L + K``.

    Raises :class:`PhiBijectionError` unless this is a bijection onto the
    norm classes.
    """
    by_norm = {c.norm: c for c in norm_classes(tower)}
    image: dict[Monomial, NormClass] = {}
    hit: dict[int, Monomial] = {}
    for m in surv:
        h = norm(tower, exponent_sum(m))
        if h in hit:
            raise PhiBijectionError(f"Phi bijection failure: {hit[h]} and {m} both map to norm {h}")
        hit[h] = m
        image[m] = by_norm[h]
    missing = sorted(set(by_norm) - set(hit))
    if missing:
        raise PhiBijectionError(f"Phi bijection failure: norm classes {missing} not hit")
    return image


def resolve(tower: Tower, t: Sequence[int]) -> Monomial | None:
    """The product used to stand for index sum ``t``, if any."""
    decs = decompose_all(tower, t)
    return decs[0] if decs else None

