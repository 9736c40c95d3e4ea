"""Independent certification of a generating set by exact linear algebra over F_p.

Nothing here looks at how the generators were built: the kernel of the
canonical map in a fixed degree is computed directly as a nullspace, and a
candidate set is compared against it by rank.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from .errors import PhiBijectionError
from .funcfield import reduce_monomial
from .order import Monomial, monomial, monomial_key
from .relations import QuadForm, all_quad_monomials, phi_class_map, survivors
from .semigroup import basis_A, norm_classes
from .tower import Tower

log = logging.getLogger(__name__)

DEG3_CEILING = 200_000


def row_reduce(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M`` over ``F_p`` and its pivot columns.

    Pivots are taken column by column; within a column the first nonzero
    row (by index) wins.  Zero rows are dropped from the result.
    """
    A = np.array(M, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(row_reduce(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of ``{x : M x = 0}``, one vector per free column with a 1 there."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        R, pivots = np.zeros((0, ncols), dtype=np.int64), []
    else:
        R, pivots = row_reduce(M, p)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = np.zeros(ncols, dtype=np.int64)
        x[free] = 1
        for row, pc in enumerate(pivots):
            x[pc] = -R[row, free] % p
        basis.append(x)
    return basis


def _form_matrix(forms: Sequence[QuadForm], index: dict[Monomial, int], p: int) -> np.ndarray:
    M = np.zeros((len(forms), len(index)), dtype=np.int64)
    for r, q in enumerate(forms):
        for m, c in q.terms.items():
            M[r, index[m]] = c % p
    return M


def _image_matrix(tower: Tower, columns: Sequence[Monomial]) -> np.ndarray:
    """Columns are the normal forms of ``f_{sum of factors}`` for each monomial."""
    images = [reduce_monomial(tower, tuple(map(sum, zip(*m)))) for m in columns]
    rows: dict[tuple, int] = {}
    for img in images:
        for key, _ in img:
            rows.setdefault(key, len(rows))
    M = np.zeros((len(rows), len(columns)), dtype=np.int64)
    for j, img in enumerate(images):
        for key, c in img:
            M[rows[key], j] = c
    return M


def kernel_basis(tower: Tower, columns: Sequence[Monomial]) -> list[QuadForm]:
    M = _image_matrix(tower, columns)
    return [
        QuadForm(tower.p, {columns[j]: int(x[j]) for j in np.flatnonzero(x)}) for x in nullspace(M, tower.p)
    ]


def deg2_kernel_basis(tower: Tower) -> list[QuadForm]:
    """Basis of the degree-2 part of the kernel of the canonical map."""
    basis = kernel_basis(tower, all_quad_monomials(tower))
    log.info("degree-2 kernel: dimension %d", len(basis))
    return basis


@dataclass(frozen=True)
class SpanVerdict:
    dim_J: int
    dim_kernel: int
    dim_sum: int

    @property
    def equal(self) -> bool:
        return self.dim_J == self.dim_kernel == self.dim_sum

    def __bool__(self) -> bool:
        return self.equal


def span_compare(J: Sequence[QuadForm], kernel: Sequence[QuadForm], p: int) -> SpanVerdict:
    """Compare the ``F_p``-spans of two sets of forms."""
    mons = sorted({m for q in (*J, *kernel) for m in q.terms}, key=monomial_key)
    index = {m: i for i, m in enumerate(mons)}
    MJ = _form_matrix(J, index, p)
    MK = _form_matrix(kernel, index, p)
    return SpanVerdict(rank(MJ, p), rank(MK, p), rank(np.vstack([MJ, MK]), p))


@dataclass(frozen=True)
class QuotientCheck:
    survivors: int
    classes: int
    bound: int
    phi_bijective: bool

    @property
    def passed(self) -> bool:
        return self.survivors == self.classes and self.survivors <= self.bound

    def as_tuple(self) -> tuple[int, int, int, bool]:
        return (self.survivors, self.classes, self.bound, self.passed)


def quotient_dim_check(tower: Tower, J: Sequence[QuadForm]) -> QuotientCheck:
    surv = survivors(tower, J)
    classes = len(norm_classes(tower))
    try:
        phi_class_map(tower, surv)
        bijective = True
    except PhiBijectionError:
        bijective = False
    return QuotientCheck(len(surv), classes, 3 * tower.genus - 3, bijective)


def cubic_monomials(tower: Tower) -> list[Monomial]:
    return sorted((monomial(*c) for c in combinations_with_replacement(basis_A(tower), 3)), key=monomial_key)


@dataclass(frozen=True)
class Deg3Check:
    monomials: int
    kernel_dim: int | None
    span_dim: int | None
    sum_dim: int | None = None
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return not self.skipped and self.kernel_dim == self.span_dim == self.sum_dim

    @property
    def status(self) -> str:
        if self.skipped:
            return "skipped (size)"
        return "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed


def linear_multiples(tower: Tower, J: Iterable[QuadForm]) -> list[QuadForm]:
    """All products ``w_C * q`` for basis differentials ``w_C`` and ``q`` in ``J``."""
    out = []
    for q in J:
        for c in basis_A(tower):
            out.append(QuadForm(tower.p, {monomial(*m, c): v for m, v in q.terms.items()}))
    return out


def deg3_generation_check(tower: Tower, J: Sequence[QuadForm], ceiling: int = DEG3_CEILING) -> Deg3Check:
    """Does ``Sym^1 * J`` fill the degree-3 kernel?

    Refused (``skipped``) when ``#cubic monomials * #products`` exceeds
    ``ceiling`` matrix entries.
    """
    cols = cubic_monomials(tower)
    nprod = tower.genus * len(J)
    if len(cols) * max(nprod, 1) > ceiling:
        log.warning("degree-3 check skipped: %d x %d entries over ceiling %d", nprod, len(cols), ceiling)
        return Deg3Check(len(cols), None, None, skipped=True)
    kernel = kernel_basis(tower, cols)
    verdict = span_compare(linear_multiples(tower, J), kernel, tower.p)
    log.info("degree-3: kernel %d, products %d, joint %d", verdict.dim_kernel, verdict.dim_J, verdict.dim_sum)
    return Deg3Check(len(cols), verdict.dim_kernel, verdict.dim_J, verdict.dim_sum)
