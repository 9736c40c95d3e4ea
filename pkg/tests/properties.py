"""Randomized invariants, each run at 10^4 examples by the acceptance suite.

Kept out of pytest collection (no ``test_`` prefix) so every property runs
once at full size; ``CALLS`` counts the examples that reached the assertion.
"""

from __future__ import annotations

import functools
from collections import Counter

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from hkg_canon import (
    ReducedPoly,
    Tower,
    TowerStep,
    assemble_J,
    build_Gvi,
    colex_cmp,
    enumerate_v,
    norm,
    petri_report,
    quotient_dim_check,
    reduce,
    valuation_at_P,
)
from hkg_canon.funcfield import multiply, naive_product
from hkg_canon.order import colex_key, colex_sorted, exponent_sum
from hkg_canon.relations import SkipDiagnostic, relation_tuples, resolve
from hkg_canon.semigroup import minkowski_sum

EXAMPLES = 10_000
CALLS: Counter = Counter()

SETTINGS = settings(
    max_examples=EXAMPLES,
    deadline=None,
    derandomize=True,
    database=None,
    suppress_health_check=list(HealthCheck),
)


def _coeff(p):
    return st.integers(1, p - 1)


def _k1_shapes(petri: bool, max_genus: int) -> list[tuple[int, int, int]]:
    shapes = []
    for p, n in [(3, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)]:
        q = p**n
        for m in range(2, 2 * max_genus // (q - 1) + 2):
            if m % p == 0 or (m - 1) * (q - 1) // 2 > max_genus:
                continue
            if petri and not petri_report(Tower.artin_schreier(p, n, m)).verdict:
                continue
            shapes.append((p, n, m))
    return shapes


@st.composite
def k1_towers(draw, petri: bool = False, max_genus: int = 25):
    # the gates depend only on (p, n, m), so valid shapes are listed up front
    p, n, m = draw(st.sampled_from(_k1_shapes(petri, max_genus)))
    additive = {j: draw(st.integers(0, p - 1)) for j in range(1, n)}
    additive[0] = draw(_coeff(p))
    rhs = {(m,): draw(_coeff(p))}
    for e in draw(st.lists(st.integers(0, m - 1), max_size=3, unique=True)):
        rhs[(e,)] = draw(_coeff(p))
    return Tower(p, (TowerStep(n, additive, rhs),))


@st.composite
def k2_towers(draw, petri: bool = False, max_genus: int = 40):
    """Two degree-p steps; the leading rhs monomial is chosen so the tower is valid."""
    p, m = draw(st.sampled_from([(3, 8), (5, 4), (5, 6), (5, 7)] if petri else [(3, 4), (3, 5), (3, 7), (3, 8), (5, 4), (5, 6), (5, 7)]))
    g1 = (m - 1) * (p - 1) // 2
    # largest jump keeping the genus in range, from 2(g - 1) = p(2 g1 - 2) + (b + 1)(p - 1)
    bmax = (2 * max_genus - 2 - p * (2 * g1 - 2)) // (p - 1) - 1
    b = draw(st.integers(1, p - 1))
    amin = 0 if b > 1 else 1
    amax = (bmax - b * m) // p
    assume(amax >= amin)
    a = draw(st.integers(amin, amax))
    jump = p * a + b * m
    rhs = {(a, b): draw(_coeff(p))}
    for x, y in draw(st.lists(st.tuples(st.integers(0, a + m), st.integers(0, p - 1)), max_size=2)):
        if p * x + m * y < jump:
            rhs[(x, y)] = draw(_coeff(p))
    step1 = TowerStep(1, {0: draw(_coeff(p))}, {(m,): 1})
    T = Tower(p, (step1, TowerStep(1, {0: draw(_coeff(p))}, rhs)))
    if petri:
        assume(petri_report(T).verdict)
    return T


def towers(petri: bool = False):
    return st.one_of(k1_towers(petri=petri), k2_towers(petri=petri))


@st.composite
def reduced_tuple(draw, T: Tower, top0: int = 40):
    return tuple([draw(st.integers(0, top0))] + [draw(st.integers(0, q - 1)) for q in T.degrees])


@st.composite
def reduced_poly(draw, T: Tower, max_terms: int = 4):
    keys = draw(st.lists(reduced_tuple(T, 12), min_size=1, max_size=max_terms, unique=True))
    return ReducedPoly(T, {k: draw(_coeff(T.p)) for k in keys})


# -- properties -----------------------------------------------------------


@SETTINGS
@given(st.data())
def prop_norm_injective(data):
    T = data.draw(towers())
    s = data.draw(reduced_tuple(T))
    t = data.draw(reduced_tuple(T))
    assume(s != t)
    CALLS["norm_injective"] += 1
    assert norm(T, s) != norm(T, t)


@SETTINGS
@given(st.data())
def prop_downward_closure(data):
    T = data.draw(towers())
    S = minkowski_sum(T)
    u = data.draw(st.sampled_from(S))
    lower = tuple(data.draw(st.integers(0, x)) for x in u)
    CALLS["downward_closure"] += 1
    assert lower in S


@SETTINGS
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(0, 6), min_size=n, max_size=n).map(tuple), min_size=3, max_size=3)))
def prop_colex_laws(triple):
    u, v, w = triple
    CALLS["colex_laws"] += 1
    assert colex_cmp(u, v) == -colex_cmp(v, u)
    assert (colex_cmp(u, v) == 0) == (u == v)
    if colex_cmp(u, v) <= 0 and colex_cmp(v, w) <= 0:
        assert colex_cmp(u, w) <= 0
    by_cmp = sorted(triple, key=functools.cmp_to_key(colex_cmp))
    assert by_cmp == colex_sorted(triple) == sorted(triple, key=colex_key)


@SETTINGS
@given(st.data())
def prop_valuation_multiplicative(data):
    T = data.draw(towers())
    a = data.draw(reduced_poly(T))
    b = data.draw(reduced_poly(T))
    CALLS["valuation_multiplicative"] += 1
    assert valuation_at_P(a * b) == valuation_at_P(a) + valuation_at_P(b)


@SETTINGS
@given(st.data())
def prop_reduce_and_multiply(data):
    T = data.draw(towers())
    a = data.draw(reduced_poly(T))
    b = data.draw(reduced_poly(T))
    c = data.draw(reduced_poly(T, 2))
    raw = {tuple(x + 2 * T.degrees[-1] * (i == T.k) for i, x in enumerate(k)): v for k, v in a.terms.items()}
    CALLS["reduce_multiply"] += 1
    assert reduce(T, a.terms) == a
    once = reduce(T, raw)
    assert reduce(T, once.terms) == once
    assert all(T.is_reduced(k) for k in once.terms)
    ab = multiply(a, b)
    assert ab == reduce(T, naive_product(a, b)) == multiply(b, a)
    assert multiply(ab, c) == multiply(a, multiply(b, c))


@SETTINGS
@given(st.data())
def prop_initG_shape(data):
    T = data.draw(towers(petri=True))
    CALLS["initG_shape"] += 1
    for i in range(1, T.k + 1):
        for v in enumerate_v(T, i):
            G = build_Gvi(T, v, i)
            if isinstance(G, SkipDiagnostic) or G.is_zero():
                continue
            gamma0 = relation_tuples(T, v, i)[0][0]
            lead = G.initial()
            assert lead == resolve(T, gamma0)
            h = norm(T, gamma0)
            assert any(m != lead and norm(T, exponent_sum(m)) == h for m in G.terms)


@SETTINGS
@given(k1_towers(petri=True))
def prop_phi_bijective(T):
    CALLS["phi_bijective"] += 1
    J, _ = assemble_J(T)
    check = quotient_dim_check(T, J)
    assert check.phi_bijective and check.passed


PROPERTIES = {
    "norm_injective": prop_norm_injective,
    "downward_closure": prop_downward_closure,
    "colex_laws": prop_colex_laws,
    "valuation_multiplicative": prop_valuation_multiplicative,
    "reduce_multiply": prop_reduce_and_multiply,
    "initG_shape": prop_initG_shape,
    "phi_bijective": prop_phi_bijective,
}
