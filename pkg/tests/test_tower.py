import pytest

from hkg_canon import Tower, TowerError, TowerStep, level_norm, petri_report


def test_level_norm_vectors(e9):
    assert level_norm(e9, (4,), 1) == 4
    assert level_norm(e9, (0,), 1) == 0
    T = Tower.from_steps(3, [(1, {0: -1}, {(8,): 1}), (1, {0: -1}, {(2, 1): 1})])
    assert level_norm(T, (2, 1), 2) == 2 * 3 + 1 * 8
    assert level_norm(T, (0, 0), 2) == 0


def test_level_norm_length_mismatch(e9):
    with pytest.raises(ValueError):
        level_norm(e9, (1, 2), 1)


def test_jumps():
    assert Tower.artin_schreier(7, 1, 4).jumps == (4,)
    assert Tower.artin_schreier(3, 1, 8).jumps == (8,)


def test_jump_not_coprime():
    with pytest.raises(TowerError, match="jump not coprime to p") as info:
        Tower.from_steps(3, [(1, {0: -1}, {(8,): 1}), (1, {0: -1}, {(10, 0): 1})])
    assert info.value.rule == "jump-not-coprime"


def test_jumps_must_increase():
    with pytest.raises(TowerError) as info:
        Tower.from_steps(5, [(1, {0: -1}, {(7,): 1}), (1, {0: -1}, {(0, 1): 1})])  # b_2 = 7 = b_1
    assert info.value.rule == "jumps-not-increasing"


def test_genera():
    assert Tower.artin_schreier(7, 1, 4).genera == (0, 9)
    assert Tower.artin_schreier(5, 1, 7).genera == (0, 12)
    assert Tower.artin_schreier(3, 2, 4).genera[0] == 0


@pytest.mark.parametrize("p,n,m", [(5, 1, 4), (5, 1, 6), (7, 1, 5), (3, 2, 4), (11, 1, 4), (3, 2, 7)])
def test_genus_matches_closed_formula(p, n, m):
    q = p**n
    assert Tower.artin_schreier(p, n, m).genus == (m - 1) * (q - 1) // 2


def test_generators(e9, k2_tower):
    assert e9.generators == (7, 4)
    assert k2_tower.jumps == (8, 14)
    assert k2_tower.generators == (9, 24, 14)
    assert Tower.artin_schreier(5, 1, 6).generators == (5, 6)


@pytest.mark.parametrize(
    "kwargs,rule",
    [
        (dict(p=4, steps=(TowerStep(1, {0: -1}, {(5,): 1}),)), "p-not-prime"),
        (dict(p=2, steps=(TowerStep(1, {0: -1}, {(5,): 1}),)), "p-even"),
        (dict(p=5, steps=(TowerStep(0, {0: -1}, {(4,): 1}),)), "n-positive"),
        (dict(p=5, steps=(TowerStep(1, {1: 1, 0: 1}, {(4,): 1}),)), "additive-power-range"),
        (dict(p=5, steps=(TowerStep(1, {0: 5}, {(4,): 1}),)), "additive-separable"),
        (dict(p=5, steps=(TowerStep(1, {0: -1}, {}),)), "rhs-empty"),
        (dict(p=5, steps=(TowerStep(1, {0: -1}, {(4, 1): 1}),)), "rhs-arity"),
        (dict(p=5, steps=(TowerStep(1, {0: -1}, {(-4,): 1}),)), "rhs-negative"),
        (dict(p=5, steps=(TowerStep(1, {0: -1}, {(4,): 10}),)), "rhs-zero-coeff"),
    ],
)
def test_construction_rules(kwargs, rule):
    with pytest.raises(TowerError) as info:
        Tower(**kwargs)
    assert info.value.rule == rule


def test_exponent_bound():
    with pytest.raises(TowerError, match="exponent bound") as info:
        Tower.from_steps(3, [(1, {0: -1}, {(8,): 1}), (1, {0: -1}, {(2, 3): 1})])
    assert info.value.step == 2


def test_coefficients_normalized():
    T = Tower.from_steps(5, [(1, {0: -1}, {(4,): 6})])
    assert T.steps[0].additive == {0: 4}
    assert T.steps[0].rhs == {(4,): 1}


def test_petri_vectors():
    assert petri_report(Tower.artin_schreier(7, 1, 4)).verdict
    assert petri_report(Tower.artin_schreier(5, 1, 4)).verdict
    report = petri_report(Tower.artin_schreier(5, 1, 3))
    assert not report.verdict
    assert "non-trigonality" in {g.name for g in report.failures}


def test_petri_table_rows():
    assert not petri_report(Tower.artin_schreier(3, 1, 7)).verdict  # m > 5 needs p^n > 3
    assert petri_report(Tower.artin_schreier(3, 2, 4)).verdict
    assert not petri_report(Tower.artin_schreier(7, 1, 2)).verdict


@pytest.mark.parametrize("p,n", [(5, 1), (7, 1), (3, 2), (3, 1)])
def test_petri_monotone_in_jump(p, n):
    verdicts = [petri_report(Tower.artin_schreier(p, n, m)).verdict for m in range(2, 40) if m % p]
    first = verdicts.index(True) if True in verdicts else len(verdicts)
    assert all(verdicts[first:])


@pytest.mark.parametrize("name", ["y7_x4.json", "y5_x7.json", "y9_x4.json", "tower_p3_k2.json"])
def test_degree_bound_holds_on_corpus(name):
    from conftest import load_curve

    T = load_curve(name)
    for q, b, g in zip(T.degrees, T.jumps, T.genera[1:]):
        assert q * b <= 4 * g - 4
