"""Curve towers ``F_1 = k(f_0) < F_2 < ... < F_{k+1}`` and their numeric invariants.

Step ``i`` adjoins ``f_i`` subject to

    f_i^(p^n) + a_{n-1} f_i^(p^(n-1)) + ... + a_0 f_i = D_i(f_0, ..., f_{i-1})

with coefficients in the prime field.  The ramification jump of each step is
read off the unique pole-maximal monomial of ``D_i``; genera follow from
Riemann-Hurwitz.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .errors import InvariantError, TowerError

ExpTuple = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class TowerStep:
    """One Artin-Schreier-type step.

    ``additive[j]`` is the coefficient of ``X^(p^j)`` for ``0 <= j < n``;
    ``rhs`` maps exponent tuples ``(l_0, ..., l_{i-1})`` to the monomial
    coefficients of ``D_i``.
    """

    n: int
    additive: Mapping[int, int]
    rhs: Mapping[ExpTuple, int]

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.additive.items())), tuple(sorted(self.rhs.items()))))


@dataclass(frozen=True)
class Tower:
    """A validated tower over ``F_p``; construction raises :class:`TowerError`."""

    p: int
    steps: tuple[TowerStep, ...]
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        p = self.p
        if not isinstance(p, int) or not is_prime(p):
            raise TowerError("p-not-prime", f"p not prime: {p!r}")
        if p == 2:
            raise TowerError("p-even", "p = 2 is not supported; p must be odd")
        if len(self.steps) == 0:
            raise TowerError("no-steps", "a tower needs at least one step")
        steps = tuple(_normalize_step(p, idx, step) for idx, step in enumerate(self.steps, start=1))
        object.__setattr__(self, "steps", steps)
        # towers key every cache, so hash once
        object.__setattr__(self, "_hash", hash((p, steps)))
        # jump derivation runs the remaining (coprimality, monotonicity) checks
        self.jumps  # noqa: B018

    def __hash__(self) -> int:
        return self._hash

    # -- constructors -----------------------------------------------------

    @classmethod
    def artin_schreier(cls, p: int, n: int, m: int, additive: Mapping[int, int] | None = None) -> Tower:
        """The curve ``y^(p^n) + ... = x^m``; default additive part ``-y``."""
        if additive is None:
            additive = {0: -1}
        return cls(p, (TowerStep(n, dict(additive), {(m,): 1}),))

    @classmethod
    def from_steps(cls, p: int, steps: Sequence[tuple[int, Mapping[int, int], Mapping[Sequence[int], int]]]) -> Tower:
        return cls(p, tuple(TowerStep(n, dict(add), {tuple(k): c for k, c in rhs.items()}) for n, add, rhs in steps))

    # -- derived data -----------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.steps)

    @property
    def ns(self) -> tuple[int, ...]:
        return tuple(s.n for s in self.steps)

    @property
    def degrees(self) -> tuple[int, ...]:
        """Step degrees ``p^{n_i}``."""
        return tuple(self.p**s.n for s in self.steps)

    @property
    def bounds(self) -> tuple[int | None, ...]:
        """Per-coordinate exclusive bounds of reduced exponent tuples (``None`` = unbounded)."""
        return (None,) + self.degrees

    @cached_property
    def jumps(self) -> tuple[int, ...]:
        return derive_jumps(self)

    @cached_property
    def genera(self) -> tuple[int, ...]:
        return genus_sequence(self)

    @property
    def genus(self) -> int:
        return self.genera[-1]

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return semigroup_generators(self)

    @property
    def group_order(self) -> int:
        return self.generators[0]

    def level_norm(self, lam: Sequence[int], level: int) -> int:
        return level_norm(self, lam, level)

    def is_reduced(self, t: Sequence[int]) -> bool:
        return all(t[nu] < self.degrees[nu - 1] for nu in range(1, len(t)))


def _normalize_step(p: int, idx: int, step: TowerStep) -> TowerStep:
    if not isinstance(step.n, int) or step.n < 1:
        raise TowerError("n-positive", f"step exponent n must be a positive integer, got {step.n!r}", idx)
    additive: dict[int, int] = {}
    for j, c in step.additive.items():
        if not 0 <= j < step.n:
            raise TowerError("additive-power-range", f"additive power {j} outside 0..{step.n - 1}", idx)
        if c % p:
            additive[j] = c % p
    if 0 not in additive:
        raise TowerError("additive-separable", "coefficient of X must be nonzero (separability)", idx)
    if not step.rhs:
        raise TowerError("rhs-empty", "right-hand side D_i has no monomials", idx)
    rhs: dict[ExpTuple, int] = {}
    for key, c in step.rhs.items():
        key = tuple(int(e) for e in key)
        if len(key) != idx:
            raise TowerError("rhs-arity", f"rhs exponent tuple {key} must have length {idx}", idx)
        if any(e < 0 for e in key):
            raise TowerError("rhs-negative", f"negative exponent in {key}", idx)
        if c % p == 0:
            raise TowerError("rhs-zero-coeff", f"rhs coefficient of {key} vanishes mod {p}", idx)
        rhs[key] = c % p
    return TowerStep(step.n, dict(sorted(additive.items())), dict(sorted(rhs.items(), key=lambda kv: kv[0][::-1])))


def _check_exponent_bounds(tower: Tower, idx: int) -> None:
    for key in tower.steps[idx - 1].rhs:
        for nu in range(1, idx):
            if key[nu] >= tower.degrees[nu - 1]:
                raise TowerError(
                    "exponent-bound",
                    f"exponent bound: rhs exponent l_{nu} = {key[nu]} must be < {tower.degrees[nu - 1]}",
                    idx,
                )


def level_norm(tower: Tower, lam: Sequence[int], level: int, jumps: Sequence[int] | None = None) -> int:
    """Pole order at P of ``f_0^l_0 ... f_{i-1}^l_{i-1}`` inside ``F_i`` (``i = level``)."""
    if not 1 <= level <= tower.k + 1:
        raise ValueError(f"level {level} outside 1..{tower.k + 1}")
    if len(lam) != level:
        raise ValueError(f"tuple {tuple(lam)} has length {len(lam)}, expected {level}")
    if jumps is None:
        jumps = tower.jumps
    ns = tower.ns
    p = tower.p
    total = lam[0] * p ** sum(ns[: level - 1])
    for nu in range(1, level):
        total += lam[nu] * jumps[nu - 1] * p ** sum(ns[nu : level - 1])
    return total


def derive_jumps(tower: Tower) -> tuple[int, ...]:
    jumps: list[int] = []
    for idx, step in enumerate(tower.steps, start=1):
        _check_exponent_bounds(tower, idx)
        norms = sorted((level_norm(tower, key, idx, jumps), key) for key in step.rhs)
        b = norms[-1][0]
        if len(norms) > 1 and norms[-2][0] == b:
            raise InvariantError(f"step {idx}: two rhs monomials {norms[-2][1]}, {norms[-1][1]} share the maximal pole order {b}")
        if b % tower.p == 0:
            raise TowerError("jump-not-coprime", f"jump not coprime to p: b_{idx} = {b}", idx)
        if jumps and b <= jumps[-1]:
            raise TowerError("jumps-not-increasing", f"jumps not strictly increasing: b_{idx} = {b} <= {jumps[-1]}", idx)
        jumps.append(b)
    return tuple(jumps)


def genus_sequence(tower: Tower) -> tuple[int, ...]:
    """Genera ``g_{F_1}, ..., g_{F_{k+1}}`` by Riemann-Hurwitz, starting from ``g_{F_1} = 0``."""
    genera = [0]
    for q, b in zip(tower.degrees, tower.jumps):
        twice = q * 2 * (genera[-1] - 1) + (b + 1) * (q - 1)
        if twice % 2:
            raise InvariantError(f"non-integral genus from 2(g-1) = {twice}")
        genera.append(twice // 2 + 1)
    return tuple(genera)


def semigroup_generators(tower: Tower) -> tuple[int, ...]:
    """``(|G_0|, m_1, ..., m_k)`` with ``m_i = p^{n_{i+1}+...+n_k} b_i``."""
    ns = tower.ns
    p = tower.p
    gens = [p ** sum(ns)]
    for i, b in enumerate(tower.jumps, start=1):
        gens.append(p ** sum(ns[i:]) * b)
    return tuple(gens)


@dataclass(frozen=True)
class PetriGate:
    step: int
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class PetriReport:
    gates: tuple[PetriGate, ...]

    @property
    def verdict(self) -> bool:
        return all(g.passed for g in self.gates)

    @property
    def failures(self) -> tuple[PetriGate, ...]:
        return tuple(g for g in self.gates if not g.passed)

    def step_passed(self, step: int) -> bool:
        return all(g.passed for g in self.gates if g.step == step)

    def __bool__(self) -> bool:
        return self.verdict


def petri_report(tower: Tower) -> PetriReport:
    """Evaluate the numeric gates that put every step inside Petri's theorem."""
    gates: list[PetriGate] = []
    genera = tower.genera
    for i, (q, b) in enumerate(zip(tower.degrees, tower.jumps), start=1):
        gates.append(PetriGate(i, "degree>2", q > 2, f"p^n = {q} > 2"))
        if genera[i - 1] == 0:
            gates.append(PetriGate(i, "non-hyperelliptic", b > 2, f"b = {b} > 2"))
            gates.append(PetriGate(i, "non-trigonality", b > 3, f"b = {b} > 3"))
            gates.append(
                PetriGate(i, "artin-schreier-bound", b * (q - 2) >= 2 * q + 2, f"b = {b} >= (2p^n+2)/(p^n-2) with p^n = {q}")
            )
        bound = 4 * genera[i] - 4
        gates.append(PetriGate(i, "degree-bound", q * b <= bound, f"p^n b = {q * b} <= 4g-4 = {bound}"))
    if tower.k == 1:
        q, m = tower.degrees[0], tower.jumps[0]
        if m > 5:
            ok, detail = q > 3, f"m = {m} > 5 requires p^n > 3"
        elif m in (4, 5):
            ok, detail = q >= 5, f"m = {m} requires p^n >= 5"
        else:
            ok, detail = False, f"m = {m} < 4 is not covered"
        gates.append(PetriGate(1, "petri-table", ok, detail))
    return PetriReport(tuple(gates))
