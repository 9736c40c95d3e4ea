from __future__ import annotations

import re
from pathlib import Path

import pytest

from hkg_canon import Tower
from hkg_canon.curve_io import parse_curve_file
from hkg_canon.relations import QuadForm

ROOT = Path(__file__).resolve().parent.parent
CURVES = ROOT / "curves"
DATA = Path(__file__).resolve().parent / "data"

# (p, n, m) -> curve file; all pass the k=1 gates
CORPUS = {
    (5, 1, 4): "y5_x4.json",
    (5, 1, 6): "y5_x6.json",
    (5, 1, 7): "y5_x7.json",
    (7, 1, 4): "y7_x4.json",
    (7, 1, 5): "y7_x5.json",
    (3, 2, 4): "y9_x4.json",
    (11, 1, 4): "y11_x4.json",
}

_TERM = re.compile(r"([+-]?)\s*(w\d\d(?:\^2)?(?:\*w\d\d)?)")


def load_curve(name: str) -> Tower:
    return parse_curve_file(CURVES / name)


def parse_reference_form(line: str, p: int) -> QuadForm:
    """Read ``-w04*w10 + w03*w11`` style text (``wab`` is the tuple ``(a, b)``)."""
    terms = {}
    for sign, body in _TERM.findall(line.replace(" ", "")):
        factors = []
        for f in body.split("*"):
            if f.endswith("^2"):
                t = (int(f[1]), int(f[2]))
                factors += [t, t]
            else:
                factors.append((int(f[1]), int(f[2])))
        terms[tuple(factors)] = -1 if sign == "-" else 1
    return QuadForm(p, terms)


def reference_binomials(p: int = 7) -> list[QuadForm]:
    lines = (DATA / "e9_binomials.txt").read_text().splitlines()
    return [parse_reference_form(s, p) for s in lines if s and not s.startswith("#")]


@pytest.fixture(scope="session")
def e9() -> Tower:
    return Tower.artin_schreier(7, 1, 4)


@pytest.fixture(scope="session")
def y5x7() -> Tower:
    return Tower.artin_schreier(5, 1, 7)


@pytest.fixture(scope="session")
def k2_tower() -> Tower:
    return load_curve("tower_p3_k2.json")


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
