"""Acceptance run: every verification suite once, one PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) to print only the
criterion lines, or through pytest where they appear in the terminal summary.
"""

import sys
from dataclasses import dataclass
from pathlib import Path

import pytest

from diracgreen import verify

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE_LINES  # noqa: E402


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    prefixes: tuple[str, ...]


CRITERIA = (
    Criterion(1, "ladder identities below 1e-8 over 200 samples in under 5 s", ("identity.",)),
    Criterion(2, "radial-equation residuals below 1e-6 with order 2 +- 0.3", ("ode.",)),
    Criterion(3, "derivative jumps equal the source strengths within 1e-3", ("jump.",)),
    Criterion(4, "closed forms match the ODE oracle within 1e-5 for kappa = 1, 2", ("oracle.", "xi_operator.")),
    Criterion(5, "pole spectra match the algebraic ladders within 1e-10", ("spectrum.",)),
    Criterion(6, "nonrelativistic scaling exponents (2, 2, 1) within 0.1", ("limits.",)),
    Criterion(7, "nonrelativistic kernels match spectral sums within 1e-6", ("kernels.",)),
    Criterion(8, "argument exchange transposes the matrix", ("exchange.",)),
    Criterion(9, "engineered corruptions are detected", ("control.",)),
)


@pytest.fixture(scope="module")
def reports() -> list[verify.VerificationReport]:
    return verify.run_suites(["all"])


def select(reports, criterion: Criterion):
    return [r for r in reports if r.check_id.startswith(criterion.prefixes) and not r.informational]


def verdict(reports, criterion: Criterion) -> tuple[bool, str]:
    chosen = select(reports, criterion)
    failed = [r for r in chosen if not r.passed]
    ok = bool(chosen) and not failed
    line = f"criterion {criterion.number} {'PASS' if ok else 'FAIL'}: {criterion.title} ({len(chosen) - len(failed)}/{len(chosen)} checks)"
    if failed:
        worst = max(failed, key=lambda r: r.measured / r.tolerance if r.tolerance else float("inf"))
        line += f"; worst {worst.check_id} measured {worst.measured:.3e} > {worst.tolerance:.1e}"
    return ok, line


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion{c.number}")
def test_criterion(reports, criterion):
    ok, line = verdict(reports, criterion)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_negative_kappa_adjudication_covers_both_exponents(reports):
    adj = [r for r in reports if r.check_id.startswith("adjudication.")]
    for kind in ("oscillator", "coulomb"):
        for kappa in ("-1", "-2"):
            ids = {r.check_id.rsplit(".", 1)[-1] for r in adj if r.check_id.startswith(f"adjudication.{kind}[kappa={kappa}")}
            assert ids == {"large", "small"}
    assert all(r.informational for r in adj)


def test_oracle_sample_has_enough_pairs(reports):
    for r in select(reports, CRITERIA[3]):
        if r.check_id.startswith("oracle.") and not r.check_id.endswith("wronskian"):
            assert min(r.configuration["pairs"].values()) >= 100


if __name__ == "__main__":
    everything = verify.run_suites(["all"])
    for c in CRITERIA:
        print(verdict(everything, c)[1])
