"""Acceptance criteria 1-10, each printed as one ``[PASS]``/``[FAIL]`` line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
Sizes, tolerances and runtime budgets are fixed per criterion; a criterion
passes only when every check in it passes and it finishes within budget.
"""

import sys
import time

import pytest

from pvloops import verify as V

SEED = 0


def _criterion(number, title, budget, produce):
    t0 = time.perf_counter()
    checks = produce()
    checks = checks if isinstance(checks, list) else [checks]
    elapsed = time.perf_counter() - t0
    ok = all(c.passed for c in checks) and elapsed < budget
    parts = ", ".join(
        f"{c.check}={c.max_error:.3g}{'>' if c.bound == 'lower' else '<='}{c.tolerance:g}" for c in checks
    )
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({parts}; {elapsed:.1f}s < {budget:g}s)"
    return ok, line


def _report(capsys, ok, line):
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, line


def c1():
    return V.phi_round_trip(SEED, count=50, n=256, tol=1e-8)


def c2():
    return [V.pairing_gram_positive(SEED, count=100, M=16, bound=1e-12), V.pairing_gram_control(SEED, M=16)]


def c3():
    return V.pairing_canonical_form(SEED, count=200, tol=1e-10)


def c4():
    return V.momentum_equivariance(SEED, n_flows=20, n_tests=16, n=256, tol=5e-6)


def c5():
    return [V.momentum_zm_invariance(SEED, tol=1e-10), V.momentum_separation(SEED, count=20, bound=1e-3)]


def c6():
    return V.polarization(SEED, count=50)


def c7():
    return [
        V.transitivity_random_fields(SEED, n_curves=5, per_curve=50, n=256, tol=1e-6),
        V.transitivity_flow_slope(SEED, tol=0.2),
    ]


def c8():
    return V.dynamics_pointed_loop(SEED) + V.dynamics_pair(SEED)


def c9():
    return V.prequantization_grid(SEED, count=100, tol=1e-12)


def c10():
    return [V.geometry_area_convergence(SEED, tol=1e-3, floor=1e-14), V.geometry_frame(SEED, tol=1e-12)]


CRITERIA = [
    (1, "canonical parametrization round trip", 10, c1),
    (2, "pairing non-degeneracy and degenerate control", 5, c2),
    (3, "canonical-form identity of the pointed 2-form", 5, c3),
    (4, "momentum-map equivariance", 60, c4),
    (5, "injectivity sampling on symmetric data", 10, c5),
    (6, "polarization condition and maximality", 10, c6),
    (7, "infinitesimal transitivity", 30, c7),
    (8, "orbit conservation under dynamics", 60, c8),
    (9, "prequantization predicate", 1, c9),
    (10, "geometry floor", 5, c10),
]


@pytest.mark.parametrize("number,title,budget,produce", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, budget, produce, capsys):
    _report(capsys, *_criterion(number, title, budget, produce))


if __name__ == "__main__":
    results = [_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
