"""Acceptance criteria, one test per criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
pass/fail lines.
"""

import warnings
from math import gcd, log, pi

import numpy as np

import dilateq as dq
from dilateq.errors import IncompleteSearch
from tests.test_periodicity import _brute_force_two_term


def _report(num: int, desc: str, ok: bool) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {desc}")
    assert ok, f"criterion {num} failed: {desc}"


def _sample_vector(rng) -> np.ndarray:
    # entries in (1, 20), N <= 10; vectors whose widest dissection gap is
    # below 1 are outside the lower Riemann-sum bound's regime (counter-
    # example: (1.1,) has m = 1 against a bound of 4.5) and are resampled
    while True:
        n = int(rng.integers(1, 11))
        entries = np.sort(rng.uniform(1.0001, 20.0, n))
        if len(set(entries.tolist())) < n:
            continue
        if np.diff(np.concatenate([[1.0], entries])).max() < 1.0:
            continue
        return entries


def test_criterion_1_regularity():
    ok = dq.regularity_index(dq.normalize([2])).m == 1
    ok = ok and dq.regularity_index(dq.normalize([2, 3])).m == 2
    rng = np.random.default_rng(20240809)
    for _ in range(200):
        entries = _sample_vector(rng)
        ri = dq.regularity_index(dq.normalize(entries))
        points = np.concatenate([[1.0], entries])
        ratios = points[:-1] / points[-1]
        ok = ok and ri.contraction < 1.0
        ok = ok and np.sum(ratios ** (ri.m - 1)) >= 1.0
        ok = ok and ri.lower_bound <= ri.m <= ri.upper_bound
    _report(1, "regularity anchors and dissection bounds on 200 random vectors", ok)


def test_criterion_2_golden_extension():
    ok = True
    for n in range(2, 7):
        b = dq.ShiftVector(tuple(float(k) for k in range(1, n + 1)))
        period = float(n + 1)
        sol = dq.extend(dq.tent_boundary(b), b, (-3 * period, n + 3 * period))
        ref = dq.periodic_reference(n)
        for lo, hi in [(-3 * period, 0.0), (float(n), n + 3 * period)]:
            w = np.linspace(lo, hi, 3000)
            err = np.max(np.abs(sol(w) - ref(np.mod(w, period))))
            ok = ok and err <= 1e-10
    _report(2, "tent extension matches the (N+1)-periodic closed form", ok)


def test_criterion_3_equation_residual():
    rng = np.random.default_rng(424242)
    ok = True
    for _ in range(50):
        n = int(rng.integers(1, 6))
        while True:
            shifts = np.sort(rng.uniform(0.3, 3.0, n))
            if n == 1 or np.min(np.diff(shifts)) > 0.05:
                break
        b = dq.ShiftVector(tuple(shifts))
        bn = shifts[-1]
        inner = np.sort(rng.uniform(0.02 * bn, 0.98 * bn, int(rng.integers(3, 9))))
        x = np.unique(np.concatenate([[0.0], inner, [bn]]))
        y = rng.uniform(-1.0, 1.0, x.size)
        g = dq.PiecewiseLinear(x, y)
        r = dq.check_interpolation(g, b)
        g = dq.PiecewiseLinear(x, y - r / (n + 1))
        step = bn - (shifts[-2] if n >= 2 else 0.0)
        lo, hi = -5 * shifts[0], bn + 5 * step
        sol = dq.extend(g, b, (lo, hi))
        grid = np.linspace(lo, hi - bn, 10_000)
        ok = ok and dq.residual_additive(sol, b, grid) <= 1e-9
    _report(3, "projected random boundaries extend with residual <= 1e-9", ok)


def test_criterion_4_periodicity_closed_form():
    ok = True
    for n in range(1, 6):
        for d in (0.5, 1.0, log(2)):
            alpha_max = 12.0 / d
            shifts = [d * k for k in range(1, n + 1)]
            certs = dq.find_periodic_alphas(shifts, alpha_max)
            expected = [
                2 * m * pi / ((n + 1) * d)
                for m in range(1, 2000)
                if m % (n + 1) != 0 and 2 * m * pi / ((n + 1) * d) <= alpha_max
            ]
            ok = ok and len(certs) == len(expected)
            if not ok:
                break
            rng = np.random.default_rng(99)
            w = rng.uniform(-30.0, 30.0, 1000)
            for cert, alpha in zip(certs, expected):
                a = cert.alpha
                ok = ok and abs(a - alpha) <= 1e-10
                ok = ok and dq.residual_additive(
                    lambda t: np.cos(a * t), shifts, w
                ) <= 1e-10
    _report(4, "scanner recovers exactly the equispaced closed-form set", ok)


def test_criterion_5_impossibility():
    certs = dq.find_periodic_alphas([1.0, 1.0], 20.0, tol=1e-12)
    minima = dq.scan_minima([1.0, 1.0], 20.0)
    smallest = min(r for _, r in minima)
    ok = certs == [] and abs(smallest - 1.0) <= 1e-9
    ok = ok and not dq.two_term_periodic_exists(1, 1).exists
    _report(5, "repeated shifts admit no certificate (floor residual 1.0)", ok)


def test_criterion_6_two_term_oracle():
    fractions = [(p, q) for q in range(1, 51) for p in range(1, q + 1) if gcd(p, q) == 1]
    ok = len(fractions) == 774
    for p, q in fractions:
        ok = ok and dq.two_term_periodic_exists(p, q).exists == _brute_force_two_term(p, q)
    _report(6, "mod-3 rule equals brute-force enumeration on all 774 fractions", ok)


def test_criterion_7_scale_invariance():
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(100):
        n = int(rng.integers(1, 7))
        shifts = np.sort(rng.uniform(0.1, 3.0, n))
        alpha = float(rng.uniform(0.5, 8.0))
        d = float(rng.uniform(0.25, 4.0))
        r1 = dq.system_residual(alpha, shifts)
        r2 = dq.system_residual(alpha / d, dq.scale_shifts(tuple(shifts), d))
        ok = ok and abs(r1 - r2) <= 1e-12 * abs(r1)
    _report(7, "system residual is invariant under (alpha, b) -> (alpha/d, d*b)", ok)


def test_criterion_8_zeros():
    with warnings.catch_warnings():
        warnings.simplefilter("error", IncompleteSearch)
        zeros2 = dq.find_zeros(2)
    expected = [pi * (2 * j + 1) / log(2) for j in range(3)]
    ok = len(zeros2) == 3
    ok = ok and all(
        abs(z.z - 1j * e) <= 1e-10 for z, e in zip(zeros2, expected)
    )
    grid = np.linspace(-5.0, -0.01, 1000)
    for n in (2, 3, 4):
        with warnings.catch_warnings():
            warnings.simplefilter("error", IncompleteSearch)
            zeros = dq.find_zeros(n)
        ok = ok and dq.winding_count(n, dq.default_rectangle()) == len(zeros)
        for zero in zeros:
            f = dq.solution_from_zero(zero)
            ok = ok and dq.residual_integer_equation(f, n, grid) <= 1e-8
    _report(8, "zero search matches closed form, winding audit and solutions", ok)


def test_criterion_9_popoviciu_evidence():
    rng = np.random.default_rng(3)
    b1 = 1.0
    ok = True
    for _ in range(100):
        x = float(rng.uniform(-5.0, 5.0))
        h = float(rng.uniform(0.1, 2.0))
        det = dq.popoviciu_determinant(lambda t: np.cos(pi * t / b1), x, h, 2)
        ok = ok and abs(det) <= 1e-10
    b = dq.ShiftVector((1.0, 2.0))
    sol = dq.extend(dq.tent_boundary(b), b, (0.0, 3.0))
    ok = ok and abs(dq.popoviciu_determinant(sol, 0.5, 0.3, 3)) > 1e-8
    _report(9, "Hankel determinant separates cos from the tent extension", ok)
