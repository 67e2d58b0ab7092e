"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary.  All comparisons are exact; runtimes are wall clock.
"""

import itertools
import math
import time
from fractions import Fraction

import pytest

from conftest import brute_index, leibniz_det
from toric_lengths import cli
from toric_lengths.acc import (
    certify,
    decomposition_terms,
    enumerate_fake,
    length_decomposition_check,
    m_i_value,
    normalize_ordering,
    series_abab,
    weight_tuples,
)
from toric_lengths.fan import covering, covering_fan, curves, from_weights
from toric_lengths.intersection import (
    anticanonical_degree,
    curve_divisor_via_cover,
    divisor_curve,
    example_blowup,
    length,
)

RESULTS: list[tuple[str, bool, str]] = []

SWEEPS = [(2, 30, 8), (3, 8, 4)]


def record(label, ok, detail=""):
    RESULTS.append((label, ok, detail))
    print(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
    assert ok, f"{label}: {detail}"


@pytest.fixture(scope="module")
def enumerated():
    start = time.perf_counter()
    fans = [f for n, a, m in SWEEPS for f in enumerate_fake(n, a, m)]
    return fans, time.perf_counter() - start


def test_criterion_1_series_abab():
    start = time.perf_counter()
    table = series_abab(100)
    ok = all(value == Fraction(2, k - 1) for k, value in table) and [k for k, _ in table] == list(range(2, 101))
    elapsed = time.perf_counter() - start
    record("1 l(P(1,k-1,k)) = 2/(k-1), k=2..100", ok and elapsed <= 5, f"{elapsed:.2f}s (limit 5s)")


def test_criterion_2_weighted_blowup():
    start = time.perf_counter()
    bad = []
    count = 0
    for a in range(1, 51):
        for b in range(1, a + 1):
            if math.gcd(a, b) != 1:
                continue
            count += 1
            rep = example_blowup(a, b)
            if rep.discrepancy != Fraction(1 + a, b) - 1 or rep.anticanonical_degree != 1 - Fraction(b - 1, a):
                bad.append((a, b))
    for k in range(1, 11):
        for m in range(1, 6):
            rep = example_blowup(k * k, m * k + 1)
            if rep.anticanonical_degree != 1 - Fraction(m, k):
                bad.append(("k,m", k, m))
    elapsed = time.perf_counter() - start
    record(
        "2 weighted blow-up discrepancy and -K.E, 1<=b<=a<=50 and a=k^2, b=mk+1",
        not bad and elapsed <= 5,
        f"{count} coprime pairs + 50 substitutions, failures={bad[:3]}, {elapsed:.2f}s (limit 5s)",
    )


def test_criterion_3_length_bounds():
    start = time.perf_counter()
    problems = []
    for n in range(1, 7):
        if length(from_weights((1,) * (n + 1))).value != n + 1:
            problems.append(("P^n", n))
    for n in range(2, 7):
        if length(from_weights((1, 1) + (2,) * (n - 1))).value != n:
            problems.append(("P(1,1,2..2)", n))
    for t in weight_tuples(2, 30):
        v = length(from_weights(t)).value
        if v > 3 or (v == 3) != (t == (1, 1, 1)) or (v == 2) != (t == (1, 1, 2)):
            problems.append(t)
    for t in weight_tuples(3, 12):
        v = length(from_weights(t)).value
        if v > 4 or (v == 4) != (t == (1, 1, 1, 1)):
            problems.append(t)
    elapsed = time.perf_counter() - start
    record("3 length bounds and equality cases", not problems and elapsed <= 60,
           f"violations={problems[:3]}, {elapsed:.2f}s (limit 60s)")


def test_criterion_4_intersection_identities(enumerated):
    fans, enum_time = enumerated
    start = time.perf_counter()
    bad = []
    for f in fans:
        cov = covering(f)
        up = covering_fan(f)
        a = f.weights
        for c in curves(len(f.rays)):
            deg = anticanonical_degree(f, c)
            if deg != sum(divisor_curve(f, i, c) for i in range(len(f.rays))):
                bad.append(("decomposition", f.rays, c))
            if curve_divisor_via_cover(f, c, cov) != divisor_curve(f, c.k, c):
                bad.append(("via cover", f.rays, c))
            if anticanonical_degree(up, c) != cov.degree(c.k, c.l) * deg:
                bad.append(("projection", f.rays, c))
        for k, l in itertools.permutations(range(len(a)), 2):
            if a[k] * f.mult_sigma[l] != a[l] * f.mult_sigma[k]:
                bad.append(("symmetry", f.rays, k, l))
    elapsed = time.perf_counter() - start + enum_time
    record("4 intersection identities on enumerated fans", not bad and elapsed <= 120,
           f"{len(fans)} fans, failures={len(bad)}, {elapsed:.1f}s incl. enumeration (limit 120s)")


def test_criterion_5_wps_multiplicities():
    start = time.perf_counter()
    bad = []
    count = 0
    for n in (1, 2, 3):
        for t in weight_tuples(n, 12):
            count += 1
            f = from_weights(t)
            for j in range(n + 1):
                rest = [v for i, v in enumerate(f.rays) if i != j]
                if not f.mult_sigma[j] == t[j] == abs(leibniz_det(rest)):
                    bad.append((t, "sigma", j))
            for c in curves(n + 1):
                rest = [v for i, v in enumerate(f.rays) if i not in (c.k, c.l)]
                if not f.mu(c.k, c.l) == math.gcd(t[c.k], t[c.l]) == brute_index(rest):
                    bad.append((t, "mu", c))
    elapsed = time.perf_counter() - start
    record("5 mult(sigma_j) = a_j and mult(mu_kl) = gcd(a_k, a_l)", not bad and elapsed <= 60,
           f"{count} tuples, failures={bad[:3]}, {elapsed:.2f}s (limit 60s)")


def test_criterion_6_certificates(enumerated):
    fans, enum_time = enumerated
    start = time.perf_counter()
    failures = []
    certs = 0
    decomposition_bad = []
    for f in fans:
        g, _ = normalize_ordering(f)
        terms = decomposition_terms(g)
        if not length_decomposition_check(g) or any(t.numerator != 1 for t in terms[:2]):
            decomposition_bad.append(g.rays)
        for i in range(2, len(g.rays)):
            certs += 1
            cert = certify(g, i, m_i_value(g, i) * Fraction(999, 1000))
            failed = [c.name for c in cert.checks[:5] if not c.passed]
            if failed:
                failures.append((g.weights, i + 1, failed))
    elapsed = time.perf_counter() - start + enum_time
    record(
        "6 certificates (A)-(E) pass and length decomposes",
        not failures and not decomposition_bad and elapsed <= 120,
        f"{certs} certificates, check failures={len(failures)} e.g. {failures[:2]}, "
        f"decomposition failures={len(decomposition_bad)}, {elapsed:.1f}s incl. enumeration (limit 120s)",
    )


def test_criterion_7_descending_chain():
    values = [v for _, v in series_abab(100)]
    decreasing = all(x > y for x, y in zip(values, values[1:]))
    # l(X_k) (k - 1) = 2 exactly, so every positive threshold is crossed
    below = all(any(v < Fraction(1, j) for v in values) for j in range(1, 50))
    record("7 l(X_k) strictly decreasing towards 0", decreasing and below and min(values) == Fraction(2, 99),
           f"min over k<=100 = {min(values)}")


def test_criterion_8_scan_determinism(tmp_path):
    outputs = []
    for fmt in ("json", "csv"):
        for run in range(2):
            out = tmp_path / f"scan{run}.{fmt}"
            code = cli.main(["scan", "--dim", "2", "--max-weight", "12", "--overlattice-index", "4",
                             "--epsilon", "1/3", "--format", fmt, "--out", str(out)])
            assert code == 0
            outputs.append(out.read_bytes())
    ok = outputs[0] == outputs[1] and outputs[2] == outputs[3] and all(outputs)
    record("8 scan output is byte-identical across runs", ok, f"json {len(outputs[0])} bytes, csv {len(outputs[2])} bytes")
