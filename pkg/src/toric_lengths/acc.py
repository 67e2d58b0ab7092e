"""Finiteness bookkeeping behind the ascending chain condition for lengths.

Indices are 0-based: the distinguished curve sits at positions ``(0, 1)``
after :func:`normalize_ordering`, and the sets ``M_i`` are indexed by
``i >= 2``.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .fan import (
    AbsorbedRay,
    CurveClass,
    FanoFan,
    covering,
    curves,
    from_weights,
    from_weights_with_overlattice,
)
from .intersection import fraction_str, length
from .lattice import enumerate_overlattices, snf


class NotNormalized(ValueError):
    pass


class CertificateError(ValueError):
    pass


def pair_value(f: FanoFan, k: int, l: int) -> Fraction:
    """``mult(mu_{k,l}) / (a_k mult(sigma_l))``, symmetric in ``k, l``."""
    return Fraction(f.mu(k, l), f.weights[k] * f.mult_sigma[l])


def normalize_ordering(f: FanoFan) -> tuple[FanoFan, tuple[int, ...]]:
    """Move the pair minimizing :func:`pair_value` to positions 0 and 1."""
    best = min(curves(len(f.rays)), key=lambda c: (pair_value(f, c.k, c.l), c))
    perm = (best.k, best.l) + tuple(j for j in range(len(f.rays)) if j not in (best.k, best.l))
    return f.permuted(perm), perm


def _require_normalized(f: FanoFan) -> Fraction:
    v = pair_value(f, 0, 1)
    if any(pair_value(f, c.k, c.l) < v for c in curves(len(f.rays))):
        raise NotNormalized("pair (0, 1) does not minimize the pair value; call normalize_ordering first")
    return v


def m_i_value(f: FanoFan, i: int) -> Fraction:
    """Element of ``M_i`` realised by a normalized fan."""
    if i < 2 or i >= len(f.rays):
        raise ValueError("M_i is defined for 2 <= i <= n (0-based)")
    return _require_normalized(f) * f.weights[i]


def decomposition_terms(f: FanoFan) -> tuple[Fraction, ...]:
    """Summands of the length: two unit fractions followed by the ``M_i`` elements."""
    _require_normalized(f)
    mu = f.mu(0, 1)
    return (
        Fraction(mu, f.mult_sigma[1]),
        Fraction(mu, f.mult_sigma[0]),
        *(m_i_value(f, i) for i in range(2, len(f.rays))),
    )


def length_decomposition_check(f: FanoFan) -> bool:
    terms = decomposition_terms(f)
    unit = all(t.numerator == 1 for t in terms[:2])
    return unit and sum(terms) == length(f).value


@functools.lru_cache(maxsize=None)
def _factorial(k: int) -> int:
    return math.factorial(k)


def floor_inverse(eps: Fraction) -> int:
    return eps.denominator // eps.numerator


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witnesses: dict = field(hash=False)


@dataclass(frozen=True)
class AccCertificate:
    epsilon: Fraction
    i: int
    m_value: Fraction
    floor_inv: int
    bound_factorial: int
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return fraction_str(x)
            if isinstance(x, (list, tuple)):
                return [enc(y) for y in x]
            if isinstance(x, dict):
                return {k: enc(y) for k, y in x.items()}
            return x

        return {
            "epsilon": fraction_str(self.epsilon),
            "i": self.i + 1,
            "m_value": fraction_str(self.m_value),
            "floor_inverse_epsilon": self.floor_inv,
            "bound_factorial": str(self.bound_factorial) if self.floor_inv > 20 else self.bound_factorial,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, **enc(c.witnesses)} for c in self.checks],
        }


def certify(f: FanoFan, i: int, epsilon: Fraction) -> AccCertificate:
    """Evaluate every inequality of the finiteness argument for ``M_i`` on one fan.

    Requires ``0 < epsilon < m_i_value(f, i)``.
    """
    epsilon = Fraction(epsilon)
    value = m_i_value(f, i)
    if epsilon <= 0:
        raise CertificateError("epsilon must be positive")
    if epsilon >= value:
        raise CertificateError(f"threshold {epsilon} is not below the M_i element {value}")
    a = f.weights
    n1 = len(f.rays)
    q = floor_inverse(epsilon)
    fact = _factorial(q)
    inv_sq = 1 / epsilon**2
    cover = covering(f)
    m12 = cover.degree(0, 1)
    d = math.gcd(a[0], a[1])
    l = math.lcm(a[0], a[1])
    g = math.gcd(l, a[i])

    quotients = {}
    for j in range(n1):
        if j == i:
            continue
        num, den = f.mult_sigma[j], f.mu(i, j)
        # order of the quotient N/Z(j) -> N/N_mu(i,j)
        quotients[str(j + 1)] = Fraction(num, den)
    checks = [
        Check(
            "A",
            all(x.denominator == 1 and x <= q for x in quotients.values()),
            {"quotient_orders": quotients, "bound": q},
        ),
        Check("B", 1 <= m12 <= fact, {"m12": m12}),
        Check(
            "C",
            epsilon < Fraction(math.gcd(a[0], a[i]), a[0]) and epsilon < Fraction(math.gcd(a[1], a[i]), a[1]),
            {
                "gcd_ratio_1": Fraction(math.gcd(a[0], a[i]), a[0]),
                "gcd_ratio_2": Fraction(math.gcd(a[1], a[i]), a[1]),
                "d": d,
            },
        ),
        Check("D", Fraction(l, g) <= inv_sq, {"lcm": l, "gcd_lcm_ai": g, "ratio": l // g, "bound": inv_sq}),
        Check("E", Fraction(a[i], g) <= inv_sq * fact, {"ratio": a[i] // g}),
    ]
    # the element factors as a_i / (m12 * lcm(a_1, a_2))
    checks.append(Check("factorization", value == Fraction(a[i], m12 * l), {"rhs": Fraction(a[i], m12 * l)}))
    exponent = max(snf(f.rays).d)
    checks.append(Check("claim", fact % exponent == 0, {"exponent_N_mod_Nprime": exponent}))
    return AccCertificate(epsilon, i, value, q, fact, tuple(checks))


def _well_formed(t: tuple[int, ...]) -> bool:
    return all(math.gcd(*(t[:j] + t[j + 1 :])) == 1 for j in range(len(t)))


def weight_tuples(n: int, max_weight: int) -> Iterator[tuple[int, ...]]:
    """Well-formed nondecreasing ``(n+1)``-tuples with entries at most ``max_weight``, lexicographic."""
    if n < 1 or max_weight < 1:
        raise ValueError("bounds must be positive")
    for t in itertools.combinations_with_replacement(range(1, max_weight + 1), n + 1):
        if _well_formed(t):
            yield t


def enumerate_wps(n: int, max_weight: int) -> Iterator[FanoFan]:
    for t in weight_tuples(n, max_weight):
        yield from_weights(t)


def fingerprint(f: FanoFan) -> tuple:
    cover = covering(f)
    return (
        tuple(sorted(f.weights)),
        tuple(sorted(f.mult_sigma)),
        tuple(sorted(f.mult_mu.values())),
        cover.cover_index,
        tuple(sorted(cover.degrees.values())),
    )


def enumerate_fake(
    n: int,
    max_weight: int,
    max_index: int,
    stats: Counter | None = None,
    weights: Iterable[tuple[int, ...]] | None = None,
) -> Iterator[FanoFan]:
    """Weighted projective spaces and their quotients by overlattices of index up to ``max_index``.

    Duplicates by :func:`fingerprint` are dropped.  Overlattices that absorb
    a ray are skipped and counted in ``stats["absorbed"]``.
    """
    stats = stats if stats is not None else Counter()
    lattices = [lat for m in range(2, max_index + 1) for lat in enumerate_overlattices(n, m)]
    seen = set()
    tuples = weight_tuples(n, max_weight) if weights is None else weights
    for t in tuples:
        candidates = [from_weights(t)]
        for lat in lattices:
            try:
                candidates.append(from_weights_with_overlattice(t, lat))
            except AbsorbedRay:
                stats["absorbed"] += 1
        for f in candidates:
            key = fingerprint(f)
            if key in seen:
                stats["duplicate"] += 1
                continue
            seen.add(key)
            stats["yielded"] += 1
            yield f


@dataclass(frozen=True)
class ScanRecord:
    weights: tuple[int, ...]
    cover_index: int
    length: Fraction


@dataclass(frozen=True)
class ScanReport:
    dim: int
    max_weight: int
    max_index: int
    epsilon: Fraction
    records: tuple[ScanRecord, ...]
    lengths: tuple[Fraction, ...]
    above_threshold: tuple[tuple[Fraction, int], ...]
    skipped: int = 0

    @property
    def instances(self) -> int:
        return len(self.records)

    def to_json(self) -> dict:
        return {
            "parameters": {
                "dim": self.dim,
                "max_weight": self.max_weight,
                "max_index": self.max_index,
                "epsilon": fraction_str(self.epsilon),
            },
            "instances": self.instances,
            "skipped_absorbed": self.skipped,
            "lengths": [fraction_str(x) for x in self.lengths],
            "above_threshold": [{"length": fraction_str(x), "count": c} for x, c in self.above_threshold],
        }

    def csv_rows(self) -> list[list]:
        rows = [["weights", "cover_index", "length_num", "length_den"]]
        for r in self.records:
            rows.append([" ".join(map(str, r.weights)), r.cover_index, r.length.numerator, r.length.denominator])
        return rows


def scan_lengths(dim: int, max_weight: int, max_index: int, epsilon: Fraction) -> ScanReport:
    epsilon = Fraction(epsilon)
    stats: Counter = Counter()
    records = []
    for f in enumerate_fake(dim, max_weight, max_index, stats):
        records.append(ScanRecord(f.weights, covering(f).cover_index, length(f).value))
    records.sort(key=lambda r: (r.weights, r.cover_index, r.length))
    counts = Counter(r.length for r in records)
    lengths = tuple(sorted(counts))
    above = tuple((x, counts[x]) for x in lengths if x > epsilon)
    return ScanReport(dim, max_weight, max_index, epsilon, tuple(records), lengths, above, stats["absorbed"])


def series_abab(k_max: int) -> list[tuple[int, Fraction]]:
    """Lengths of P(1, k-1, k) for ``k = 2 .. k_max``."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    return [(k, length(from_weights((1, k - 1, k))).value) for k in range(2, k_max + 1)]


def sumset(a: Iterable[Fraction], b: Iterable[Fraction]) -> list[Fraction]:
    b = list(b)
    return sorted({Fraction(x) + Fraction(y) for x in a for y in b})
