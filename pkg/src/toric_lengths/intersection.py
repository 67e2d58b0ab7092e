"""Intersection numbers of invariant curves on fans with n+1 rays."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .fan import CoveringData, CurveClass, FanoFan, covering, curves
from .lattice import Overlattice, content, det, hnf


def _check(f: FanoFan, *indices: int) -> None:
    for i in indices:
        if not 0 <= i < len(f.rays):
            raise IndexError(f"ray index {i} out of range for {len(f.rays)} rays")


def divisor_curve(f: FanoFan, i: int, c: CurveClass) -> Fraction:
    """``V(v_i) . V(mu_{k,l})``."""
    _check(f, i, c.k, c.l)
    a = f.weights
    return Fraction(a[i] * f.mu(c.k, c.l), a[c.l] * f.mult_sigma[c.k])


def anticanonical_degree(f: FanoFan, c: CurveClass) -> Fraction:
    """``-K_X . V(mu_{k,l})``."""
    _check(f, c.k, c.l)
    return Fraction(sum(f.weights) * f.mu(c.k, c.l), f.weights[c.l] * f.mult_sigma[c.k])


@dataclass(frozen=True)
class LengthReport:
    value: Fraction
    argmin: CurveClass
    per_curve: dict[CurveClass, Fraction]

    def to_json(self) -> dict:
        return {
            "value": fraction_str(self.value),
            "argmin": [self.argmin.k + 1, self.argmin.l + 1],
            "per_curve": {c.label(): fraction_str(x) for c, x in sorted(self.per_curve.items())},
        }


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def length(f: FanoFan) -> LengthReport:
    """Minimal anticanonical degree over invariant curves; ties go to the smallest pair."""
    per_curve = {c: anticanonical_degree(f, c) for c in curves(len(f.rays))}
    best = min(per_curve, key=lambda c: (per_curve[c], c))
    return LengthReport(per_curve[best], best, per_curve)


def curve_divisor_via_cover(f: FanoFan, c: CurveClass, cover: CoveringData | None = None) -> Fraction:
    """``V(mu_{k,l}) . V(v_k)`` computed upstairs on the covering weighted projective space."""
    cover = cover or covering(f)
    a = cover.cover_weights
    return Fraction(math.gcd(a[c.k], a[c.l]), cover.degree(c.k, c.l) * a[c.l])


@dataclass(frozen=True)
class LocalBlowupReport:
    discrepancy: Fraction
    anticanonical_degree: Fraction
    per_divisor: tuple[Fraction, Fraction, Fraction]

    def to_json(self) -> dict:
        return {
            "discrepancy": fraction_str(self.discrepancy),
            "deg": fraction_str(self.anticanonical_degree),
        }


def _solve2(u1: Sequence[Fraction], u2: Sequence[Fraction], w: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    dt = u1[0] * u2[1] - u1[1] * u2[0]
    if dt == 0:
        raise ValueError("cone generators are linearly dependent")
    alpha = Fraction(w[0] * u2[1] - w[1] * u2[0]) / dt
    beta = Fraction(u1[0] * w[1] - u1[1] * w[0]) / dt
    return alpha, beta


def dual_covector(w: Sequence[int]) -> tuple[int, ...]:
    """Some integer covector ``m`` with ``<m, w> = 1``."""
    h, u = hnf([[x] for x in w])
    if h[0][0] != 1:
        raise ValueError(f"{list(w)} is not primitive: no covector pairs to 1")
    return u[0]


def local_blowup_numbers(
    u1: Sequence[Fraction | int],
    u2: Sequence[Fraction | int],
    w: Sequence[Fraction | int],
    lattice: Overlattice | None = None,
    covector: Sequence[int] | None = None,
) -> LocalBlowupReport:
    """Subdivide the cone ``<u1, u2>`` by ``w`` and intersect the new divisor ``E``.

    Vectors are given in ambient coordinates; multiplicities are measured in
    ``lattice`` (``Z^2`` by default).  ``covector`` is an optional choice of
    ``m`` in lattice coordinates with ``<m, w> = 1``.
    """
    lattice = lattice or Overlattice.standard(2)
    alpha, beta = _solve2(*(tuple(Fraction(x) for x in v) for v in (u1, u2, w)))
    if alpha <= 0 or beta <= 0:
        raise ValueError("w is not in the interior of the cone")
    c1, c2, cw = (lattice.coordinates(v) for v in (u1, u2, w))
    for v, c in ((u1, c1), (u2, c2)):
        if content(c) != 1:
            raise ValueError(f"{list(v)} is not primitive in the lattice")
    if content(cw) != 1:
        raise ValueError(f"{list(w)} is not primitive in the lattice: no covector pairs to 1")
    m = tuple(covector) if covector is not None else dual_covector(cw)
    if sum(x * y for x, y in zip(m, cw)) != 1:
        raise ValueError("covector does not pair to 1 with w")
    mult1 = abs(det((c1, cw)))
    mult2 = abs(det((c2, cw)))
    d1 = Fraction(1, mult1)
    d2 = Fraction(1, mult2)
    pair = lambda c: sum(x * y for x, y in zip(m, c))  # noqa: E731
    self_int = -(pair(c1) * d1 + pair(c2) * d2)
    return LocalBlowupReport(alpha + beta - 1, d1 + d2 + self_int, (d1, d2, self_int))


def example_blowup(a: int, b: int) -> LocalBlowupReport:
    """Weighted blow-up of the quotient singularity of ``<e1, e2>`` in ``Z^2 + Z (1/b)(1, a)``."""
    if math.gcd(a, b) != 1:
        raise ValueError("a and b must be coprime")
    w = (Fraction(1, b), Fraction(a, b))
    lattice = Overlattice.from_generators([w])
    return local_blowup_numbers((1, 0), (0, 1), w, lattice)
