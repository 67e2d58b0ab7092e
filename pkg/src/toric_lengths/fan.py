"""Complete simplicial fans with n+1 rays (fake weighted projective spaces).

Coordinates always identify the ambient lattice ``N`` with ``Z^n``.  Ray
indices are 0-based throughout the library.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lattice import (
    Overlattice,
    as_matrix,
    content,
    det,
    hnf,
    kernel_primitive,
    lattice_index,
    rational_inverse,
    saturation,
    transpose,
)


class FanError(ValueError):
    """Input rays do not define a valid fan."""


class NonPrimitiveRay(FanError):
    pass


class DependentRays(FanError):
    pass


class NotPositivelySpanning(FanError):
    pass


class NotWellFormed(FanError):
    pass


class AbsorbedRay(FanError):
    """An overlattice makes one of the rays non-primitive."""


@dataclass(frozen=True, order=True)
class CurveClass:
    """The invariant curve ``V(mu_{k,l})``; stored with ``k < l``."""

    k: int
    l: int

    def __post_init__(self) -> None:
        if self.k == self.l:
            raise ValueError("curve indices must be distinct")
        if self.k > self.l:
            k, l = self.l, self.k
            object.__setattr__(self, "k", k)
            object.__setattr__(self, "l", l)

    def __iter__(self):
        yield self.k
        yield self.l

    def label(self) -> str:
        """1-based label used in reports."""
        return f"{self.k + 1},{self.l + 1}"


def curves(n_rays: int) -> list[CurveClass]:
    return [CurveClass(k, l) for k, l in itertools.combinations(range(n_rays), 2)]


@dataclass(frozen=True)
class FanoFan:
    rays: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...] = field(compare=False)
    mult_sigma: tuple[int, ...] = field(compare=False)
    mult_mu: dict[CurveClass, int] = field(compare=False, hash=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def mu(self, k: int, l: int) -> int:
        return self.mult_mu[CurveClass(k, l)]

    def permuted(self, perm: Sequence[int]) -> "FanoFan":
        """Fan whose ray ``j`` is ray ``perm[j]`` of this one."""
        pos = {old: new for new, old in enumerate(perm)}
        return FanoFan(
            rays=tuple(self.rays[p] for p in perm),
            weights=tuple(self.weights[p] for p in perm),
            mult_sigma=tuple(self.mult_sigma[p] for p in perm),
            mult_mu={CurveClass(pos[c.k], pos[c.l]): v for c, v in self.mult_mu.items()},
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "weights": list(self.weights),
        }


def _drop(rows: Sequence, *skip: int) -> tuple:
    return tuple(r for j, r in enumerate(rows) if j not in skip)


def new_fano_fan(rays: Iterable[Sequence[int]]) -> FanoFan:
    """Validate ``n + 1`` rays in ``Z^n`` and cache weights and multiplicities."""
    rays = as_matrix(list(rays))
    n = len(rays[0])
    if len(rays) != n + 1:
        raise FanError(f"expected {n + 1} rays in dimension {n}, got {len(rays)}")
    for v in rays:
        if content(v) != 1:
            raise NonPrimitiveRay(f"ray {list(v)} is not primitive")
    mult_sigma = tuple(abs(det(_drop(rays, i))) for i in range(n + 1))
    if 0 in mult_sigma:
        raise DependentRays("some n of the rays are linearly dependent")
    weights = kernel_primitive(transpose(rays))
    if any(a <= 0 for a in weights):
        raise NotPositivelySpanning(
            f"relation {list(weights)} has a non-positive entry; rays do not positively span"
        )
    mult_mu = {}
    for c in curves(n + 1):
        rest = _drop(rays, c.k, c.l)
        mult_mu[c] = lattice_index(rest) if rest else 1
    return FanoFan(rays, weights, mult_sigma, mult_mu)


def _check_well_formed(a: Sequence[int]) -> None:
    if len(a) < 2 or any(x <= 0 for x in a):
        raise FanError("weights must be at least two positive integers")
    for i in range(len(a)):
        if math.gcd(*_drop(a, i)) != 1:
            raise NotWellFormed(f"weights {list(a)} are not well-formed: rays would be non-primitive")


def wps_rays(a: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Rays of P(a): complete ``a`` to a unimodular ``U`` with ``U a = e_1``; rays are the columns of ``U[1:]``."""
    _check_well_formed(a)
    _, u = hnf([[x] for x in a])
    return transpose(u[1:])


def from_weights(a: Sequence[int]) -> FanoFan:
    return new_fano_fan(wps_rays(a))


def from_weights_with_overlattice(a: Sequence[int], lattice: Overlattice) -> FanoFan:
    """Rays of P(a) rewritten in a basis of an overlattice of their lattice."""
    rays = wps_rays(a)
    if lattice.rank != len(rays[0]):
        raise ValueError("overlattice rank does not match the weights")
    coords = [lattice.coordinates(v) for v in rays]
    for v, c in zip(rays, coords):
        if content(c) != 1:
            raise AbsorbedRay(f"overlattice absorbs ray {list(v)}")
    return new_fano_fan(coords)


@dataclass(frozen=True)
class CoveringData:
    """The weighted projective space covering a fan, étale in codimension one."""

    cover_index: int
    cover_weights: tuple[int, ...]
    degrees: dict[CurveClass, int] = field(hash=False)

    def degree(self, k: int, l: int) -> int:
        return self.degrees[CurveClass(k, l)]

    def to_json(self) -> dict:
        return {
            "cover_index": self.cover_index,
            "cover_weights": list(self.cover_weights),
            "degrees": {c.label(): m for c, m in sorted(self.degrees.items())},
        }


def covering(f: FanoFan) -> CoveringData:
    """Index of the ray lattice N' and the degrees ``m_{k,l} = [N : N' + N_mu]``."""
    cover_index = lattice_index(f.rays)
    degrees = {}
    for c in curves(len(f.rays)):
        rest = _drop(f.rays, c.k, c.l)
        if not rest:
            degrees[c] = cover_index
            continue
        degrees[c] = lattice_index(f.rays + saturation(rest))
    return CoveringData(cover_index, f.weights, degrees)


def is_wps(f: FanoFan) -> bool:
    return lattice_index(f.rays) == 1


def covering_fan(f: FanoFan) -> FanoFan:
    """The covering weighted projective space, with rays in a basis of N'."""
    h, _ = hnf(f.rays)
    basis = h[: f.dim]
    inv = rational_inverse(basis)
    coords = []
    for v in f.rays:
        c = [sum(x * inv[i][j] for i, x in enumerate(v)) for j in range(f.dim)]
        coords.append(tuple(int(x) for x in c))
    return new_fano_fan(coords)


def fan_from_json(data: dict) -> FanoFan:
    """Parse ``{"dim": n, "rays": [...]}``; a ``weights`` key is ignored."""
    if not isinstance(data, dict) or "rays" not in data:
        raise FanError("fan JSON must be an object with a 'rays' key")
    rays = data["rays"]
    if not isinstance(rays, list) or not rays or not all(isinstance(r, list) for r in rays):
        raise FanError("'rays' must be a non-empty list of integer lists")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in rays for x in r):
        raise FanError("ray entries must be integers")
    if "dim" in data and any(len(r) != data["dim"] for r in rays):
        raise FanError(f"every ray must have length dim={data['dim']}")
    try:
        return new_fano_fan(rays)
    except FanError:
        raise
    except ValueError as exc:
        raise FanError(str(exc)) from exc
