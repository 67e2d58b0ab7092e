"""Exact integer lattice linear algebra.

Matrices are tuples of row tuples of Python ints.  Nothing in this module
touches floating point.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    mat = tuple(tuple(int(x) for x in row) for row in rows)
    if not mat or not mat[0]:
        raise ValueError("matrix must have at least one row and one column")
    if any(len(row) != len(mat[0]) for row in mat):
        raise ValueError("ragged matrix")
    return mat


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*a))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def content(v: Sequence[int]) -> int:
    return math.gcd(*v)


def hnf(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.  Nonzero rows
    of ``H`` come first, pivots are positive and the entries above each pivot
    lie in ``[0, pivot)``.
    """
    a = as_matrix(a)
    m, n = len(a), len(a[0])
    h = [list(row) for row in a]
    u = [list(row) for row in identity(m)]

    def sub(i: int, k: int, q: int) -> None:
        # row_i -= q * row_k
        hi, hk, ui, uk = h[i], h[k], u[i], u[k]
        for j in range(n):
            hi[j] -= q * hk[j]
        for j in range(m):
            ui[j] -= q * uk[j]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            if p != r:
                h[r], h[p] = h[p], h[r]
                u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    sub(i, r, h[i][c] // h[r][c])
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                sub(i, r, q)
        r += 1
    return tuple(map(tuple, h)), tuple(map(tuple, u))


@dataclass(frozen=True)
class SnfResult:
    """``left @ A @ right == diag(d)`` with each ``d[j]`` dividing ``d[j + 1]``."""

    d: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x)


def snf(a: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form with unimodular transforms.

    Pivots are chosen as the smallest nonzero absolute value in the active
    block.
    """
    a = as_matrix(a)
    m, n = len(a), len(a[0])
    g = [list(row) for row in a]
    left = [list(row) for row in identity(m)]
    right = [list(row) for row in identity(n)]

    def swap_rows(i: int, k: int) -> None:
        g[i], g[k] = g[k], g[i]
        left[i], left[k] = left[k], left[i]

    def swap_cols(j: int, k: int) -> None:
        for row in g:
            row[j], row[k] = row[k], row[j]
        for row in right:
            row[j], row[k] = row[k], row[j]

    def add_row(i: int, k: int, q: int) -> None:
        # row_i += q * row_k
        for j in range(n):
            g[i][j] += q * g[k][j]
        for j in range(m):
            left[i][j] += q * left[k][j]

    def add_col(j: int, k: int, q: int) -> None:
        # col_j += q * col_k
        for row in g:
            row[j] += q * row[k]
        for row in right:
            row[j] += q * row[k]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = g[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = g[t][t]
            for i in range(t + 1, m):
                if g[i][t]:
                    add_row(i, t, -(g[i][t] // p))
            for j in range(t + 1, n):
                if g[t][j]:
                    add_col(j, t, -(g[t][j] // p))
            if any(g[i][t] for i in range(t + 1, m)) or any(g[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if g[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if g[t][t] < 0:
            g[t] = [-x for x in g[t]]
            left[t] = [-x for x in left[t]]
    d = tuple(g[t][t] for t in range(min(m, n)))
    return SnfResult(d, tuple(map(tuple, left)), tuple(map(tuple, right)))


def lattice_index(gens: Sequence[Sequence[int]]) -> int:
    """Index of the row span of ``gens`` inside its saturation."""
    gens = as_matrix(gens)
    if len(gens) == 1:
        g = content(gens[0])
        if g == 0:
            raise ValueError("rank zero")
        return g
    if len(gens) == len(gens[0]):
        dt = abs(det(gens))
        if dt:
            return dt
    d = [x for x in snf(gens).d if x]
    if not d:
        raise ValueError("rank zero")
    return math.prod(d)


def kernel_primitive(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Primitive generator of the kernel of an ``n x (n+1)`` matrix of rank ``n``.

    The first nonzero entry is positive.
    """
    a = as_matrix(a)
    if len(a[0]) != len(a) + 1:
        raise ValueError("expected an n x (n+1) matrix")
    h, u = hnf(transpose(a))
    if any(h[-1]) or not all(any(row) for row in h[:-1]):
        raise ValueError("degenerate ray configuration")
    v = u[-1]
    g = content(v)
    v = tuple(x // g for x in v)
    if next(x for x in v if x) < 0:
        v = tuple(-x for x in v)
    return v


def saturation(gens: Sequence[Sequence[int]]) -> IntMatrix:
    """HNF basis of the smallest saturated sublattice containing the row span."""
    gens = as_matrix(gens)
    res = snf(gens)
    k = res.rank
    if k == 0:
        raise ValueError("rank zero")
    # row span of gens = row span of diag(d) @ right^-1
    rinv = _unimodular_inverse(res.right)
    basis, _ = hnf(rinv[:k])
    return basis[:k]


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    n = len(u)
    aug = [list(row) + list(e) for row, e in zip(u, identity(n))]
    h, _ = hnf(aug)
    return tuple(tuple(row[n:]) for row in h)


def rational_inverse(a: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse over the rationals by Gauss-Jordan elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


@dataclass(frozen=True)
class Overlattice:
    """The lattice ``(1/denominator) * rowspan(basis)``, containing ``Z^n``.

    Build instances with :meth:`make` (or :meth:`from_generators`) so the
    representation is canonical: ``basis`` is in Hermite form and
    ``denominator`` is the exponent of the quotient by ``Z^n``.
    """

    denominator: int
    basis: IntMatrix

    @classmethod
    def make(cls, denominator: int, basis: Sequence[Sequence[int]]) -> "Overlattice":
        basis = as_matrix(basis)
        n = len(basis[0])
        if denominator < 1:
            raise ValueError("denominator must be positive")
        h, _ = hnf(basis)
        h = h[:n]
        if len(h) < n or not all(any(row) for row in h):
            raise ValueError("basis must have full rank")
        # d * Z^n must lie in the row span
        full, _ = hnf(h + tuple(tuple(denominator * x for x in row) for row in identity(n)))
        if full[:n] != h:
            raise ValueError("lattice does not contain Z^n")
        g = math.gcd(denominator, *itertools.chain.from_iterable(h))
        if g > 1:
            denominator //= g
            h = tuple(tuple(x // g for x in row) for row in h)
        return cls(denominator, h)

    @classmethod
    def from_generators(cls, vectors: Sequence[Sequence[Fraction | int]]) -> "Overlattice":
        """``Z^n`` plus the given rational vectors."""
        vecs = [tuple(Fraction(x) for x in v) for v in vectors]
        n = len(vecs[0])
        d = math.lcm(1, *(x.denominator for v in vecs for x in v))
        rows = [tuple(int(x * d) for x in v) for v in vecs]
        rows += [tuple(d * x for x in e) for e in identity(n)]
        return cls.make(d, rows)

    @classmethod
    def standard(cls, n: int) -> "Overlattice":
        return cls(1, identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> int:
        """``[L : Z^n]``."""
        return self.denominator ** self.rank // abs(det(self.basis))

    @functools.cached_property
    def _adjugate(self) -> tuple[IntMatrix, int]:
        dt = det(self.basis)
        inv = rational_inverse(self.basis)
        return tuple(tuple(int(x * dt) for x in row) for row in inv), dt

    def coordinates(self, v: Sequence[Fraction | int]) -> tuple[int, ...]:
        """Integer coordinates of ``v`` in the lattice basis; raises if ``v`` is not in the lattice."""
        adj, dt = self._adjugate
        scale = math.lcm(*(Fraction(x).denominator for x in v))
        w = [int(Fraction(x) * scale) for x in v]
        coords = []
        for j in range(self.rank):
            num = self.denominator * sum(x * adj[i][j] for i, x in enumerate(w))
            q, r = divmod(num, dt * scale)
            if r:
                raise ValueError(f"{tuple(v)} is not in the lattice")
            coords.append(q)
        return tuple(coords)

    def vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(x, self.denominator) for x in row) for row in self.basis)


def is_primitive(v: Sequence[Fraction | int], lattice: Overlattice | None = None) -> bool:
    """True iff ``v`` is not a proper multiple of another lattice vector."""
    if not any(v):
        raise ValueError("zero vector is never primitive")
    coords = lattice.coordinates(v) if lattice is not None else tuple(int(x) for x in v)
    return content(coords) == 1


def hermite_forms(n: int, det_value: int) -> Iterator[IntMatrix]:
    """All upper-triangular row-style Hermite forms with the given determinant."""
    for diag in _ordered_factorizations(det_value, n):
        # entry (i, j) with i < j is reduced modulo the pivot diag[j]
        slots = [(i, j) for j in range(n) for i in range(j)]
        for values in itertools.product(*(range(diag[j]) for _, j in slots)):
            h = [[0] * n for _ in range(n)]
            for i in range(n):
                h[i][i] = diag[i]
            for (i, j), x in zip(slots, values):
                h[i][j] = x
            yield tuple(map(tuple, h))


def _ordered_factorizations(m: int, n: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (m,)
        return
    for d in range(1, m + 1):
        if m % d == 0:
            for rest in _ordered_factorizations(m // d, n - 1):
                yield (d, *rest)


def enumerate_overlattices(n: int, m: int) -> list[Overlattice]:
    """Every lattice containing ``Z^n`` with index ``m``, canonical and sorted.

    Uses duality: ``L -> L*`` is a bijection between overlattices of index
    ``m`` and sublattices of index ``m``, and the dual of ``rowspan(H)`` is
    spanned by the rows of ``H^-T``.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    found = set()
    for h in hermite_forms(n, m):
        inv = rational_inverse(h)
        dual = tuple(tuple(int(inv[j][i] * m) for j in range(n)) for i in range(n))
        found.add(Overlattice.make(m, dual))
    return sorted(found, key=lambda lat: (lat.denominator, lat.basis))
