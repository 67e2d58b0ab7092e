import itertools
import math
from fractions import Fraction

import pytest

from toric_lengths.fan import from_weights_with_overlattice, new_fano_fan
from toric_lengths.lattice import Overlattice


def leibniz_det(a):
    n = len(a)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total += (-1) ** inversions * math.prod(a[i][perm[i]] for i in range(n))
    return total


def brute_index(rows):
    """Index of a rank-k row span in its saturation: gcd of the k x k minors."""
    if not rows:
        return 1
    k, n = len(rows), len(rows[0])
    return math.gcd(
        *(leibniz_det([[r[c] for c in cols] for r in rows]) for cols in itertools.combinations(range(n), k))
    )


FAKE_P2_LATTICE = Overlattice.from_generators([(Fraction(1, 3), Fraction(2, 3))])


@pytest.fixture
def fake_p2():
    """P^2 modulo the index-3 overlattice Z^2 + Z (1/3)(1, 2)."""
    return from_weights_with_overlattice((1, 1, 1), FAKE_P2_LATTICE)


@pytest.fixture
def p2():
    return new_fano_fan([(1, 0), (0, 1), (-1, -1)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(RESULTS):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  [{detail}]")
