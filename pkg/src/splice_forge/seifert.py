"""Exact Seifert invariants of one inner vertex.

For pairwise coprime denominators a_1..a_k the numerators b_i are chosen with
sum_i b_i * sigma_i = 1, where sigma_i is the product of the other a_j.  The
meridian/longitude pair of the i-th core and the (Q_i, H) basis of the i-th
boundary torus are related by the unimodular matrices returned by
:func:`basis_change`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import NotCoprimeError


def _check(a):
    a = [int(x) for x in a]
    if not a:
        raise ValueError("need at least one weight")
    if any(x < 1 for x in a):
        raise ValueError(f"weights must be positive, got {a}")
    for x, y in combinations(a, 2):
        if math.gcd(x, y) != 1:
            raise NotCoprimeError(f"weights {a} are not pairwise coprime")
    return a


def _sigmas(a):
    A = math.prod(a)
    return [A // x for x in a]


def solve_b(a) -> list[int]:
    """Canonical numerators: b_i in [0, a_i) for i >= 2, b_1 fixed by the sum."""
    a = _check(a)
    sigma = _sigmas(a)
    b = [0] * len(a)
    for i in range(1, len(a)):
        b[i] = pow(sigma[i] % a[i], -1, a[i]) if a[i] > 1 else 0
    rest = 1 - sum(bi * si for bi, si in zip(b[1:], sigma[1:]))
    q, r = divmod(rest, sigma[0])
    assert r == 0, "integrality of b_1 follows from pairwise coprimality"
    b[0] = q
    return b


@dataclass(frozen=True)
class SeifertNodeData:
    a: tuple[int, ...]
    b: tuple[int, ...]
    sigma: tuple[int, ...]
    delta: tuple[int, ...]
    A: int

    @property
    def k(self) -> int:
        return len(self.a)

    def to_dict(self) -> dict:
        return {
            "a": list(self.a),
            "b": list(self.b),
            "sigma": list(self.sigma),
            "delta": list(self.delta),
            "A": self.A,
        }

    def check(self) -> None:
        """Assert every exact identity the invariants must satisfy."""
        assert self.A > 0
        assert sum(b * s for b, s in zip(self.b, self.sigma)) == 1
        for a, b, s, dl in zip(self.a, self.b, self.sigma, self.delta):
            assert a * dl + b * s == 1
        assert sum(Fraction(b, a) for a, b in zip(self.a, self.b)) == Fraction(1, self.A)


def node_data(a) -> SeifertNodeData:
    a = _check(a)
    b = solve_b(a)
    sigma = _sigmas(a)
    k = len(a)
    delta = []
    for i in range(k):
        total = 0
        for j in range(k):
            if j != i:
                total += b[j] * math.prod(a[l] for l in range(k) if l not in (i, j))
        delta.append(total)
    return SeifertNodeData(tuple(a), tuple(b), tuple(sigma), tuple(delta), math.prod(a))


@dataclass(frozen=True)
class BasisChange:
    to_ql: tuple[tuple[int, int], tuple[int, int]]
    to_ml: tuple[tuple[int, int], tuple[int, int]]

    @property
    def det(self) -> int:
        (p, q), (r, s) = self.to_ql
        return p * s - q * r


def basis_change(nd: SeifertNodeData, i: int) -> BasisChange:
    """Matrices for boundary torus ``i`` (1-based).

    ``to_ql`` maps (Q_i, H) coordinates to (meridian, longitude); ``to_ml`` is
    its inverse.
    """
    if not 1 <= i <= nd.k:
        raise IndexError(f"index {i} outside 1..{nd.k}")
    a, b, s, d = nd.a[i - 1], nd.b[i - 1], nd.sigma[i - 1], nd.delta[i - 1]
    return BasisChange(((a, b), (-s, d)), ((d, -b), (s, a)))


def matmul2(m, n):
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )
