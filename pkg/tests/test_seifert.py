from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given

from splice_forge.errors import NotCoprimeError
from splice_forge.seifert import basis_change, matmul2, node_data, solve_b
from strategies import coprime_weights


def test_poincare_node_values():
    nd = node_data([2, 3, 5])
    assert nd.A == 30
    assert nd.b == (-1, 1, 1)
    assert nd.sigma == (15, 10, 6)
    assert nd.delta == (8, -3, -1)


def test_two_weight_node():
    nd = node_data([2, 3])
    assert nd.sigma == (3, 2)
    assert sum(b * s for b, s in zip(nd.b, nd.sigma)) == 1


def test_canonical_b_range():
    # all but the first b_i lie in [0, a_i)
    nd = node_data([7, 11, 13, 2])
    assert all(0 <= b < a for a, b in zip(nd.a[1:], nd.b[1:]))


def test_not_coprime_rejected():
    with pytest.raises(NotCoprimeError):
        node_data([4, 6, 5])


@given(coprime_weights())
def test_exact_identities(ws):
    nd = node_data(ws)
    nd.check()
    assert sum(Fraction(b, a) for a, b in zip(nd.a, nd.b)) == Fraction(1, prod(ws))
    for a, b in zip(nd.a, nd.b):
        assert gcd(a, b) == 1


@given(coprime_weights())
def test_basis_change_unimodular_and_inverse(ws):
    nd = node_data(ws)
    for i in range(1, nd.k + 1):
        bc = basis_change(nd, i)
        assert bc.det == 1
        assert matmul2(bc.to_ql, bc.to_ml) == ((1, 0), (0, 1))


def test_basis_index_checked():
    with pytest.raises(IndexError):
        basis_change(node_data([2, 3]), 3)


def test_solve_b_deterministic():
    assert solve_b([2, 3, 5]) == solve_b((2, 3, 5))
