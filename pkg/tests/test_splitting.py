import random
from fractions import Fraction
from types import SimpleNamespace

import pytest

from quartic_orders.numfield import ReducibleError, make_field
from quartic_orders.orders import equation_order, maximal_order
from quartic_orders.splitting import (DecomposedPrime, count_local_factors_bruteforce, embedding_count,
                                      embedding_criterion, in_C_of_S, in_Cc_of_S, is_local, lambda_S,
                                      local_factors, make_brauer_spec, polynomial_pattern, splitting_data)

X4X1 = (1, 1, 0, 0, 1)
ZETA5 = (1, 1, 1, 1, 1)
PRIMES = [p for p in range(2, 60) if all(p % q for q in range(2, p))]


def _om(f):
    return maximal_order(make_field(f))


def test_zeta5_splitting():
    Om = _om(ZETA5)
    sd = splitting_data(Om, 2)
    assert sd.pairs == ((1, 4),) and sd.non_decomposed and sd.inertia_degree == 4
    sd = splitting_data(Om, 5)
    assert sd.pairs == ((4, 1),) and sd.inertia_degree == 1
    sd = splitting_data(Om, 11)
    assert sd.pairs == ((1, 1),) * 4 and not sd.non_decomposed
    assert sd.fingerprint() == "p=11:(1,1)(1,1)(1,1)(1,1)"


def test_splitting_preconditions():
    with pytest.raises(ValueError):
        splitting_data(_om(ZETA5), 4)
    K = make_field((-5, 0, 1))
    with pytest.raises(ValueError):
        splitting_data(equation_order(K), 2)


def test_lambda_examples():
    assert lambda_S(make_field(ZETA5), [2, 5]) == 4
    F = make_field(X4X1)
    assert lambda_S(F, [2, 7]) == 16
    with pytest.raises(DecomposedPrime) as exc:
        lambda_S(F, [2, 3])
    assert exc.value.p == 3
    with pytest.raises(ValueError):
        lambda_S(F, [])


def test_membership_examples():
    assert in_C_of_S(make_field(ZETA5), [2, 5])
    assert not in_Cc_of_S(make_field(ZETA5), [2, 5])
    assert not in_C_of_S(make_field(X4X1), [2, 3])
    assert in_Cc_of_S(make_field(X4X1), [2, 7])
    assert not in_C_of_S(make_field((-2, 0, 0, 0, 1)), [2, 3])
    with pytest.raises(ValueError):
        in_C_of_S(make_field((-5, 0, 1)), [2, 3])


def test_embedding_criterion():
    assert embedding_criterion(make_field((-1, 1)), [2, 3])
    assert embedding_criterion(make_field(ZETA5), [2, 5])
    assert not embedding_criterion(SimpleNamespace(degree=3), [2, 3])
    assert not embedding_criterion(make_field(X4X1), [2, 3])


def test_brauer_spec():
    spec = make_brauer_spec([3, 2])
    assert spec.invariants == {2: Fraction(1, 4), 3: Fraction(3, 4)} and spec.total() == 1
    spec = make_brauer_spec([2, 3, 5, 7])
    assert [spec.invariant(p) for p in (2, 3, 5, 7)] == [Fraction(1, 4), Fraction(3, 4)] * 2
    assert spec.total() == 2 and spec.invariant(11) == 0
    for bad in ([2], [], [2, 4], [2, 3, 5]):
        with pytest.raises(ValueError):
            make_brauer_spec(bad)


def test_embedding_count():
    assert embedding_count(_om(ZETA5), [2, 5]) == 4
    assert embedding_count(_om(X4X1), [2, 7]) == 16


def random_pairs(n, seed):
    """n (field polynomial, prime) pairs over random irreducible quartics and quadratics."""
    rng = random.Random(seed)
    fields = {}
    out = []
    while len(out) < n:
        deg = rng.choice([2, 4, 4, 4])
        f = tuple(rng.randint(-6, 6) for _ in range(deg)) + (1,)
        if f not in fields:
            try:
                fields[f] = make_field(f)
            except ReducibleError:
                continue
        out.append((fields[f], rng.choice(PRIMES[:10])))
    return out


def check_pair(F, p):
    """Fundamental identity, and agreement with factoring f mod p when p does not divide the index."""
    Om = maximal_order(F)
    sd = splitting_data(Om, p)
    assert sum(e * f for e, f in sd.pairs) == F.degree
    index2 = F.poly_disc // Om.discriminant
    if index2 % p:
        assert list(sd.pairs) == polynomial_pattern(F.poly, p)
    return sd


def test_splitting_random_pairs():
    for F, p in random_pairs(150, seed=12):
        check_pair(F, p)


def test_local_ring_two_ways():
    for F, p in random_pairs(60, seed=13):
        if p > 5:
            continue
        Om = maximal_order(F)
        k = len(local_factors(Om, p))
        assert count_local_factors_bruteforce(Om, p) == k
        assert is_local(Om, p) == (k == 1) == splitting_data(Om, p).non_decomposed
