import random
from fractions import Fraction

import pytest

from quartic_orders.exactmath import balls, ffield, linalg
from quartic_orders.exactmath import poly as P
from quartic_orders.exactmath.roots import NotSquarefree, isolate_roots
from quartic_orders.exactmath.shortvec import enumerate_short


X4X1 = (1, 1, 0, 0, 1)


@pytest.mark.parametrize("f, d", [((-5, 0, 1), 20), (X4X1, 229), ((1, 0, 0, 0, 1), 256), ((1, 1, 1, 1, 1), 125)])
def test_discriminant_examples(f, d):
    assert P.discriminant(f) == d


def test_discriminant_matches_sylvester_resultant():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(2, 4)
        f = tuple(rng.randint(-9, 9) for _ in range(n)) + (1,)
        sign = (-1) ** (n * (n - 1) // 2)
        assert P.discriminant(f) == sign * P.resultant_sylvester(f, P.derivative(f))
        assert P.resultant(f, P.derivative(f)) == P.resultant_sylvester(f, P.derivative(f))


def test_poly_string_roundtrip():
    assert P.from_string("1,1,0,0,1") == X4X1
    assert P.to_string(X4X1) == "1,1,0,0,1"
    assert P.pretty(X4X1) == "x^4 + x + 1"


def test_cyclotomic_and_phi():
    assert P.cyclotomic(5) == (1, 1, 1, 1, 1)
    assert P.cyclotomic(8) == (1, 0, 0, 0, 1)
    assert [P.euler_phi(n) for n in (1, 5, 12, 16)] == [1, 4, 4, 8]


def test_factor_examples():
    assert ffield.factor_mod_p(X4X1, 2) == [(X4X1, 1)]
    facs = ffield.factor_mod_p(X4X1, 3)
    assert sorted(P.degree(g) for g, _ in facs) == [1, 3]
    assert ((2, 1), 1) in facs          # x - 1 = x + 2 mod 3
    assert ffield.factor_mod_p((-5, 0, 1), 5) == [((0, 1), 2)]


def _expand(facs, p):
    out = (1,)
    for g, k in facs:
        for _ in range(k):
            out = ffield.mul(out, g, p)
    return out


def test_factor_remultiplies():
    rng = random.Random(7)
    primes = [p for p in range(2, 98) if all(p % q for q in range(2, p))]
    for _ in range(1000):
        p = rng.choice(primes)
        n = rng.randint(1, 6)
        f = tuple(rng.randrange(p) for _ in range(n)) + (1,)
        facs = ffield.factor_mod_p(f, p, seed=rng.getrandbits(64))
        assert _expand(facs, p) == ffield.reduce(f, p)
        assert all(ffield.is_irreducible_exhaustive(g, p) for g, _ in facs if p <= 7)


def test_factor_agrees_with_exhaustive_for_small_p():
    rng = random.Random(3)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        f = tuple(rng.randrange(p) for _ in range(4)) + (1,)
        fast = sorted(ffield.factor_mod_p(f, p))
        slow = sorted(ffield.factor_mod_p_exhaustive(f, p))
        assert fast == slow


def test_factor_is_seed_independent():
    f = (3, 1, 4, 1, 5, 9, 2, 6, 1)
    ref = sorted(ffield.factor_mod_p(f, 31, seed=0))
    assert all(sorted(ffield.factor_mod_p(f, 31, seed=s)) == ref for s in range(1, 6))


def test_factor_rejects_composite_modulus():
    with pytest.raises(ValueError):
        ffield.factor_mod_p(X4X1, 4)


def test_roots_mod_p():
    assert ffield.roots_mod_p(X4X1, 3) == [1]
    assert sorted(ffield.roots_mod_p((1, 1, 1, 1, 1), 11)) == [3, 4, 5, 9]


def test_hnf_examples():
    assert linalg.hnf([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]
    assert linalg.hnf([[2, 0], [1, 1]]) == [[1, 1], [0, 2]]
    assert linalg.hnf([[0, 0], [0, 0]]) == [[0, 0], [0, 0]]


def test_hnf_idempotent_and_det():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 4)
        m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        h = linalg.hnf(m)
        assert linalg.hnf(h) == h
        assert linalg.is_hnf(h)
        d = linalg.det(m)
        if d:
            assert abs(linalg.det(h)) == abs(d)


def test_rank_and_kernel_mod():
    m = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert linalg.rank_mod(m, 7) == 2
    for v in linalg.left_kernel_mod(m, 7):
        assert all(sum(v[i] * m[i][j] for i in range(3)) % 7 == 0 for j in range(3))


def test_isolate_roots_examples():
    boxes = isolate_roots((1, 0, 1), Fraction(1, 100))
    assert len(boxes) == 2 and not any(b.is_real for b in boxes)
    assert {round(float(b.im)) for b in boxes} == {-1, 1}
    boxes = isolate_roots((-2, 0, 0, 0, 1))
    real = sorted(float(b.re) for b in boxes if b.is_real)
    assert len(real) == 2 and abs(real[1] - 2 ** 0.25) < 1e-12 and abs(real[0] + 2 ** 0.25) < 1e-12
    assert not any(b.is_real for b in isolate_roots(X4X1))


def test_root_boxes_certified():
    rng = random.Random(11)
    for _ in range(30):
        f = tuple(rng.randint(-5, 5) for _ in range(4)) + (1,)
        if P.degree(P.gcd_poly(f, P.derivative(f))) > 0:
            continue
        boxes = isolate_roots(f)
        assert len(boxes) == 4
        with balls.ivprec():
            for b in boxes:
                z = balls.box_interval(b)
                # f has a zero in the box, so its value ball contains 0
                assert balls.contains(balls.horner(f, z), (0, 0))


def test_isolate_rejects_repeated_roots():
    with pytest.raises(NotSquarefree):
        isolate_roots((1, 2, 1))


def test_enumerate_short_counts_lattice_points():
    gram = [[2.0, 1.0], [1.0, 2.0]]        # A2 lattice
    vecs = list(enumerate_short(gram, 2.0))
    # six minimal vectors, one per sign pair
    assert len(vecs) == 3
    assert all(v[-1] > 0 or (v[-1] == 0 and v[0] > 0) for v in vecs)
