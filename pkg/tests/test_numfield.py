import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from sympy import Poly, symbols

from quartic_orders.exactmath import balls
from quartic_orders.numfield import (ReducibleError, automorphisms, has_real_quadratic_subfield, is_isomorphic,
                                     make_field, quadratic_subfields, roots_in_field, squarefree_kernel)

X4X1 = (1, 1, 0, 0, 1)
ZETA5 = (1, 1, 1, 1, 1)
ZETA8 = (1, 0, 0, 0, 1)


@pytest.mark.parametrize("f, sig", [(X4X1, (0, 2)), ((-2, 0, 0, 0, 1), (2, 1)), (ZETA5, (0, 2)), ((-5, 0, 1), (2, 0))])
def test_signature(f, sig):
    assert make_field(f).signature == sig


def test_element_examples():
    F = make_field(X4X1)
    a = F.gen
    assert a.norm() == 1
    assert a.trace() == 0
    K = make_field((-5, 0, 1))
    assert K.gen.minpoly() == (-5, 0, 1)
    x = F.element([3, -1, 2, 5])
    assert x * x.inverse() == F.one
    assert (x * x - x).minpoly()[-1] == 1


def test_embeddings():
    F = make_field(X4X1)
    assert balls.contains(F.one.embed(0), 1)
    K = make_field((-5, 0, 1))
    assert abs(complex(balls.mid(K.gen.embed(0))) + 5 ** 0.5) < 1e-15
    with balls.ivprec():
        z0, z2 = F.gen.embed(0), F.gen.embed(2)
        prod = balls.abs_ball(z0) * balls.abs_ball(z2)
    assert balls.contains(prod, 1)


def test_norm_and_trace_contained_in_embedding_balls():
    rng = random.Random(2)
    for f in (X4X1, ZETA5, (-2, 0, 0, 0, 1), (6, 0, 3, 0, 1)):
        F = make_field(f)
        for _ in range(5):
            x = F.element([Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(4)])
            if x.is_zero():
                continue
            with balls.ivprec():
                vals = [x.embed(i) for i in range(4)]
                prod, total = vals[0], vals[0]
                for v in vals[1:]:
                    prod = prod * v
                    total = total + v
            n, t = x.norm(), x.trace()
            assert balls.contains(prod, (n, 0)) and balls.contains(total, (t, 0))


def test_quadratic_subfield_examples():
    assert quadratic_subfields(make_field(X4X1)) == []
    assert quadratic_subfields(make_field(ZETA5)) == [((-1, -1, 1), True)]
    subs = quadratic_subfields(make_field(ZETA8))
    assert len(subs) == 3 and [g for g, real in subs if real] == [(-2, 0, 1)]
    assert not has_real_quadratic_subfield(make_field(X4X1))
    assert has_real_quadratic_subfield(make_field(ZETA5))
    assert has_real_quadratic_subfield(make_field(ZETA8))


def _subfields_by_search(F, bound=5):
    """d of every Q(sqrt d) generated by some sum c_i a^i with |c_i| <= bound."""
    z = np.array(F.root_complex)
    powers = np.array([z ** i for i in range(1, 4)])
    found = set()
    for c in product(range(-bound, bound + 1), repeat=3):
        if not any(c):
            continue
        v = np.array(c) @ powers
        keys, first = np.unique(np.round(v, 6), return_index=True)
        if len(keys) != 2:
            continue
        d2 = (v[first[0]] - v[first[1]]) ** 2
        if abs(d2.imag) > 1e-6 or abs(d2.real - round(d2.real)) > 1e-6:
            continue
        found.add(squarefree_kernel(int(round(d2.real))))
    return found


def _corpus(n=50, seed=4):
    rng = random.Random(seed)
    out = [X4X1, ZETA5, ZETA8, (6, 0, 3, 0, 1), (5, 0, 0, 0, 1), (1, 0, -1, 0, 1), (2, 0, 0, 0, 1)]
    while len(out) < n:
        if rng.random() < 0.5:
            f = (rng.randint(1, 9), 0, rng.randint(-6, 6), 0, 1)
        else:
            f = tuple(rng.randint(-4, 4) for _ in range(4)) + (1,)
        try:
            make_field(f)
        except ReducibleError:
            continue
        if f not in out:
            out.append(f)
    return out


def test_quadratic_subfields_match_search_oracle():
    for f in _corpus():
        F = make_field(f)
        reported = {squarefree_kernel(g[1] ** 2 - 4 * g[0]) for g, _ in quadratic_subfields(F)}
        found = _subfields_by_search(F)
        assert found <= reported, f
        if f[1] == 0 and f[3] == 0:
            # a^2 generates a quadratic subfield, so the search cannot miss
            assert found, f
        for g, real in quadratic_subfields(F):
            assert roots_in_field(g, F), (f, g)
            assert real == (g[1] ** 2 - 4 * g[0] > 0)


def test_make_field_rejects_exactly_the_reducible():
    x = symbols("x")
    rng = random.Random(8)
    seen = 0
    for _ in range(200):
        f = tuple(rng.randint(-3, 3) for _ in range(4)) + (1,)
        irreducible = Poly(list(reversed(f)), x).is_irreducible
        try:
            make_field(f)
            assert irreducible, f
        except ReducibleError:
            assert not irreducible, f
            seen += 1
    assert seen > 0


def test_make_field_rejects_x4():
    with pytest.raises(ReducibleError):
        make_field((0, 0, 0, 0, 1))


def test_totally_complex_has_no_real_roots(fields_300):
    for F in fields_300:
        assert F.signature == (0, 2)
        assert not any(b.is_real for b in F.roots)


def test_automorphisms_and_isomorphism():
    assert len(automorphisms(make_field(ZETA5))) == 4
    assert len(automorphisms(make_field(X4X1))) == 1
    F = make_field(X4X1)
    # minimal polynomial of a + 1
    G = make_field((F.gen + 1).minpoly())
    assert is_isomorphic(F, G) and is_isomorphic(G, F)
    assert not is_isomorphic(F, make_field(ZETA5))
