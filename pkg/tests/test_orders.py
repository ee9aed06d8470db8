import random

import pytest

from quartic_orders.census.quadratic import all_module_class_count, is_discriminant, wide_class_number
from quartic_orders.numfield import make_field
from quartic_orders.orders import (Order, class_number, conductor, equation_order, maximal_order, module_classes,
                                   modules_isomorphic, order_record, p_maximal_test, parse_order_record,
                                   quadratic_order, submodules, suborders_maximal_at_S, suborders_of_index)

X4X1 = (1, 1, 0, 0, 1)
ZETA5 = (1, 1, 1, 1, 1)


def test_maximal_order_examples():
    K = make_field((-5, 0, 1))
    Om = maximal_order(K)
    assert Om.discriminant == 5
    assert Om.index_in(Om) == 1 and equation_order(K).index_in(Om) == 2
    assert maximal_order(make_field(X4X1)).discriminant == 229
    assert maximal_order(make_field(ZETA5)).discriminant == 125
    assert maximal_order(make_field((1, 0, 0, 0, 1))).discriminant == 256


def test_maximal_order_is_maximal_everywhere():
    from sympy import factorint
    for f in ((12, 0, 0, 0, 1), (9, 0, 3, 0, 1), (6, 0, 3, 0, 1), (25, 0, 5, 0, 1), (5, 0, 0, 0, 1)):
        F = make_field(f)
        Om = maximal_order(F)
        idx = equation_order(F).index_in(Om)
        assert F.poly_disc == idx * idx * Om.discriminant
        assert all(p_maximal_test(Om, p) for p in factorint(F.poly_disc))


def test_p_maximal_examples():
    assert p_maximal_test(equation_order(make_field(X4X1)), 2)
    K = make_field((-5, 0, 1))
    assert not p_maximal_test(equation_order(K), 2)
    assert p_maximal_test(equation_order(K), 3)
    assert p_maximal_test(maximal_order(K), 2)


def test_conductor():
    K = make_field((-5, 0, 1))
    Om = maximal_order(K)
    assert conductor(Om).lattice == Om.as_lattice()
    Z5 = equation_order(K)
    f = conductor(Z5)
    assert f.lattice == Om.as_lattice().scale_int(2)
    F = make_field(ZETA5)
    assert conductor(maximal_order(F)).lattice == maximal_order(F).as_lattice()


def test_suborders_examples():
    Om = maximal_order(make_field(X4X1))
    assert [O.index for O in suborders_maximal_at_S(Om, [2, 3], 1)] == [1]
    # quadratic fields: exactly one order of each index
    Kq = maximal_order(make_field((-1, -1, 1)))
    orders = suborders_maximal_at_S(Kq, [], 6)
    assert [O.index for O in orders] == [1, 2, 3, 4, 5, 6]
    assert [O.discriminant for O in orders] == [5 * n * n for n in range(1, 7)]
    for O in suborders_maximal_at_S(Om, [2, 3], 4):
        assert all(p_maximal_test(O, p) for p in (2, 3))


def test_suborders_ring_closure_and_discriminant():
    for f in (X4X1, ZETA5):
        Om = maximal_order(make_field(f))
        for m in range(1, 5):
            for O in suborders_of_index(Om, m):
                assert O.is_ring()
                assert O.discriminant == m * m * Om.discriminant


def test_order_record_roundtrip():
    Om = maximal_order(make_field(X4X1))
    for O in suborders_maximal_at_S(Om, [5, 7], 4):
        text = order_record(O)
        assert text.startswith("order v1\npoly 1,1,0,0,1\n")
        back = parse_order_record(text)
        assert back.as_lattice() == O.as_lattice()
    with pytest.raises(ValueError):
        parse_order_record("order v9\npoly 1,1,0,0,1\nden 1\n")


def test_class_number_examples():
    assert class_number(maximal_order(make_field(ZETA5))) == 1
    assert class_number(maximal_order(make_field(X4X1))) == 1
    assert class_number(maximal_order(make_field((-10, 0, 1)))) == 2


def test_class_number_of_nonmaximal_quartic_orders():
    Om = maximal_order(make_field(X4X1))
    (O,) = [O for O in suborders_maximal_at_S(Om, [5, 7], 4) if O.index == 4]
    assert class_number(O) == 2
    assert class_number(O, invertible_only=True) == 1


def test_class_number_isomorphism_invariant(fields_300):
    for F in fields_300:
        G = make_field((F.gen + 1).minpoly())
        assert class_number(maximal_order(F)) == class_number(maximal_order(G))


def test_quadratic_class_numbers_small_range():
    for D in range(5, 200):
        if not is_discriminant(D):
            continue
        O = quadratic_order(D)
        assert class_number(O, invertible_only=True) == wide_class_number(D), D
        assert class_number(O) == all_module_class_count(D), D


def test_module_isomorphism_is_an_equivalence():
    rng = random.Random(6)
    Om = maximal_order(make_field(X4X1))
    (O,) = [O for O in suborders_maximal_at_S(Om, [5, 7], 4) if O.index == 4]
    mods = submodules(O, 12)
    sample = rng.sample(mods, min(8, len(mods)))
    iso = {(i, j): modules_isomorphic(a, b) for i, a in enumerate(sample) for j, b in enumerate(sample)}
    n = len(sample)
    for i in range(n):
        assert iso[i, i]
        for j in range(n):
            assert iso[i, j] == iso[j, i]
            for k in range(n):
                if iso[i, j] and iso[j, k]:
                    assert iso[i, k]
    assert len(module_classes(O, 12)) <= len(mods)
