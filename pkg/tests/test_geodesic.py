import math

import numpy as np
import pytest
from mpmath import iv

from quartic_orders import geodesic as G
from quartic_orders.exactmath import balls
from quartic_orders.exactmath import poly as P
from quartic_orders.numfield import has_real_quadratic_subfield, make_field
from quartic_orders.orders import maximal_order, suborders_maximal_at_S
from quartic_orders.unitsreg import unit_data

X4X1 = (1, 1, 0, 0, 1)
ZETA5 = (1, 1, 1, 1, 1)
GOLDEN = (1 + 5 ** 0.5) / 2


def companion(f):
    n = P.degree(f)
    return tuple(tuple((1 if i == j + 1 else 0) if j < n - 1 else -f[i] for j in range(n)) for i in range(n))


def _om(f):
    return maximal_order(make_field(f))


def test_regular_rep_examples():
    O = _om(X4X1)
    F = O.field
    assert G.regular_rep(F.one, O) == tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    gamma = G.regular_rep(F.gen, O)
    assert gamma == companion(X4X1)
    assert G.determinant(gamma) == 1 and G.charpoly(gamma) == X4X1
    Oz = _om(ZETA5)
    g = np.array(G.regular_rep(Oz.field.gen, Oz))
    assert (np.linalg.matrix_power(g, 5) == np.eye(4, dtype=int)).all()
    with pytest.raises(ValueError):
        G.regular_rep(F.gen / 2, O)


def test_charpoly_branches():
    O = _om(ZETA5)
    d = unit_data(O)
    gamma = G.regular_rep(d.fundamental, O)
    g = d.fundamental.minpoly()
    assert P.degree(g) == 2
    assert G.charpoly(gamma) == P.power(g, 2)
    O = _om(X4X1)
    d = unit_data(O)
    assert G.charpoly(G.regular_rep(d.fundamental, O)) == d.fundamental.minpoly()


def test_eigen_parameters_examples():
    a, theta, phi = G.eigen_parameters(companion(X4X1))
    roots = np.roots([1, 0, 0, 1, 1])
    small = min(abs(r) for r in roots)
    assert abs(float(balls.mid(a)) - small) < 1e-14
    assert 0 <= balls.lower(theta) and balls.upper(theta) <= math.pi + 1e-30
    with pytest.raises(G.NotHyperbolic):
        G.eigen_parameters(companion(ZETA5))
    O = _om(ZETA5)
    gamma = G.regular_rep(unit_data(O).fundamental, O)
    assert abs(float(balls.mid(G.eigen_parameters(gamma)[0])) - 1 / GOLDEN) < 1e-14


def test_length_and_norm():
    with balls.ivprec():
        length, norm = G.length_and_norm(iv.exp(iv.mpf(-1) / 8))
    assert balls.contains(length, 1) or abs(float(balls.mid(length)) - 1) < 1e-60
    assert abs(float(balls.mid(norm)) - math.e) < 1e-14
    O = _om(ZETA5)
    d = unit_data(O)
    gd = G.geodesic_data(O, d)
    assert abs(float(balls.mid(gd.length)) - 4 * 0.9624236501192069) < 1e-12
    rel, ok = G.norm_matches_regulator(gd, d.regulator)
    assert ok and rel < 1e-40


def test_classify():
    assert G.classify(companion(X4X1)) == G.REGULAR
    block = ((1, 2, 0, 0), (1, 1, 0, 0), (0, 0, 1, 2), (0, 0, 1, 1))
    assert G.classify(block) == G.NONREGULAR
    assert not G.weakly_neat(block)
    ident = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    with pytest.raises(ValueError):
        G.classify(ident)


def test_weakly_neat_examples():
    assert G.weakly_neat(companion(X4X1))
    O = _om(ZETA5)
    gamma = G.regular_rep(unit_data(O).fundamental, O)
    assert not G.weakly_neat(gamma)
    # Z[zeta_12]: eigenvalue ratios include e^(2 pi i/3)-type roots of unity
    O12 = _om((1, 0, -1, 0, 1))
    g12 = G.regular_rep(unit_data(O12).fundamental * O12.field.gen, O12)
    assert not G.weakly_neat(g12)
    assert G.ratio_roots_of_unity_numeric(g12) - {1}


def test_weakly_neat_matches_numeric_prefilter(fields_300):
    for F in fields_300:
        O = maximal_order(F)
        gamma = G.regular_rep(unit_data(O).fundamental, O)
        # a hit at n = 1 means a repeated eigenvalue, which also rules out weak neatness
        numeric = not G.ratio_roots_of_unity_numeric(gamma)
        assert G.weakly_neat(gamma) == numeric == (not has_real_quadratic_subfield(F))


def test_ka_condition():
    # zeta_8 (1 + sqrt 2): the angles are odd multiples of pi/4 and theta - phi is a multiple of pi/2
    O8 = _om((1, 0, 0, 0, 1))
    F = O8.field
    z = F.gen
    eps = z * (F.one + z - z * z * z)           # sqrt 2 = z - z^3
    gamma = G.regular_rep(eps, O8)
    assert G.ka_condition(gamma)
    a, theta, phi = G.eigen_parameters(gamma)
    assert G.ka_condition_numeric(theta, phi)
    assert not G.ka_condition(companion(X4X1))
    gd = G.geodesic_data(_om(X4X1), unit_data(_om(X4X1)))
    assert G.check_ka_implication(1, gd)


def test_conjugation():
    for gamma in (companion(X4X1), companion((1, -1, 0, 0, 1)), companion((1, 2, 0, -1, 1))):
        Z, target, residual = G.conjugate_into_AB(gamma, eps=1e-8)
        assert residual <= 1e-8
        assert abs(np.linalg.det(Z) - 1) <= 1e-8
        assert np.allclose(np.linalg.solve(Z, np.array(gamma, dtype=float) @ Z), target, atol=1e-8)
    with pytest.raises(G.NotHyperbolic):
        G.conjugate_into_AB(companion(ZETA5))


def test_multiplicities():
    assert G.chi1(2) == 0.5
    assert G.theta_multiplicity(1, 4, 10, 2) == 80
    assert G.theta_multiplicity(1, 16, 2, 1) == 128
    with pytest.raises(ValueError):
        G.theta_multiplicity(1, 1, 2, 3)
    with pytest.raises(ValueError):
        G.chi1(0)


def test_identities_on_small_census(fields_300):
    for F in fields_300:
        Om = maximal_order(F)
        for O in suborders_maximal_at_S(Om, [5, 7], 4):
            d = unit_data(O)
            gd = G.geodesic_data(O, d)
            assert G.determinant(gd.gamma) == 1
            assert G.norm_matches_regulator(gd, d.regulator)[1]
            assert gd.weakly_neat == (not has_real_quadratic_subfield(F))
            assert G.check_ka_implication(d.kappa, gd)
            Z, _, residual = G.conjugate_into_AB(gd.gamma)
            assert residual <= 1e-8
