import dataclasses
import math

import numpy as np
import pytest

from quartic_orders.exactmath import balls
from quartic_orders.numfield import has_real_quadratic_subfield, make_field
from quartic_orders.orders import maximal_order, quadratic_order, suborders_maximal_at_S
from quartic_orders.unitsreg import (RankError, fundamental_unit, kappa, kappa_oracle, mu, nu, phase_product,
                                     regulator, torsion_units, unit_data, verify_fundamental)

X4X1 = (1, 1, 0, 0, 1)
ZETA5 = (1, 1, 1, 1, 1)
GOLDEN = (1 + 5 ** 0.5) / 2


def _om(f):
    return maximal_order(make_field(f))


def test_torsion_examples():
    assert mu(_om(ZETA5)) == 10
    assert mu(_om(X4X1)) == 2
    assert mu(quadratic_order(20)) == 2
    assert all(z ** 10 == z.field.one for z in torsion_units(_om(ZETA5)))


def test_quadratic_units():
    d = fundamental_unit(quadratic_order(5))
    assert abs(float(balls.mid(d.regulator)) - 0.481211825) < 1e-9
    e = d.fundamental
    assert e * e - e == e.field.one
    assert abs(float(balls.mid(regulator(quadratic_order(8)))) - 0.881373587) < 1e-9


def test_zeta5_unit():
    d = fundamental_unit(_om(ZETA5))
    assert abs(float(balls.mid(d.regulator)) - 2 * math.log(GOLDEN)) < 1e-12
    mods = sorted(abs(complex(d.fundamental.approx(i))) for i in range(4))
    assert abs(mods[-1] - GOLDEN) < 1e-12


def test_x4x1_generator_is_fundamental():
    O = _om(X4X1)
    d = fundamental_unit(O)
    a = O.field.gen
    # the normalized unit and a differ by torsion and inversion
    assert any(a == z * e for z in d.torsion for e in (d.fundamental, d.fundamental.inverse()))
    assert d.certified_height_bound is not None


def test_regulator_conventions():
    O = _om(ZETA5)
    a = float(balls.mid(regulator(O, "paper-a")))
    b = float(balls.mid(fundamental_unit(O, "paper-b").regulator))
    assert abs(b - 2 * a) < 1e-12
    q = quadratic_order(5)
    assert abs(float(balls.mid(regulator(q, "paper-a"))) - float(balls.mid(regulator(q, "paper-b")))) < 1e-15


def test_rank_errors():
    with pytest.raises(RankError):
        fundamental_unit(maximal_order(make_field((1, 0, 1))))
    with pytest.raises(RankError):
        fundamental_unit(maximal_order(make_field((-2, 0, 0, 0, 1))))


def test_kappa_examples():
    assert kappa(_om(X4X1)) == 1
    O = _om(ZETA5)
    assert kappa(O) == 2
    assert fundamental_unit(O).fundamental.minpoly() in ((-1, 1, 1), (-1, -1, 1))


def test_phase_product_extremes():
    F = make_field(X4X1)
    assert balls.contains(phase_product(F.one), 0)
    assert balls.contains(phase_product(-F.one), 16)


def test_nu_x4x1_against_root_arguments():
    z = np.roots([1, 0, 0, 1, 1])
    reps = [r for r in z if r.imag > 0]
    t = [np.angle(r) for r in reps]
    # units +-a^(+-1): the inverse conjugates the argument, the sign flips cos
    plus = np.prod([2 - 2 * math.cos(x) for x in t])
    minus = np.prod([2 + 2 * math.cos(x) for x in t])
    expected = (plus + minus) / 2
    assert abs(float(balls.mid(nu(_om(X4X1)))) - expected) < 1e-12


def _corpus_orders(fields):
    out = []
    for F in fields:
        Om = maximal_order(F)
        out.extend(suborders_maximal_at_S(Om, [5, 7], 4))
    return out


def test_unit_invariants_on_corpus(fields_300):
    orders = _corpus_orders(fields_300)
    assert len(orders) >= 10
    for O in orders:
        d = unit_data(O)
        for u in d.torsion + [d.fundamental, d.fundamental.inverse()]:
            assert u.norm() == 1
            assert O.contains_element(u)
        assert d.mu in (2, 4, 6, 8, 10, 12)
        if not has_real_quadratic_subfield(O.field):
            assert d.mu in (2, 4, 6)
        assert d.kappa in (1, 2, 4)
        assert d.kappa == kappa_oracle(O, d)
        # certified: the ball meets [0, 16] (nu can be exactly 0)
        assert balls.upper(d.nu) >= 0 and balls.lower(d.nu) <= 16


def test_fundamental_certificate_doubling(fields_300):
    for O in _corpus_orders(fields_300)[:10]:
        assert verify_fundamental(O, factor=2.0)


def test_nu_orbit_invariance(fields_300):
    for F in fields_300[:5]:
        O = maximal_order(F)
        d = unit_data(O)
        for z in d.torsion[:3]:
            other = dataclasses.replace(d, fundamental=z * d.fundamental.inverse(), nu=None, kappa=None)
            assert abs(float(balls.mid(nu(O, other))) - float(balls.mid(d.nu))) < 1e-30
