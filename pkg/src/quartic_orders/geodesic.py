"""Closed geodesics from units: the integer matrix of a unit and its invariants.

A unit eps of an order O acts on O by multiplication; in an order basis this
is an integer 4x4 matrix gamma with det 1.  Its eigenvalues are the
embedding values of eps, which for a hyperbolic unit come as a conjugate
pair of modulus a < 1 and a pair of modulus 1/a:

    {a e^(+-i theta), a^-1 e^(+-i phi)}

Lengths, norms and the angle conditions are read off these parameters.
Root-of-unity questions about eigenvalue ratios and products are decided
exactly with resultants; the interval values are reported alongside.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy
from mpmath import iv

from .exactmath import balls
from .exactmath import poly as P
from .exactmath.roots import isolate_roots

# n > 1 with phi(n) <= 16: every root of unity of degree <= 16 has such an order
RATIO_ORDERS = tuple(n for n in range(2, 61) if P.euler_phi(n) <= 16)
# e^(i psi) with psi in (pi/2)Z or (pi/3)Z has order dividing 4 or 6
ANGLE_ORDERS = (1, 2, 3, 4, 6)

REGULAR = "regular-totally-complex"
NONREGULAR = "nonregular-real-quadratic-quaternion"


class NotHyperbolic(ValueError):
    """Some eigenvalue lies on the unit circle."""


class ConjugationFailed(ArithmeticError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"conjugation residual {residual:.3e} above tolerance")


@dataclass
class GeodesicData:
    gamma: tuple
    a: object
    theta: object
    phi: object
    length: object
    norm: object
    regular: bool
    weakly_neat: bool


def regular_rep(eps, O):
    """Matrix of x -> eps*x in the basis of O (column j = coordinates of eps*b_j)."""
    if not O.contains_element(eps):
        raise ValueError("element is not in the order")
    c = [int(x) for x in O.coords_of_element(eps)]
    rows = O.regular_rows(c)
    n = O.n
    return tuple(tuple(int(rows[j][i]) for j in range(n)) for i in range(n))


def charpoly(gamma):
    """Characteristic polynomial of an integer matrix, low degree first."""
    coeffs = sympy.Matrix(gamma).charpoly().all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def determinant(gamma):
    return int(sympy.Matrix(gamma).det())


def minimal_polynomial(gamma):
    """Squarefree part of the characteristic polynomial.

    Matrices of field elements are semisimple, so this is their minimal
    polynomial."""
    return P.primitive_part(P.squarefree_part(charpoly(gamma)))


# -- eigenvalue parameters ----------------------------------------------------------


def _eigen_boxes(gamma, eps=Fraction(1, 10 ** 40)):
    """Certified boxes for the distinct eigenvalues."""
    return isolate_roots(minimal_polynomial(gamma), eps)


def _angle(box):
    """Ball for arg z in [0, pi] (z in the closed upper half plane)."""
    with balls.ivprec():
        if box.is_real:
            return iv.mpf(0) if box.re > 0 else iv.pi
        z = balls.box_interval(box)
        return iv.atan2(abs(z.imag), z.real)


def eigen_parameters(gamma):
    """Certified balls (a, theta, phi) with eigenvalues a e^(+-i theta), a^-1 e^(+-i phi)."""
    boxes = _eigen_boxes(gamma)
    small, large = [], []
    with balls.ivprec():
        for box in boxes:
            m = balls.abs_ball(balls.box_interval(box))
            lo, hi = balls.endpoints(m)
            if hi < 1:
                small.append((box, m))
            elif lo > 1:
                large.append((box, m))
            else:
                raise NotHyperbolic("eigenvalue on the unit circle")
    if not small or not large:
        raise NotHyperbolic("eigenvalues do not split into moduli below and above 1")
    upper = [t for t in small if t[0].im >= 0]
    box, a = upper[0]
    big = [t for t in large if t[0].im >= 0][0][0]
    return a, _angle(box), _angle(big)


def length_and_norm(gd_or_a):
    """l = 8|log a| and N = e^l, as balls."""
    a = gd_or_a.a if isinstance(gd_or_a, GeodesicData) else gd_or_a
    with balls.ivprec():
        if not isinstance(a, (iv.mpf, iv.mpc)):
            a = balls.from_fraction(Fraction(a)) if isinstance(a, (int, Fraction)) else iv.mpf(a)
        length = 8 * abs(iv.log(a))
        return length, iv.exp(length)


def norm_matches_regulator(gd, R, rel_tol=1e-9):
    """N(gamma) against e^(4R): (relative difference, pass flag)."""
    with balls.ivprec():
        target = iv.exp(4 * R)
        diff = abs(gd.norm - target) / target
    rel = float(balls.upper(diff))
    return rel, rel <= rel_tol


# -- classification -----------------------------------------------------------------


def classify(gamma):
    n = len(gamma)
    for s in (1, -1):
        if all(gamma[i][j] == (s if i == j else 0) for i in range(n) for j in range(n)):
            raise ValueError("gamma = +-1 is not primitive")
    g = minimal_polynomial(gamma)
    deg = P.degree(g)
    real_roots = sum(1 for b in isolate_roots(g, Fraction(1, 10 ** 12)) if b.is_real)
    if deg == 4 and real_roots == 0:
        return REGULAR
    if deg == 2 and real_roots == 2:
        return NONREGULAR
    raise ValueError(f"minimal polynomial {P.pretty(g)} fits neither class")


# -- exact root-of-unity tests --------------------------------------------------------


_x, _y = sympy.symbols("x y")


def _sym(f, var):
    return sum(int(c) * var ** k for k, c in enumerate(f))


def _to_tuple(expr, var):
    coeffs = sympy.Poly(expr, var).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def ratio_polynomial(f):
    """Res_x(f(x), f(yx)): its roots in y are the ratios of roots of f."""
    return _to_tuple(sympy.resultant(_sym(f, _x), _sym(f, _y * _x), _x), _y)


def product_polynomial(f):
    """Res_x(f(x), x^n f(y/x)): its roots in y are the products of pairs of roots of f."""
    n = P.degree(f)
    rev = sympy.expand(_x ** n * _sym(f, _y / _x))
    return _to_tuple(sympy.resultant(_sym(f, _x), rev, _x), _y)


def _strip_root_one(f, count):
    for _ in range(count):
        q, r = P.divmod_poly(f, (-1, 1))
        if any(r):
            raise AssertionError("expected a root at 1")
        f = q
    return f


def _shares_root(f, g):
    return P.degree(P.gcd_poly(f, g)) > 0


def weakly_neat(gamma):
    """No ratio of two eigenvalues (distinct indices) is a nontrivial root of unity.

    A ratio equal to 1 from distinct indices means a repeated eigenvalue, so
    gamma is not regular; that case also counts as not weakly neat."""
    f = charpoly(gamma)
    rp = _strip_root_one(ratio_polynomial(f), P.degree(f))
    if _shares_root(rp, (-1, 1)):
        return False
    return not any(_shares_root(rp, P.cyclotomic(n)) for n in RATIO_ORDERS)


def ratio_roots_of_unity_numeric(gamma, tol=1e-9):
    """Float cross-check: orders n <= 60 hit by some eigenvalue ratio (distinct indices)."""
    ev = np.linalg.eigvals(np.array(gamma, dtype=float))
    hits = set()
    for i in range(len(ev)):
        for j in range(len(ev)):
            if i == j:
                continue
            r = ev[i] / ev[j]
            if abs(abs(r) - 1) > 1e-6:
                continue
            for n in range(1, 61):
                if abs(r ** n - 1) < tol * n:
                    hits.add(n)
                    break
    return hits


def ka_condition(gd_or_gamma):
    """theta + phi or theta - phi lies in (pi/2)Z or (pi/3)Z.

    e^(i(theta +- phi)) is a product of one eigenvalue from each pair, so the
    condition holds iff some product of two eigenvalues is a root of unity of
    order 1, 2, 3, 4 or 6.  Only cross-pair products can have modulus 1."""
    gamma = gd_or_gamma.gamma if isinstance(gd_or_gamma, GeodesicData) else gd_or_gamma
    pp = product_polynomial(charpoly(gamma))
    return any(_shares_root(pp, P.cyclotomic(n)) for n in ANGLE_ORDERS)


def ka_condition_numeric(theta, phi, tol=1e-9):
    th, ph = float(balls.mid(theta)), float(balls.mid(phi))
    for psi in (th + ph, th - ph):
        for step in (math.pi / 2, math.pi / 3):
            k = round(psi / step)
            if abs(psi - k * step) < tol:
                return True
    return False


def check_ka_implication(kappa_value, gd):
    """kappa > 1 forces the angle condition (for weakly neat gamma)."""
    if kappa_value <= 1 or not gd.weakly_neat:
        return True
    return ka_condition(gd)


# -- conjugation into the standard torus ------------------------------------------------


def rotation(t):
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]])


def standard_form(a, theta, phi):
    out = np.zeros((4, 4))
    out[:2, :2] = a * rotation(theta)
    out[2:, 2:] = rotation(phi) / a
    return out


def _real_block(g, lam):
    """Two real columns spanning the invariant plane of eigenvalue lam, laid out so
    that g acts on them as |lam| * rotation(arg lam)."""
    n = g.shape[0]
    if abs(lam.imag) > 1e-9 * abs(lam):
        w, v = np.linalg.eig(g)
        k = int(np.argmin(np.abs(w - lam)))
        vec = v[:, k]
        return np.column_stack([vec.real, -vec.imag])
    # real eigenvalue of multiplicity two: null space of g - lam
    _, s, vh = np.linalg.svd(g - lam.real * np.eye(n))
    return vh[-2:].T


def conjugate_into_AB(gamma, eps=1e-8):
    """Real Z with det Z = 1 and Z^-1 gamma Z = blockdiag(a R(theta), a^-1 R(phi')).

    Returns (Z, target, residual).  phi' is phi or -phi: when the natural
    eigenvector basis has negative determinant the second block is flipped,
    which turns its rotation angle into its negative."""
    a_ball, theta_ball, phi_ball = eigen_parameters(gamma)
    a = float(balls.mid(a_ball))
    theta = float(balls.mid(theta_ball))
    phi = float(balls.mid(phi_ball))
    g = np.array(gamma, dtype=float)
    target = standard_form(a, theta, phi)
    if np.max(np.abs(g - target)) <= eps:
        return np.eye(4), target, 0.0
    lam1 = a * complex(math.cos(theta), math.sin(theta))
    lam2 = complex(math.cos(phi), math.sin(phi)) / a
    Z = np.column_stack([_real_block(g, lam1), _real_block(g, lam2)])
    d = np.linalg.det(Z)
    if d < 0:
        Z[:, 3] = -Z[:, 3]
        phi = -phi
        target = standard_form(a, theta, phi)
        d = -d
    Z = Z / d ** 0.25
    conj = np.linalg.solve(Z, g @ Z)
    residual = max(float(np.max(np.abs(conj - target))), abs(np.linalg.det(Z) - 1))
    if residual > eps:
        raise ConjugationFailed(residual)
    return Z, target, residual


# -- multiplicities -------------------------------------------------------------------


def chi1(mu):
    if mu < 1:
        raise ValueError("mu must be positive")
    return Fraction(1, mu)


def theta_multiplicity(h, lam, mu, kappa):
    """4 h lambda mu / kappa, the size of a fibre of the unit-to-geodesic map."""
    if kappa not in (1, 2, 4):
        raise ValueError(f"kappa = {kappa} not in {{1, 2, 4}}")
    m = Fraction(4 * h * lam * mu, kappa)
    assert m.denominator == 1 and m > 0, m
    return m


# -- assembly -------------------------------------------------------------------------


def geodesic_data(O, data):
    """GeodesicData for the fundamental unit recorded in data (a UnitData)."""
    gamma = regular_rep(data.fundamental, O)
    det = determinant(gamma)
    if det != 1:
        raise AssertionError(f"det of the unit matrix is {det}")
    a, theta, phi = eigen_parameters(gamma)
    length, norm = length_and_norm(a)
    kind = classify(gamma)
    return GeodesicData(gamma=gamma, a=a, theta=theta, phi=phi, length=length, norm=norm,
                        regular=kind == REGULAR, weakly_neat=weakly_neat(gamma))
