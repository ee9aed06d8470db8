# Units, regulators and the 4x4 integer matrix each unit gives.
#
# A fundamental unit acts on the maximal order by multiplication.  In an
# integral basis that action is an integer matrix gamma, and its eigenvalues
# carry the regulator.

# %%
from quartic_orders.numfield import make_field
from quartic_orders.orders import maximal_order
from quartic_orders.unitsreg import unit_data
from quartic_orders import geodesic as G
from quartic_orders.exactmath import balls

F = make_field((1, 1, 0, 0, 1))
O = maximal_order(F)
data = unit_data(O)
print("fundamental unit:", data.fundamental)
print("norm:", data.fundamental.norm())
print("roots of unity mu:", data.mu, " kappa:", data.kappa)
print("regulator R:", balls.show(data.regulator, 20))

# %%
# The multiplication matrix, its characteristic polynomial and determinant.
gd = G.geodesic_data(O, data)
for row in gd.gamma:
    print("  ", row)
print("det:", G.determinant(gd.gamma))
print("charpoly:", G.charpoly(gd.gamma))

# %%
# Eigenvalues come as a e^{i theta} and a^{-1} e^{i phi}, with their
# conjugates.  The norm attached to gamma should equal e^{4R}.
print("a:", balls.show(gd.a, 15))
print("theta:", balls.show(gd.theta, 15), " phi:", balls.show(gd.phi, 15))
rel, ok = G.norm_matches_regulator(gd, data.regulator)
print("N(gamma) vs e^(4R): relative error", rel, "ok" if ok else "MISMATCH")
print("weakly neat:", gd.weakly_neat)

# %%
# Conjugate gamma by a real matrix of determinant one into the
# block-diagonal standard form.  The residual shows how well it worked.
Z, target, residual = G.conjugate_into_AB(gd.gamma)
print("conjugation residual:", residual)

# %%
# Contrast: Q(zeta_12) contains the real quadratic field Q(sqrt 3), so its
# unit matrix is not weakly neat.
F12 = make_field((1, 0, -1, 0, 1))
O12 = maximal_order(F12)
gd12 = G.geodesic_data(O12, unit_data(O12))
print("Q(zeta_12) weakly neat:", gd12.weakly_neat)
