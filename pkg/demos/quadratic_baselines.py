# Real quadratic orders: the classical counting checks.
#
# Sum of class numbers against the Gauss main term, and the sum over
# small regulators against the logarithmic integral.

# %%
from quartic_orders.census import baseline
from quartic_orders.census.quadratic import fundamental_unit_tu, wide_class_number, narrow_class_number, regulator

for D in (5, 8, 12, 13, 21, 28, 229):
    t, u, norm = fundamental_unit_tu(D)
    print(f"D={D:4d}  eps=({t} + {u} sqrt {D})/2  N={norm:+d}  R={regulator(D):.6f}  h={wide_class_number(D)}  h+={narrow_class_number(D)}")

# %%
# Fundamental units of norm -1 (D = 5, 8, 13, 229) make the narrow and wide
# class numbers agree; D = 12, 21 and 28 have only norm +1 units.

# %%
# Gauss-Siegel: the sum of h(D) R(D) over D <= x grows like a constant
# times x^(3/2).  Ratios drift towards one slowly.
for x in (10 ** 3, 10 ** 4, 10 ** 5):
    ratio = baseline.gauss_siegel_sum(x) / baseline.gauss_main_term(x)
    print(f"x={x:>7d}  ratio {ratio:.4f}")

# %%
# Sarnak's sum of h(D) over D with regulator at most x, against Li(e^(2x)).
for x in (3, 4, 5, 6):
    ratio = baseline.sarnak_sum(x) / baseline.L_function(2 * x)
    print(f"x={x}  ratio {ratio:.4f}")
