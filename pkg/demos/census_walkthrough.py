# A small census and the counting sums it feeds.
#
# Every totally complex quartic field with |disc| <= 500, every order of
# index <= 4 maximal at S = {2, 3}.  Takes well under a minute.

# %%
from quartic_orders.census.core import build_census, comparison_report, census_csv
from quartic_orders.census.fields import enumerate_quartics
from quartic_orders.exactmath import poly as P, balls

fields = enumerate_quartics(500)
print(len(fields), "fields, the first few as reduced polynomials:")
for F in fields[:6]:
    print("  ", P.pretty(F.poly))

# %%
rows = build_census([2, 3], 500, 4, fields=fields)
print(len(rows), "orders;", sum(r.in_Cc for r in rows), "in the restricted class")
for r in rows[:8]:
    print(f"  disc {r.field_disc:4d}  h={r.h}  R={balls.show(r.R, 8)}  mu={r.mu}  kappa={r.kappa}  lam={r.lam}")

# %%
# The counting sum at x = 1.5 next to the growth terms.  The census only
# sees small discriminants, so the count is a lower bound.
rep = comparison_report(1.5, rows, 500, 4)
for key in ("pi_S", "pi_tilde_S", "e4x_over_8x", "e4x_over_2x", "half_L4x"):
    print(f"{key:12s} {rep[key]}")
print(rep["coverage"]["note"])

# %%
# The CSV the command line writes, first lines only.
print("\n".join(census_csv(rows).splitlines()[:4]))
