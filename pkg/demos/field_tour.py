# A tour of one quartic field: x^4 + x + 1.
#
# Run with `python demos/field_tour.py`.  Each cell prints what it computes,
# so the script reads top to bottom like a notebook.

# %%
from quartic_orders.numfield import make_field, quadratic_subfields, has_real_quadratic_subfield
from quartic_orders.orders import maximal_order, class_number
from quartic_orders.splitting import local_factors, in_C_of_S, lambda_S
from quartic_orders.exactmath import poly as P

F = make_field((1, 1, 0, 0, 1))
print("field:", P.pretty(F.poly))
print("signature (r, s):", F.signature)
print("polynomial discriminant:", P.discriminant(F.poly))

# %%
# The polynomial discriminant 229 is prime, so Z[x] is already maximal.
Om = maximal_order(F)
print("maximal order index:", Om.index, " discriminant:", Om.discriminant)
print("class number:", class_number(Om))

# %%
# No quadratic subfields at all: 229 is squarefree and the Galois group is S4.
print("quadratic subfields:", quadratic_subfields(F))
print("real quadratic subfield:", has_real_quadratic_subfield(F))

# %%
# How small primes split.  Each pair is (ramification, residue degree);
# a single pair means the prime does not decompose.
for p in (2, 3, 5, 7, 11, 13):
    print(f"p={p}:", local_factors(Om, p))

# %%
# 3 and 5 decompose, while 2 and 7 stay inert.  For S = {2, 7} the field
# counts, and its weight is the product of the residue degrees.
for S in ([2, 3], [2, 7]):
    print(S, "in C(S):", in_C_of_S(F, S), " lambda:", lambda_S(F, S) if in_C_of_S(F, S) else None)
