"""The smallest case: C(S4, ω^l, <(1234)>, 1).

Builds the adapted cocycle on S4, lists the simple objects and prints the
Frobenius-Schur indicators of the non-invertible one for every l.
"""
from neargroup import category as ca
from neargroup import cochains as co

w = co.adapted_omega()
print("ω is a cocycle:", co.is_cocycle(w))
print("ω trivial on S4×S4×H:", co.is_adapted(w, co.s4_H()))
print("ω equals its closed formula:", w.equals(co.adapted_omega_closed()))

cat = ca.near_group_category(1, 1)
for s in cat.simples:
    print(f"  {s.label(cat.G):<22} FPdim {s.fpdim}")

for l in range(6):
    cat = ca.near_group_category(1, l)
    rho = cat.rho()
    print(f"l={l}: ν2(ρ) = {ca.fs_indicator(cat, rho, 2)},  ν3(ρ) = {ca.fs_indicator(cat, rho, 3)}")
