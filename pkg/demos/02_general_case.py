"""The family C_{n,l} over G_n = (V_n ⊕ V_n) ⋊ S4 for n = 1, 2, 3."""
import time

from neargroup import category as ca

for n in (1, 2, 3):
    t = time.perf_counter()
    for l in range(6):
        cat = ca.near_group_category(n, l)
        s = ca.near_group_check(cat)
        nus = [ca.fs_indicator(cat, s.rho, k) for k in (2, 3)]
        print(f"n={n} l={l}: {s.invertible_count} invertibles, d={s.d}, m={s.m}, "
              f"ν2={nus[0]}, ν3={nus[1]}")
    print(f"  n={n} done in {time.perf_counter() - t:.2f}s")
