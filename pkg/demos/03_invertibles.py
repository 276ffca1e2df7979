"""Identify the group of invertible objects as an extraspecial 2-group."""
from neargroup import category as ca
from neargroup import invertibles as iv

for n in (1, 2, 3):
    for l in (0, 1):
        row = iv.identify(ca.near_group_category(n, l), n)
        print(f"n={n} l={l}: order {row['order']}, {row['involutions']} involutions, "
              f"type {row['type']}, isomorphism confirmed: {row['isomorphism_confirmed']}")
