"""Orbit catalog: words, classes and amplitudes.

Periodic orbits of the step well are cyclic words over {L, R}.  This script
lists the classes up to length 4 with their amplitude signatures, then shows
how fast the number of prime orbits grows.
"""

import math

from stepwell.symbolic import class_counts, necklaces, weight_signature

# %% classes and amplitudes
for m in range(1, 5):
    row = [f"{c.canonical}{'' if c.is_prime else f'(nu={c.nu})'}: {weight_signature(c)}" for c in necklaces(m)]
    print(f"m={m}: " + ", ".join(row))

# %% proliferation
# log(N m)/m should settle near log 2 for large m
print()
print(" m  classes  prime  log(N m)/m")
for row in class_counts(16):
    print(f"{row['m']:2d} {row['classes']:8d} {row['prime']:6d}  {row['proliferation_exponent']:.4f}")
print(f"log 2 = {math.log(2):.4f}")
