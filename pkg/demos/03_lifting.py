# %% [markdown]
# # Lifting discs through the symmetrization map
#
# Away from the royal variety s^2 = 4p the two roots of z^2 - s z + p can be
# continued analytically along rays from the origin. A disc that meets the
# royal variety inside the disc cannot be lifted this way.

# %%
import numpy as np

from symbidisc.analysis import (RationalPair, lift_to_bidisc, lifted_degree_check,
                                pair_from_branches, royal_intersections)
from symbidisc.errors import RoyalIntersection
from symbidisc.scalar import BlaschkeProduct, RationalFn

split = RationalPair(RationalFn([0.9, 0.5]), RationalFn([0, 0.45]))
lift = lift_to_bidisc(split)
print("resubstitution:", lift.resubstitution, " branch values at l = 0:", lift.a1[0, 0], lift.a2[0, 0])

eta = 0.3
touching = RationalPair(RationalFn([eta, 1]), RationalFn([0, eta]))
print("royal intersections:", royal_intersections(touching))
try:
    lift_to_bidisc(touching)
except RoyalIntersection as exc:
    print("lift refused:", exc)

# %% [markdown]
# Plant two Blaschke products that never coincide and recover them.

# %%
B1 = BlaschkeProduct([0], -1)
B2 = BlaschkeProduct([0.6], np.exp(2.4j))
pair = pair_from_branches(B1.to_rational(), B2.to_rational())
print(lifted_degree_check(pair, m=2).to_dict())
