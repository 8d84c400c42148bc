# %% [markdown]
# # Rational G2-inner discs from the Schur-type family
#
# A family member composes matrix-ball automorphisms, disc automorphisms and
# a Blaschke product around diag(l, b(l)). Boundary values are unitary, so
# (trace, det) lands on the Shilov boundary of G2.

# %%
import numpy as np

from symbidisc import domains
from symbidisc.analysis import is_g2_inner, is_proper_disc
from symbidisc.family import ExtremalDisc, degree_bound, family_sample
from symbidisc.scalar import blaschke_extract, unit_circle

params = family_sample(7, m=4)
disc = ExtremalDisc(params)
print("levels k =", params.k, " base degree =", params.base.degree)

s, p = disc(unit_circle(256))
print("max Shilov distance on T:", domains.shilov_distance((s, p)).max())
print(is_g2_inner(disc).to_dict())
print("proper proxy gaps:", np.round(is_proper_disc(disc).details["gaps"], 6))

# %% [markdown]
# The components are rational of degree at most the family's bound, and the
# p-component is a finite Blaschke product.

# %%
S, P = disc.rational()
print("degree bound:", degree_bound(params), " fitted:", S.degrees(), P.degrees())
B = blaschke_extract(P)
print("zeros of p:", np.round(B.zeros, 6))
