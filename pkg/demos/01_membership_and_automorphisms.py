# %% [markdown]
# # Membership in G2 and its automorphisms
#
# G2 is the image of the bidisc under (l1, l2) -> (l1 + l2, l1 l2). A point
# (s, p) belongs to it exactly when |s - conj(s) p| + |p|^2 < 1, which is
# the same as both roots of z^2 - s z + p lying in the unit disc.

# %%
import numpy as np

from symbidisc import domains
from symbidisc.automorphisms import CartanAut, G2Aut, induced_cartan_aut

for z in [(0, 0), (1, 0.25), (2, 1), (0.5j, -0.9)]:
    print(z, "interior:", domains.g2_contains(z, "interior"),
          "closure:", domains.g2_contains(z, "closure"),
          "roots:", np.round(np.roots([1, -z[0], z[1]]), 4))

# %% [markdown]
# The distinguished (Shilov) boundary is the image of the torus. The
# algebraic test |p| = 1, s = conj(s) p, |s| <= 2 agrees with a direct
# distance computation.

# %%
for z in [(1.5, 1), (0, -1), (0, 0.5)]:
    print(z, domains.shilov_g2_contains(z), round(domains.shilov_distance(z), 6))

# %% [markdown]
# Matrix-ball automorphisms Phi_b swap 0 and b. A scalar center a I acts on
# eigenvalues by a disc automorphism, which is how it induces an automorphism
# of G2.

# %%
rng = np.random.default_rng(0)
b = np.array([[0.2, 0.1j], [-0.3, 0.1]])
phi = CartanAut(b)
print("Phi_b(0) - b:", np.abs(phi(np.zeros((2, 2))) - b).max())
print("Phi_b(b):    ", np.abs(phi(b)).max())

A = G2Aut(node=0.4 - 0.2j, rotation=np.exp(0.3j), post_rotation=1j)
C = induced_cartan_aut(A)
l1, l2 = 0.5, -0.3 + 0.4j
via_matrix = domains.pi_map(C(np.diag([l1, l2])))
direct = A(domains.sym_map(l1, l2))
print("commuting square gap:", abs(via_matrix.s - direct.s) + abs(via_matrix.p - direct.p))
