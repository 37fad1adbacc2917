# The multiplicative phase and the group 2-cocycles
#
# Multiplying two section matrices sigma(Z1) sigma(Z2) gives sigma(Z3) times
# an element of the isotropy group.  The phase Phi hiding in that element,
# the Guichardet-Wigner cocycle f and the Dupont area cocycle c are all
# the same number in different clothes.

# %%
import numpy as np

from geophase import ManifoldSpec, random_group_element, random_point, section
from geophase import cocycles as cc

rng = np.random.default_rng(2)

# %%
spec = ManifoldSpec(2, 2, epsilon=-1)
Z1, Z2 = random_point(spec, rng), random_point(spec, rng)
eps = spec.epsilon

bp = cc.block_product(Z1, Z2)
print("blocks vs literal product:", np.abs(bp.assemble() - cc.section_product(Z1, Z2)).max())

h = cc.k_part(Z1, Z2)
print("off-diagonal part of sigma(Z3)^-1 sigma(Z1) sigma(Z2):", np.abs(h[:2, 2:]).max())

phi = cc.multiplicative_phase(Z1, Z2)
f = cc.gw_cocycle(section(Z1), section(Z2))
c = cc.dupont_cocycle(section(Z1), section(Z2))
print(f"Phi={phi:+.12f}  f={f:+.12f}  c={c:+.12f}")
print("e^(i eps Phi) vs e^(+2 pi i f):", abs(np.exp(1j * eps * phi) - np.exp(2j * np.pi * f)))
print("e^(i eps Phi) vs e^(-2 pi i f):", abs(np.exp(1j * eps * phi) - np.exp(-2j * np.pi * f)))
print("f vs (eps/pi) c:", abs(f - eps / np.pi * c))

# %% The cocycle condition on random group elements.
for eps in (-1, +1):
    spec = ManifoldSpec(1, 2, epsilon=eps)
    gw = cc.gw_cocycle
    jumps = []
    for i in range(200):
        g1, g2, g3 = (random_group_element(spec, [i, j]) for j in range(3))
        jumps.append(gw(g1, g2) + gw(g1 @ g2, g3) - gw(g2, g3) - gw(g1, g2 @ g3))
    jumps = np.array(jumps)
    print(f"eps={eps:+d}: max |defect| = {np.abs(jumps).max():.3g}, "
          f"max distance to an integer = {np.abs(jumps - np.round(jumps)).max():.3g}")

# On the compact group the principal argument wraps, so the additive
# identity only holds up to integers there.
