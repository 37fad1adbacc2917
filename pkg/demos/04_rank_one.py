# Rank one: the sphere, the disc and the plane
#
# With n = m = 1 everything reduces to classical formulas.  The phase of
# the spin-j (sphere) or weight-k (disc) coherent states is 2 * weight times
# the area of the geodesic triangle; for the Heisenberg-Weyl plane it is
# twice the flat area.

# %%
import numpy as np

from geophase import RankOnePoint, rank1_area, rank1_phase
from geophase.rankone import shoelace_area

z, w = 0.5 + 0.2j, -0.3 + 0.6j

# %%
for space, weight in (("sphere", 0.5), ("sphere", 2), ("disc", 1), ("disc", 1.5)):
    p, q = RankOnePoint(z, space, weight), RankOnePoint(w, space, weight)
    phi, area = rank1_phase(p, q), rank1_area(p, q)
    print(f"{space:6s} weight {weight:3}: phase {phi:+.10f}   2*weight*area {2 * weight * area:+.10f}")

# %% The plane needs no quadrature.
p, q = RankOnePoint(1, "plane"), RankOnePoint(1j, "plane")
print("plane phase", rank1_phase(p, q), " twice shoelace area", 2 * shoelace_area([0, 1 + 1j, 1]))

# %% The sphere at weight j is the 1 x 1 Grassmannian at kernel weight 2j.
from geophase import normalized_overlap_phase

p, q = RankOnePoint(z, "sphere", 1.5), RankOnePoint(w, "sphere", 1.5)
print("2 * phi =", 2 * rank1_phase(p, q),
      " kernel phase =", normalized_overlap_phase(p.as_grassmann(), q.as_grassmann()))
