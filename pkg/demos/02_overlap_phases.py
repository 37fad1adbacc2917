# Coherent-state overlaps and their phases
#
# The reproducing kernel K(Z1, Z2) = det(1 + eps Z1 Z2^+)^(eps k) is the
# overlap of two coherent vectors.  Its argument is exactly twice the
# triangle area from the previous demo.

# %%
import numpy as np

from geophase import (
    ManifoldSpec,
    chordal_distance,
    kernel,
    normalized_overlap_phase,
    random_point,
    triangle_area_closed,
)

rng = np.random.default_rng(1)

# %%
for eps in (+1, -1):
    spec = ManifoldSpec(2, 2, epsilon=eps)
    Z1, Z2 = random_point(spec, rng), random_point(spec, rng)
    ov = kernel(Z1, Z2)
    area = triangle_area_closed(Z1, Z2).value
    print(f"eps={eps:+d}  |K|={ov.magnitude:.6f}  arg K={ov.phase:+.12f}  2*area={2 * area:+.12f}")
    print(f"        chordal distance {chordal_distance(Z1, Z2):.6f}")

# %% Raising the weight k multiplies the phase by k (mod 2 pi).
spec = ManifoldSpec(1, 2, epsilon=-1)
Z1, Z2 = random_point(spec, rng), random_point(spec, rng)
for k in (1, 2, 3):
    print(f"k={k}: phase={normalized_overlap_phase(Z1, Z2, k):+.10f}  "
          f"k*phase(1)={k * normalized_overlap_phase(Z1, Z2, 1):+.10f}")
