# Geodesic triangles and their areas
#
# A point of the Grassmannian (or of its noncompact dual, the matrix ball) is
# an n x m complex matrix Z.  The triangle with vertices 0, Z1, Z2 has a
# closed-form symplectic area; here we compare it with brute-force
# quadrature of the Kahler two-form over the geodesic cone.

# %%
import numpy as np

from geophase import (
    GrassmannPoint,
    ManifoldSpec,
    random_point,
    triangle_area_closed,
    triangle_area_quadrature,
)

rng = np.random.default_rng(0)

# %% The simplest case: the sphere seen through its stereographic chart.
sphere = ManifoldSpec(1, 1, epsilon=+1)
a = GrassmannPoint(sphere, 0.4)
b = GrassmannPoint(sphere, 0.4j)
print("closed form :", triangle_area_closed(a, b).value)
print("quadrature  :", triangle_area_quadrature(a, b).value)

# The area is negative: the sign convention counts the loop 0 -> Z2 -> Z1
# as positive, and here that loop runs clockwise.

# %% Bigger matrices, both curvatures.
for eps in (+1, -1):
    spec = ManifoldSpec(2, 3, epsilon=eps)
    Z1, Z2 = random_point(spec, rng), random_point(spec, rng)
    closed = triangle_area_closed(Z1, Z2).value
    quad = triangle_area_quadrature(Z1, Z2, order=32)
    print(f"eps={eps:+d}  closed={closed:+.12f}  quad={quad.value:+.12f}  "
          f"|diff|={abs(closed - quad.value):.1e}  est_error={quad.est_error:.1e}")

# %% How fast does the tensor Gauss-Legendre rule converge?
spec = ManifoldSpec(2, 2, epsilon=-1)
Z1, Z2 = random_point(spec, rng, max_norm=0.9), random_point(spec, rng, max_norm=0.9)
exact = triangle_area_closed(Z1, Z2).value
for order in (2, 4, 8, 16, 32):
    err = abs(triangle_area_quadrature(Z1, Z2, order).value - exact)
    print(f"order {order:2d}: error {err:.2e}")
