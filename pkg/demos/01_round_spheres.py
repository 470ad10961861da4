"""Round spheres: the symmetric baseline.

Every round sphere is a symmetric space, so the symmetry index equals
the dimension and the co-index vanishes.  This script builds S^2..S^5
as rotation group orbits and prints the reports, the curvature spectrum
along a great circle, and the circle's length recovered from the flow
periods of the generating field.
"""

import numpy as np

from symidx import (
    closed_geodesic_length,
    jacobi_operator,
    round_sphere,
    transvection_space,
)

for n in range(2, 6):
    sp, info = round_sphere(n)
    rep = transvection_space(sp)
    print(f"S^{n}: algebra so({n + 1}) of dimension {sp.algebra.dim}, "
          f"index {rep.index}, coindex {rep.coindex}")

    direction = sp.lift(np.eye(n)[:, 0])
    spec = jacobi_operator(sp, direction)
    print(f"  curvature spectrum along a great circle: "
          f"{np.round(np.sort(spec.eigenvalues), 12)}")

    length = closed_geodesic_length(sp, info["representation"], direction)
    print(f"  great circle length: {length:.12f}  (2*pi = {2 * np.pi:.12f})")
