"""Circle quotients of Spin(4) and the jump in the symmetry index.

The five-dimensional quotients carry a diagonal two-parameter metric
(2, 2, s, t, t).  On the stratum t = 2 - s two independent Killing
fields become parallel at the base point and the index jumps from 0 to
2; off the stratum there is no symmetry at all.  The dimension bound
2 dim g' <= k (k + 1) is attained with equality exactly on the stratum.
"""

import numpy as np

from symidx import (
    perpendicular_killing_space,
    so4_so2,
    symmetry_ideal,
    transvection_space,
)

lam = 0.5

print("coupled stratum (t = 2 - s):")
for s in (0.4, 0.8, 1.2, 1.6):
    sp, _ = so4_so2(lam, s)
    rep = transvection_space(sp)
    bound = symmetry_ideal(sp, rep)
    print(f"  s={s:4.1f}: index {rep.index}, coindex {rep.coindex}, "
          f"transvection dim {rep.dim_transvection}, "
          f"bound {bound.lhs} <= {bound.rhs}"
          + (" (equality)" if bound.equality else ""))

print("off the stratum:")
for t in (0.5, 1.0, 2.5):
    sp, _ = so4_so2(lam, 0.8, t=t)
    rep = transvection_space(sp)
    print(f"  t={t:4.1f}: index {rep.index}, coindex {rep.coindex}")

# The Killing fields perpendicular to the symmetric leaf span a copy of
# the isotropy complement inside the algebra: pairs (Z, -Z/lambda).
sp, _ = so4_so2(lam, 0.8)
perp = perpendicular_killing_space(sp)
print(f"perpendicular space has dimension {perp.dim}; sample column:")
col = perp.basis[:, 0]
print("  first factor :", np.round(col[:3], 6))
print("  second factor:", np.round(col[3:], 6),
      f"   (= -first/{lam:g})")
