"""Left-invariant metrics on the three-sphere group.

Two families are instructive.  Along the line (s, 2-s, 2) the
distinguished field stays parallel, so the index is 1 for the group
presentation itself.  The squashed family (t, t, 2) has no parallel
fields until the presentation algebra is enlarged by the right
translations that the metric still tolerates; one opposite circle
survives and contributes a single parallel combination.
"""

import numpy as np

from symidx import (
    augment_left_invariant,
    closed_geodesic_length,
    spin3_berger,
    spin3_metric,
    spin3_one_parameter,
    transvection_space,
)

print("one-parameter line (s, 2-s, 2):")
for s in (0.25, 0.5, 0.75):
    sp, info = spin3_one_parameter(s)
    rep = transvection_space(sp)
    rep_mats = info["representation"]
    len_j = closed_geodesic_length(sp, rep_mats, np.array([0.0, 1.0, 0.0]))
    print(f"  s={s}: index {rep.index}, orbit lengths "
          f"{len_j:.6f} (j) vs 2*pi*sqrt(s) = {2 * np.pi * np.sqrt(s):.6f}")

print("squashed family (t, t, 2), before and after augmentation:")
for t in (0.5, 1.5, 3.0):
    sp, _ = spin3_berger(t)
    plain = transvection_space(sp).index
    aug = augment_left_invariant(sp)
    rep = transvection_space(aug)
    v = rep.p_space.basis[:, 0]
    # mixing angle between the left field and its right-handed partner
    a = -aug.isotropy.basis[:3, :] @ np.linalg.inv(aug.isotropy.basis[3:, :])
    ratio = np.linalg.norm(a @ v[3:]) / np.linalg.norm(v[:3])
    print(f"  t={t}: index {plain} plain, {rep.index} augmented; "
          f"opposite/left mixing ratio {ratio:.4f} (|t-1| = {abs(t - 1)})")

print("bi-invariant metric (2, 2, 2): augmentation restores the full "
      "symmetric picture")
aug = augment_left_invariant(spin3_metric(2.0, 2.0, 2.0)[0])
rep = transvection_space(aug)
print(f"  augmented algebra dim {aug.algebra.dim}, index {rep.index}, "
      f"coindex {rep.coindex}")
