"""
Ordinals: the discrete regime
=============================

In the chain categories [m] the only isomorphisms are identities, so every
component of every level is a singleton with trivial stabilizer: level 0
has m+1 components and level 1 has (m+1)(m+2)/2.  The same holds for a
truncation of the category of finite ordered sets, where the face maps
between components carry real information even though every stabilizer is
trivial.
"""

from cdiag import fincat
from cdiag.classifying import (face_degeneracy_report, is_discrete_classifying,
                               level_decomposition)

for m in range(6):
    cat = fincat.ordinal(m)
    d0 = level_decomposition(cat, 0)
    d1 = level_decomposition(cat, 1)
    print(f"[{m}]: {len(d0)} components at level 0, {len(d1)} at level 1, "
          f"formula (m+1)(m+2)/2 = {(m + 1) * (m + 2) // 2}")

# the discreteness check certifies the pattern level by level
delta2 = fincat.truncated_delta(2)
report = is_discrete_classifying(delta2, 2)
print(f"\n{delta2.name}: discrete = {report.discrete}")
for n, count, flat in report.levels:
    print(f"  level {n}: {count} components, all singleton+trivial: {flat}")

# face maps connect level-1 components to their endpoint components
faces = face_degeneracy_report(fincat.ordinal(1))
print("\nface maps on [1]:")
for comp, d1_target, d0_target in faces.level1_rows:
    print(f"  {comp}: d1 -> {d1_target}, d0 -> {d0_target}")
