"""
Why the nerve is not enough
===========================

The walking arrow (two objects joined by one non-invertible morphism) and
the one-object point category have homotopy-equivalent nerves, yet they are
not equivalent categories.  The classifying-diagram levels see the
difference immediately: level 0 splits into one component per isomorphism
class of objects.
"""

from cdiag import fincat
from cdiag.classifying import level_decomposition
from cdiag.fincat import check_equivalence_invariants

arrow = fincat.walking_arrow()
point = fincat.ordinal(0)

# level 0 of each classifying diagram
for cat in (arrow, point):
    dec = level_decomposition(cat, 0)
    comps = ", ".join(f"{c.representative[0]} (order {c.group_order})"
                      for c in dec.components)
    print(f"{cat.name}: {len(dec.components)} level-0 component(s): {comps}")

# the skeletal invariants disagree, so the two cannot be equivalent
report = check_equivalence_invariants(arrow, point)
print("class counts:", report.class_counts, "-> match:", report.class_count_match)

# contrast: the interval with invertible arrows collapses to the point
interval = fincat.iso_interval()
dec = level_decomposition(interval, 0)
print(f"{interval.name}: {len(dec.components)} level-0 component(s), "
      f"sizes {[c.orbit_size for c in dec.components]}")
report = check_equivalence_invariants(interval, point)
print("interval vs point invariants match:", report.invariants_match)
