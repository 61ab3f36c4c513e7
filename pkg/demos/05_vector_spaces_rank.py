"""
Vector spaces over a prime field: rank classifies everything
============================================================

Matrices A, B of the same shape over F_q satisfy B = Q A P^{-1} for
invertible P, Q exactly when they have the same rank, so each (n, m) cell
of level 1 has min(n, m) + 1 components.  Stabilizer orders follow from
orbit-stabilizer division and are confirmed by direct exhaustive scans;
in dimensions <= 2 the stabilizers have explicit matrix forms.
"""

from cdiag.finvect import (direct_scan_stabilizer_order, oracle_diff_vect,
                           orbits_by_rank, paper_stabilizers_dim_le2,
                           vect_level0)

q = 3
print(f"level 0 over F_{q}:",
      [(c.group_expr, c.group_order) for c in vect_level0(2, q)])

print(f"\ncell (2, 2) over F_{q}:")
for cls in orbits_by_rank(2, 2, q).classes:
    scan = f", scan confirms {cls.scan_order}" if cls.scan_order is not None else ""
    print(f"  rank {cls.rank}: class size {cls.class_size:>3d}, "
          f"stabilizer order {cls.stabilizer_order}{scan}")

print(f"\nexplicit stabilizers in dimensions <= 2 over F_{q}:")
for case in paper_stabilizers_dim_le2(q):
    print(f"  {case.case:>16s}: {case.expr_text:>32s}  order {case.order}")

# the column [1;0] and diag(1,0) orders as functions of q, scan vs formula
print("\nscan vs formula:")
for qq in (2, 3, 5):
    col = direct_scan_stabilizer_order(((1,), (0,)), 1, 2, qq, 250_000)
    diag = direct_scan_stabilizer_order(((1, 0), (0, 0)), 2, 2, qq, 250_000)
    print(f"  q={qq}: column {col} = (q-1)^2 q = {(qq - 1) ** 2 * qq}; "
          f"diag {diag} = (q-1)^3 q^2 = {(qq - 1) ** 3 * qq * qq}")

for qq in (2, 3):
    print(oracle_diff_vect(2, qq).summary())
