"""Rational homotopy ranks of small cohomology algebras, and the punctured line.

Run:  python3 demos/rational_homotopy.py
"""

from hodgesplit import e2_builder
from hodgesplit.dga import gm_fixture, polynomial_truncated, sphere_cohomology
from hodgesplit.homotopy import homotopy_ranks

CASES = {
    "S^2": sphere_cohomology(2),
    "S^3": sphere_cohomology(3),
    "CP^2": polynomial_truncated(2, 2),
}

for name, A in CASES.items():
    groups = homotopy_ranks(A, A.max_degree() + 3, cap=6)
    ranks = {n: r.rank for n, r in groups.items() if r.rank}
    stable = all(r.stable for r in groups.values())
    print(f"{name:5s} nonzero ranks {ranks}  stable at cap 6: {stable}")

# P^1 minus two points.  The E_2 page has H^0, H^2 and the two residues;
# d_2 sums the residues into H^2, leaving H^1 of rank one.
for convention in ("a+b", "a+2b"):
    e2 = e2_builder(gm_fixture(convention))
    pi1 = homotopy_ranks(e2.dga, 1, cap=6)[1]
    print(f"G_m ({convention}): H^1 {e2.cohomology()[1]}, pi_1 rank {pi1.rank} weights {pi1.weights}")
