"""Totalising cosimplicial algebras with polynomial forms.

The function algebra on a graph's simplicial set recovers the graph's
cohomology; a constant cosimplicial algebra comes back unchanged.

Run:  python3 demos/thom_whitney_graphs.py
"""

from hodgesplit import thom_whitney, total_complex_cohomology
from hodgesplit.dga import ground_field, sphere_cohomology
from hodgesplit.thom_whitney import Graph1D, constant_cosimplicial, function_cosimplicial

graphs = {
    "interval": Graph1D(2, ((0, 1),)),
    "loop": Graph1D(1, ((0, 0),)),
    "theta": Graph1D(2, ((0, 1), (0, 1), (1, 0))),
}
for name, X in graphs.items():
    C = function_cosimplicial(ground_field(), X, 1)
    res = thom_whitney(C)
    print(f"{name:9s} H*(Th) {res.cohomology}  oracle {total_complex_cohomology(C)}  stable {res.stable}")

B = sphere_cohomology(2)
res = thom_whitney(constant_cosimplicial(B, 2))
print("constant S^2: Th(B) == B ->", res.as_dga() == B)
