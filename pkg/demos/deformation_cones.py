"""Quadratic deformation cones from E_2 data.

Run:  python3 demos/deformation_cones.py
"""

from hodgesplit import deformation_cone
from hodgesplit.deformation import abelian_lie, punctured_curve_input, sl2
from hodgesplit.dga import gm_fixture

for label, G, g in (("G_m, abelian rank 1", gm_fixture(), abelian_lie(1)),
                    ("elliptic curve minus 2 points, sl2", punctured_curve_input(1, 2), sl2())):
    cone = deformation_cone(G, g)
    print(f"== {label}")
    print(f"   ambient dim {cone.tangent_dim}, Zariski tangent dim {cone.zariski_tangent_dim}, "
          f"linear {cone.is_linear()}")
    for line in cone.text()[:4]:
        print("  ", line[:110] + ("..." if len(line) > 110 else ""))
