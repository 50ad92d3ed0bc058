"""The Kummer extension of R by R(1), followed through every encoding.

Run:  python3 demos/kummer_extension.py
"""

from gmpy2 import mpq

from hodgesplit import (BigradedSpace, SHSObject, deligne_bigrading, format_scalar, hom_ext, mhs_to_shs, shs_to_frep, shs_to_mhs,
                        validate_mhs)
from hodgesplit.fixtures import kummer_grading, kummer_shs


def show(label, m):
    print(f"{label}:")
    for row in m.rows:
        print("   ", "  ".join(format_scalar(x) for x in row))


for c in (mpq(1), mpq(-2), mpq(7, 3)):
    s = kummer_shs(c)
    m = shs_to_mhs(s)
    print(f"--- c = {format_scalar(c)}")
    print("F^0 basis:", [[format_scalar(x) for x in v] for v in m.F.step(0).basis])
    print("opposed:", validate_mhs(m).ok)
    show("d = exp(2ic E)", shs_to_frep(s).d)
    cert = mhs_to_shs(m, kummer_grading().weight_grading())
    show("recovered beta^00", cert.shs.component(0, 0))
    print("Deligne types:", deligne_bigrading(m).types())

for n in (1, 0):
    twist = SHSObject.build(BigradedSpace.pure_type(1, -n, -n))
    print(f"dim Ext^1(R, R({n})) =", hom_ext(SHSObject.build(BigradedSpace.pure_type(1, 0, 0)), twist).ext1_dim)
