"""Regenerate the sample input documents in data/ from the library fixtures.

Run from the repository root:  python3 demos/make_samples.py
"""

from pathlib import Path

from hodgesplit import serialization as ser
from hodgesplit.deformation import abelian_lie, punctured_curve_input, sl2
from hodgesplit.dga import ground_field, gm_fixture, polynomial_truncated, sphere_cohomology
from hodgesplit.exact import LinearMap, Subspace
from hodgesplit.filtrations import INC, FilteredSpace
from hodgesplit.fixtures import kummer_grading, kummer_shs
from hodgesplit.hodge import BigradedSpace
from hodgesplit.spectral import FilteredComplex
from hodgesplit.splittings import SHSObject, shs_to_mhs
from hodgesplit.thom_whitney import Graph1D, constant_cosimplicial, function_cosimplicial

OUT = Path(__file__).resolve().parent.parent / "data"


def tate_shs(n: int) -> SHSObject:
    """R(n) with beta = 0: one vector of type (-n, -n)."""
    return SHSObject.build(BigradedSpace.build(1, {(-n, -n): Subspace.full(1)}))


def d2_complex() -> FilteredComplex:
    """x in C^0 at level 2, y in C^1 at level 0, dx = y: only d_2 is nonzero."""
    f0 = FilteredSpace.from_steps(1, INC, {1: Subspace.zero(1), 2: Subspace.full(1)})
    f1 = FilteredSpace.from_steps(1, INC, {-1: Subspace.zero(1), 0: Subspace.full(1)})
    return FilteredComplex.build(0, [1, 1], [LinearMap.from_rows([[1]])], [f0, f1])


SAMPLES = {
    "kummer.mhs.json": lambda: shs_to_mhs(kummer_shs(1)),
    "kummer.shs.json": lambda: kummer_shs(1),
    "zero-beta.json": lambda: SHSObject.build(kummer_grading()),
    "ext-r-r1.pair.json": lambda: (tate_shs(0), tate_shs(1)),
    "s2.dga.json": lambda: sphere_cohomology(2),
    "s3.dga.json": lambda: sphere_cohomology(3),
    "cp2.dga.json": lambda: polynomial_truncated(2, 2),
    "gm.gysin.json": gm_fixture,
    "interval.cosimplicial.json": lambda: function_cosimplicial(ground_field(), Graph1D(2, ((0, 1),)), 1),
    "constant-s2.cosimplicial.json": lambda: constant_cosimplicial(sphere_cohomology(2), 2),
    "gm-abelian.defcone.json": lambda: {"kind": "defcone-input", "gysin": ser.dump_object(gm_fixture()),
                                        "lie": ser.dump_object(abelian_lie(1))},
    "curve-sl2.defcone.json": lambda: {"kind": "defcone-input",
                                       "gysin": ser.dump_object(punctured_curve_input(1, 2)),
                                       "lie": ser.dump_object(sl2())},
    "quadric.defcone.json": lambda: {"kind": "defcone-explicit", "h1": 1, "h0r1": 0,
                                     "b_ww": [[["1"]]], "b_wn": [], "b_nn": []},
    "d2.complex.json": d2_complex,
}


def main():
    OUT.mkdir(exist_ok=True)
    for name, make in SAMPLES.items():
        (OUT / name).write_text(ser.dumps(make()))
        print("wrote", name)


if __name__ == "__main__":
    main()
