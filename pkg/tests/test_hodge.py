import pytest

from hodgesplit import (DEC, INC, MHS, QI, BigradedSpace, FilteredSpace, InvariantError, Subspace,
                        deligne_bigrading, tate, tate_twist, tensor_dual_mhs, validate_mhs, validate_pure)
from hodgesplit.fixtures import kummer_shs, random_shs, transport_mhs, random_invertible
from hodgesplit.hodge import identity_vector
from hodgesplit.splittings import shs_to_mhs


def elliptic_F():
    return FilteredSpace.from_steps(2, DEC, {0: Subspace.full(2), 1: Subspace.span([(QI(1), QI(0, 1))], 2),
                                             2: Subspace.zero(2)})


def test_elliptic_curve_is_pure_of_weight_one():
    assert validate_pure(elliptic_F(), 1).ok
    assert not validate_pure(elliptic_F(), 2).ok


def test_real_line_in_F1_is_not_pure():
    F = FilteredSpace.from_steps(2, DEC, {0: Subspace.full(2), 1: Subspace.span([(1, 0)], 2),
                                          2: Subspace.zero(2)})
    check = validate_pure(F, 1)
    assert not check.ok and check.witness == 1


def test_tate_structures():
    m = tate(1)
    assert m.weights() == [-2]
    assert validate_mhs(m).ok
    twisted = tate_twist(tate(0), 1)
    assert twisted.W.step(-2) == m.W.step(-2) and twisted.F.step(-1) == m.F.step(-1)


def test_validate_reports_failure_classes():
    W_bad = FilteredSpace.from_steps(1, INC, {0: Subspace.full(1)})
    m = MHS(1, W_bad, FilteredSpace.trivial(1, DEC).complexify())
    assert validate_mhs(m).failure_class == "non-hausdorff"
    W = FilteredSpace.from_steps(2, INC, {-1: Subspace.zero(2), 1: Subspace.full(2)})
    F = FilteredSpace.from_steps(2, DEC, {0: Subspace.full(2), 1: Subspace.span([(1, 0)], 2),
                                          2: Subspace.zero(2)}).complexify()
    rep = validate_mhs(MHS(2, W, F))
    assert rep.failure_class == "opposedness" and rep.witness == {"weights": [1]}


def test_bigraded_space_rejects_non_conjugate_pieces():
    with pytest.raises(InvariantError):
        BigradedSpace.build(2, {(1, 0): Subspace.span([(QI(1), QI(0, 1))], 2),
                                (0, 1): Subspace.span([(QI(1), QI(0, 2))], 2)})


def test_deligne_splitting_of_kummer():
    dl = deligne_bigrading(shs_to_mhs(kummer_shs(1)))
    assert sorted(dl.types()) == [(-1, -1), (0, 0)]
    assert dl.piece(0, 0) == Subspace.span([(QI(1), QI(0, 1))], 2)


def test_deligne_splitting_recovers_filtrations(rng):
    for _ in range(15):
        s = random_shs(rng, max_dim=5, weights=(-3, 3))
        m = transport_mhs(shs_to_mhs(s), random_invertible(rng, s.dim))
        dl = deligne_bigrading(m)
        assert sum(v.dim for _, v in dl.pieces) == m.dim
        for (p, q), v in dl.pieces:
            assert dl.piece(q, p).dim == v.dim


def test_tensor_dual_and_hom():
    k = shs_to_mhs(kummer_shs(2))
    t = tensor_dual_mhs("tensor", k, k)
    assert t.dim == 4 and validate_mhs(t).ok
    d = tensor_dual_mhs("dual", k)
    assert d.weights() == [0, 2] and validate_mhs(d).ok
    h = tensor_dual_mhs("hom", k, k)
    ident = identity_vector(2)
    assert h.W.step(0).contains(ident) and h.F.step(0).contains(ident)
