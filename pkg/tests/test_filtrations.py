import random

import pytest

from hodgesplit import DEC, INC, QI, FilteredSpace, InvariantError, Subspace, filtration_checks, rees_double, \
    rees_single
from hodgesplit.filtrations import dual_filtration, graded_pieces, tensor_filtration
from hodgesplit.fixtures import random_invertible


def flag(ambient, direction, steps):
    return FilteredSpace.from_steps(ambient, direction, steps)


def test_two_step_rees_module():
    f = flag(2, INC, {-1: Subspace.zero(2), 0: Subspace.span([(1, 0)], 2), 1: Subspace.full(2)})
    r = rees_single(f)
    assert [r.piece(n).dim for n in range(-2, 4)] == [0, 0, 1, 2, 2, 2]
    assert [r.cokernel_dim(n) for n in (0, 1)] == [1, 1]
    assert r.is_flat() and r.colimit_is_total()


def test_trivial_filtration_shifts_are_identities():
    r = rees_single(FilteredSpace.trivial(3, INC))
    for n in range(0, 4):
        assert r.shift(n).rank() == 3 and r.shift(n).dom == 3


def test_random_flag_dimension_count(rng):
    for _ in range(20):
        g = random_invertible(rng, 4).columns()
        cut = sorted(rng.sample(range(5), 3))
        f = flag(4, INC, {k: Subspace.span(g[:c], 4) for k, c in enumerate([0] + cut + [4])})
        assert sum(p.dim for p in graded_pieces(f)) == 4
        assert rees_single(f).is_flat()


def test_non_exhaustive_rejected():
    f = flag(2, INC, {0: Subspace.zero(2), 1: Subspace.span([(1, 1)], 2)})
    rep = filtration_checks(f)
    assert not rep.exhaustive and rep.witness["exhaustive"]["dim"] == 1
    with pytest.raises(InvariantError):
        rees_single(f)


def test_non_monotone_rejected():
    with pytest.raises(InvariantError):
        FilteredSpace(2, INC, ((0, Subspace.full(2)), (1, Subspace.zero(2))))


def test_gap_fill_follows_direction():
    line = Subspace.span([(1, 0)], 2)
    inc = flag(2, INC, {0: line, 2: Subspace.full(2)})
    dec = flag(2, DEC, {0: Subspace.full(2), 2: line})
    assert inc.step(1) == line
    assert dec.step(1) == line


def test_full_flag_graded_pieces():
    f = flag(3, DEC, {0: Subspace.full(3), 1: Subspace.coordinate(3, [1, 2]), 2: Subspace.coordinate(3, [2]),
                      3: Subspace.zero(3)})
    assert [(p.index, p.dim) for p in graded_pieces(f)] == [(0, 1), (1, 1), (2, 1)]


def test_double_rees_pure_type_line():
    d = rees_double(flag(1, DEC, {0: Subspace.full(1), 1: Subspace.zero(1)}))
    assert d.nonzero() == {(p, q): 1 for p in (0,) for q in (0,)}


def test_double_rees_elliptic_shape():
    F1 = Subspace.span([(QI(1), QI(0, 1))], 2)
    f = flag(2, DEC, {0: Subspace.full(2), 1: F1, 2: Subspace.zero(2)})
    d = rees_double(f)
    assert d.piece(1, 0).dim == 1 and d.piece(0, 1).dim == 1
    assert d.piece(1, 1).dim == 0
    assert d.real_elements(1, 0).dim == 2
    assert d.w(1, 1).dom == 0


def test_double_rees_conjugation_symmetry():
    rng = random.Random(5)
    for _ in range(15):
        n = rng.randint(1, 4)
        vecs = [tuple(QI(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)) for _ in range(n)]
        k = rng.randint(0, n)
        f = flag(n, DEC, {0: Subspace.full(n), 1: Subspace.span(vecs[:k], n), 2: Subspace.zero(n)})
        d = rees_double(f)
        for p in range(0, 3):
            for q in range(0, 3):
                assert d.piece(p, q).dim == d.piece(q, p).dim
                assert d.piece(p, q).conj() == d.piece(q, p)


def test_tensor_and_dual_filtrations():
    f = flag(2, INC, {0: Subspace.zero(2), 1: Subspace.span([(1, 0)], 2), 2: Subspace.full(2)})
    t = tensor_filtration(f, f)
    assert [p.dim for p in graded_pieces(t)] == [1, 2, 1]
    dual = dual_filtration(f)
    assert [(p.index, p.dim) for p in graded_pieces(dual)] == [(-2, 1), (-1, 1)]
