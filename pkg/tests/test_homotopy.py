import pytest
from gmpy2 import mpq

from hodgesplit import DGA, InvariantError, RejectionError, TruncationError, e2_builder, pi_n, quillen_G
from hodgesplit.dga import (acyclic_pair, exterior, gm_fixture, ground_field, polynomial_truncated,
                            sphere_cohomology)
from hodgesplit.homotopy import homotopy_ranks


def torus():
    return DGA.build([0, 1, 1, 2], None, {(1, 2): {3: 1}, (2, 1): {3: -1}})


def ranks(A, top, cap=6):
    return {n: r.rank for n, r in homotopy_ranks(A, top, cap).items()}


def test_ground_field_gives_trivial_G():
    P = quillen_G(ground_field())
    assert P.generator_degrees == ()
    assert ranks(ground_field(), 3) == {1: 0, 2: 0, 3: 0}


def test_two_sphere_presentation():
    P = quillen_G(sphere_cohomology(2))
    assert P.generator_degrees == (1,)
    assert P.differential == {0: {}}


def test_product_term_carries_koszul_sign():
    P = quillen_G(torus())
    assert P.generator_degrees == (0, 0, 1)
    # d x_g = -[x_e, x_f] with [x_e, x_f] = x_e x_f - x_f x_e
    assert P.differential[2] == {(0, 1): mpq(-1), (1, 0): mpq(1)}
    assert P.d_squared_zero


def test_sphere_oracles():
    assert ranks(sphere_cohomology(2), 5) == {1: 0, 2: 1, 3: 1, 4: 0, 5: 0}
    assert ranks(sphere_cohomology(3), 6) == {1: 0, 2: 0, 3: 1, 4: 0, 5: 0, 6: 0}
    assert ranks(sphere_cohomology(4), 8) == {1: 0, 2: 0, 3: 0, 4: 1, 5: 0, 6: 0, 7: 1, 8: 0}


def test_whitehead_square_on_two_sphere():
    rep = pi_n(sphere_cohomology(2), 3)
    assert rep.hurewicz_rank == 0 and rep.cohomology_dim == 0
    assert dict(((a, b), k) for a, b, k in rep.brackets)[(2, 2)] == 1


def test_hurewicz_on_spheres():
    rep = pi_n(sphere_cohomology(3), 3)
    assert rep.hurewicz_rank == rep.cohomology_dim == 1


@pytest.mark.parametrize("top", [2, 3, 4])
def test_truncated_polynomial_algebras(top):
    got = ranks(polynomial_truncated(2, top), 2 * top + 2)
    expected = {n: 0 for n in range(1, 2 * top + 3)}
    expected[2] = expected[2 * top + 1] = 1
    assert got == expected


def test_circle_and_acyclic_inputs():
    assert ranks(exterior(1), 3) == {1: 1, 2: 0, 3: 0}
    assert ranks(acyclic_pair(), 2) == {1: 0, 2: 0}


def test_torus_fundamental_group_is_abelian_and_higher_ranks_unstable():
    groups = homotopy_ranks(torus(), 3, 4)
    assert groups[1].rank == 2 and groups[1].stable
    assert all(k == 0 for a, b, k in groups[1].brackets)
    assert not groups[2].stable and groups[2].stability["ranks"][-1] > groups[2].stability["ranks"][0]


def test_gm_ranks_agree_across_conventions():
    r1 = {n: r.rank for n, r in homotopy_ranks(e2_builder(gm_fixture("a+b")).dga, 3).items()}
    r2 = {n: r.rank for n, r in homotopy_ranks(e2_builder(gm_fixture("a+2b")).dga, 3).items()}
    assert r1 == r2 == {1: 1, 2: 0, 3: 0}


def test_gm_weights_read_off_the_convention():
    assert pi_n(e2_builder(gm_fixture("a+b")).dga, 1).weights == {2: 1}
    rep = pi_n(e2_builder(gm_fixture("a+2b")).dga, 1)
    assert rep.weights == {3: 1} and rep.weight_filtration == "decreasing"


def test_rejections():
    with pytest.raises(RejectionError):
        quillen_G(DGA.build([0, 0], None, {}, check=False))
    with pytest.raises(TruncationError):
        quillen_G(sphere_cohomology(2), cap=0)


def test_cap_one_is_never_stable():
    assert not pi_n(sphere_cohomology(2), 2, cap=1).stable


def test_non_associative_product_caught():
    # a, b, c in degree 1 with (ab)c = w but bc = 0, so a(bc) = 0
    A = DGA.build([0, 1, 1, 1, 2, 3], None, {(1, 2): {4: 1}, (4, 3): {5: 1}}, check=False)
    with pytest.raises(InvariantError):
        quillen_G(A)
