import random

import pytest
from gmpy2 import mpq

from hodgesplit import (QI, BigradedSpace, FRep, InvariantError, LinearMap, RejectionError, SHSObject, Subspace,
                        frep_to_shs, hom_ext, integral_pairing, mhs_to_shs, shs_to_frep, shs_to_mhs, shs_to_sts,
                        validate_mhs)
from hodgesplit.fixtures import (kummer_E, kummer_grading, kummer_shs, pure_sts, random_invertible, random_shs,
                                 random_sts, single_component_shs, transport_mhs)
from hodgesplit.splittings import (CoefficientMonomial, coefficient_poly, direct_sum_shs, frame_transport,
                                   monomial_coefficients, shs_algebra_check, tensor_dual_shs,
                                   tensor_product_algebra)


def tate_shs(n):
    return SHSObject.build(BigradedSpace.pure_type(1, -n, -n))


@pytest.mark.parametrize("a, b, endpoints, value", [
    (0, 0, "mii", QI(0, 2)), (0, 0, "0i", QI(0, 1)), (1, 0, "0i", QI(mpq(1, 2))),
    (1, 1, "mii", QI(0, mpq(4, 3))),
])
def test_integral_pairing_values(a, b, endpoints, value):
    assert integral_pairing(a, b, endpoints) == value


def test_pairing_conjugation_symmetry():
    for a in range(4):
        for b in range(4):
            assert integral_pairing(a, b).conj() == -integral_pairing(b, a)


def test_coefficient_module_symbols():
    assert coefficient_poly(1, 0) == [QI(0, -1), QI(1)]
    assert monomial_coefficients(1, 0) == {(1, 0): QI(1), (0, 1): QI(0, -1)}
    sym = CoefficientMonomial(2, 0)
    assert sym.type == (3, 1) and sym.weight == 4 and sym.conj() == CoefficientMonomial(0, 2)
    with pytest.raises(ValueError):
        CoefficientMonomial(-1, 0)


def test_zero_beta_gives_split_mhs():
    g = kummer_grading()
    m = shs_to_mhs(SHSObject.build(g))
    assert m.F.step(0) == Subspace.span([(1, 0)], 2).complexify() + Subspace.zero(2)
    cert = mhs_to_shs(m)
    assert cert.shs.beta == () and cert.phi == LinearMap.identity(2)


def test_kummer_inverse():
    for c in (mpq(1), mpq(-3, 5)):
        cert = mhs_to_shs(shs_to_mhs(kummer_shs(c)), kummer_grading().weight_grading())
        assert cert.shs.component(0, 0) == kummer_E().scale(c).complexify()


def test_beta_must_lower_types():
    E_wrong = LinearMap.from_rows([[0, 1], [0, 0]])
    with pytest.raises(InvariantError):
        SHSObject.build(kummer_grading(), {(0, 0): E_wrong})


def test_beta_reality_enforced():
    with pytest.raises(InvariantError):
        SHSObject.build(kummer_grading(), {(0, 0): kummer_E().scale(QI(0, 1))})


def test_frep_invariants_hold_on_random_objects(rng):
    for _ in range(20):
        f = shs_to_frep(random_shs(rng, max_dim=6, weights=(-4, 4)))
        f.check()


def test_frep_rejects_wrong_shift():
    g = kummer_grading()
    d = LinearMap.from_rows([[1, 1], [0, 1]]).complexify()
    with pytest.raises((RejectionError, InvariantError)):
        frep_to_shs(FRep(g, d))


def test_frame_transport_matches_single_exponential():
    rng = random.Random(11)
    for _ in range(15):
        s = single_component_shs(rng)
        assert frame_transport(s) == shs_to_frep(s).d


def test_splitting_certificate_on_transported_structures(rng):
    for _ in range(15):
        s = random_shs(rng, max_dim=5, weights=(-3, 3))
        M = transport_mhs(shs_to_mhs(s), random_invertible(rng, s.dim))
        cert = mhs_to_shs(M)
        assert cert.phi.is_real()
        back = shs_to_mhs(cert.shs)
        for w in range(M.W.lo, M.W.hi + 1):
            assert back.W.step(w).image_under(cert.phi) == M.W.step(w)


def test_ext_between_tate_objects():
    assert hom_ext(tate_shs(0), tate_shs(1)).ext1_dim == 1
    assert hom_ext(tate_shs(0), tate_shs(0)).hom_dim == 1
    assert hom_ext(tate_shs(1), tate_shs(0)).ext1_dim == 0
    assert hom_ext(tate_shs(0), tate_shs(-1)).ext1_dim == 0


def test_kummer_is_a_nonsplit_extension():
    h = hom_ext(tate_shs(1), kummer_shs(1))
    assert h.hom_dim == 1
    assert hom_ext(kummer_shs(1), tate_shs(1)).hom_dim == 0
    assert hom_ext(kummer_shs(1), tate_shs(0)).hom_dim == 1


def test_four_term_sequence(rng):
    for _ in range(10):
        a = random_shs(rng, max_dim=3, weights=(-2, 2))
        b = random_shs(rng, max_dim=3, weights=(-2, 2))
        assert hom_ext(a, b).four_term_ok()
        u, v = random_sts(rng, max_dim=3), random_sts(rng, max_dim=3)
        assert hom_ext(u, v).four_term_ok()


def test_twistor_hom_purity():
    assert hom_ext(pure_sts(2, 1), pure_sts(1, 1)).hom_dim == 2
    assert hom_ext(pure_sts(2, 1), pure_sts(2, 3)).hom_dim == 0
    assert hom_ext(pure_sts(1, 2), pure_sts(1, 1)).hom_dim == 0


def test_shs_to_sts_forgets_types():
    s = kummer_shs(1)
    t = shs_to_sts(s)
    assert t.report().ranks == ((-2, 1), (0, 1))
    assert t.component(0, 0) == kummer_E()


def test_tensor_dual_and_direct_sum():
    k = kummer_shs(1)
    t = tensor_dual_shs("tensor", k, k)
    t.check()
    assert validate_mhs(shs_to_mhs(t)).ok
    d = tensor_dual_shs("dual", k)
    d.check()
    assert d.component(0, 0) == -kummer_E().T.complexify()
    s = direct_sum_shs(k, tate_shs(2))
    assert s.dim == 3 and validate_mhs(shs_to_mhs(s)).ok


def test_algebra_check_on_square_zero_extension():
    # Q e0 + Q e1 with e1 e1 = 0; beta sends the unit e0 nowhere
    unit = (1, 0)
    prod = LinearMap.from_rows([[1, 0, 0, 0], [0, 1, 1, 0]])
    assert not shs_algebra_check(kummer_shs(1), prod, unit).ok
    zero_beta = SHSObject.build(kummer_grading())
    assert shs_algebra_check(zero_beta, prod, unit).ok
    big = tensor_product_algebra(prod, 2, prod, 2)
    assert big.shape == (4, 16)
