import pytest
from gmpy2 import mpq

from hodgesplit import InvariantError, LieAlgebra, LinearMap, deformation_cone, explicit_cone
from hodgesplit.deformation import abelian_lie, format_polynomial, punctured_curve_input, sl2
from hodgesplit.dga import empty_divisor_fixture, gm_fixture


def test_lie_algebra_axioms_checked():
    sl2().check()
    assert abelian_lie(3).is_abelian()
    with pytest.raises(InvariantError):
        LieAlgebra.build(2, {(0, 1): {0: 1}})
    with pytest.raises(InvariantError):
        # antisymmetric but [e0,[e1,e2]] + cyclic != 0
        LieAlgebra.build(3, {(0, 1): {1: 1}, (1, 0): {1: -1}, (1, 2): {1: 1}, (2, 1): {1: -1},
                             (0, 2): {0: 1}, (2, 0): {0: -1}})


def test_polynomial_text():
    assert format_polynomial({}) == "0"
    p = {("eta0",): mpq(1), ("omega0", "omega0"): mpq(1, 2), ("eta1",): mpq(-2)}
    assert format_polynomial(p) == "eta0 - 2*eta1 + 1/2*omega0*omega0"


def test_abelian_gm_cone_is_linear():
    cone = deformation_cone(gm_fixture(), abelian_lie(1))
    assert cone.text() == ["d2eta[0]: eta0 + eta1 = 0"]
    assert cone.tangent_dim == 2 and cone.zariski_tangent_dim == 1
    assert cone.is_linear() and cone.lie_abelian


def test_sl2_curve_cone_is_quadratic():
    cone = deformation_cone(punctured_curve_input(1, 2), sl2())
    assert cone.tangent_dim == (2 + 2) * 3
    assert not cone.is_linear()
    fams = {fam for fam, _, _ in cone.nonzero_equations()}
    assert "d2eta" in fams
    # a point on the H^1 axis with commuting values satisfies the H^2 equations
    omega = [mpq(0)] * len(cone.omega_vars)
    omega[0] = mpq(1)
    values = cone.evaluate(omega, [mpq(0)] * len(cone.eta_vars))
    assert all(v == 0 for v in values)


def test_action_generators_labelled():
    cone = deformation_cone(empty_divisor_fixture(), sl2())
    assert [lab for lab, _ in cone.action] == ["e0.g0", "e0.g1", "e0.g2"]
    assert cone.eta_vars == () and cone.tangent_dim == 6


def test_explicit_cone():
    q = explicit_cone(1, 0, [[[1]]])
    assert q.text() == ["d2eta[0]: 1/2*omega0*omega0 = 0"]
    d2 = LinearMap.from_rows([[1, 1]])
    c = explicit_cone(0, 2, d2=d2)
    assert c.zariski_tangent_dim == 1
    assert c.linear_part() == d2


def test_explicit_cone_rejects_non_symmetric_bracket():
    with pytest.raises(InvariantError):
        explicit_cone(2, 0, [[[0, 1], [0, 0]]])


def test_explicit_cone_rejects_bad_d2_shape():
    with pytest.raises(InvariantError):
        explicit_cone(0, 2, [], d2=LinearMap.from_rows([[1, 1, 1]]))
