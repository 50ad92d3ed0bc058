import random

import pytest

from hodgesplit import CosimplicialDGA, InvariantError, TruncationError, thom_whitney, total_complex_cohomology
from hodgesplit.dga import exterior, ground_field, polynomial_truncated, sphere_cohomology
from hodgesplit.thom_whitney import (Forms, Graph1D, codegeneracy_pullback, coface_pullback, constant_cosimplicial,
                                     function_cosimplicial, interval_cosimplicial, random_graph,
                                     random_square_zero_dga)


def nonzero(d):
    return {k: v for k, v in d.items() if v}


def test_forms_differential_squares_to_zero():
    F = Forms(2, 3)
    for m in F.monos:
        dd = {}
        for mono, c in F.d(m).items():
            for mono2, c2 in F.d(mono).items():
                dd[mono2] = dd.get(mono2, 0) + c * c2
        assert not any(dd.values())


def test_forms_product_signs():
    dt0, dt1 = ((0, 0), (0,)), ((0, 0), (1,))
    assert Forms.mul(dt1, dt0) == (-1, ((0, 0), (0, 1)))
    assert Forms.mul(dt0, dt1) == (1, ((0, 0), (0, 1)))
    assert Forms.mul(dt0, dt0) is None


def test_forms_count():
    # polynomials of degree <= 2 in t1, t2, with dt counted as degree 1
    F = Forms(2, 2)
    assert len(F.monos) == 13
    assert F.degree(F.one()) == 0


@pytest.mark.parametrize("n", [1, 2])
def test_pullback_cosimplicial_identities(n):
    cap = 2
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            # d^j d^i = d^i d^{j-1} becomes d_i^* d_j^* = d_{j-1}^* d_i^* on forms
            lhs = coface_pullback(n, i, cap) @ coface_pullback(n + 1, j, cap)
            rhs = coface_pullback(n, j - 1, cap) @ coface_pullback(n + 1, i, cap)
            assert lhs == rhs
    for j in range(n + 1):
        for i in (j, j + 1):
            # s^j d^i = id pulls back to d_i^* s_j^* = id
            ident = coface_pullback(n + 1, i, cap) @ codegeneracy_pullback(n, j, cap)
            assert ident == ident.identity(ident.dom)


@pytest.mark.parametrize("B", [sphere_cohomology(2), polynomial_truncated(2, 2), exterior(1), ground_field()])
def test_constant_input_returns_the_algebra(B):
    res = thom_whitney(constant_cosimplicial(B, 2))
    assert res.stable and res.closed_under_products
    assert res.as_dga() == B


def test_interval_is_contractible():
    res = thom_whitney(interval_cosimplicial())
    assert nonzero(res.cohomology) == {0: 1} and res.stable
    assert nonzero(total_complex_cohomology(interval_cosimplicial())) == {0: 1}


def test_loop_graph_is_a_circle():
    C = function_cosimplicial(ground_field(), Graph1D(1, ((0, 0),)), 1)
    res = thom_whitney(C)
    assert nonzero(res.cohomology) == {0: 1, 1: 1}
    assert not res.closed_under_products
    with pytest.raises(TruncationError):
        res.as_dga()


def test_circle_times_sphere():
    C = function_cosimplicial(sphere_cohomology(2), Graph1D(2, ((0, 1), (1, 0))), 1)
    assert nonzero(thom_whitney(C).cohomology) == {0: 1, 1: 1, 2: 1, 3: 1}


def test_random_inputs_match_total_complex():
    rng = random.Random(31)
    for _ in range(10):
        C = function_cosimplicial(random_square_zero_dga(rng), random_graph(rng, 3, 3), 1)
        assert nonzero(thom_whitney(C).cohomology) == nonzero(total_complex_cohomology(C))


def test_broken_structure_map_rejected():
    C = interval_cosimplicial()
    key = sorted(C.cofaces)[0]
    cofaces = dict(C.cofaces)
    cofaces[key] = cofaces[key].scale(2)
    with pytest.raises(InvariantError):
        thom_whitney(CosimplicialDGA(C.levels, cofaces, dict(C.codegeneracies)))


def test_negative_cap_rejected():
    with pytest.raises(TruncationError):
        thom_whitney(interval_cosimplicial(), -1)
