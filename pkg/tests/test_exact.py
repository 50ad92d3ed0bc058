import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgesplit import (QI, DimensionMismatch, InconsistentSystem, LinearMap, ParseError, RejectionError,
                        Subspace, format_scalar, parse_scalar, quotient, relative_quotient, solve)
from hodgesplit.exact import nilpotent_exp, rref, unipotent_log

rationals = st.builds(mpq, st.integers(-50, 50), st.integers(1, 12))
gaussians = st.builds(QI, rationals, rationals)


def matrices(rows, cols):
    return st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(rationals, rationals, rationals, rationals)
def test_gaussian_field_axioms(a, b, c, d):
    x, y = QI(a, b), QI(c, d)
    assert x * y == y * x
    assert (x + y).conj() == x.conj() + y.conj()
    assert (x * y).conj() == x.conj() * y.conj()
    if y != 0:
        assert (x / y) * y == x


@given(gaussians)
def test_scalar_text_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@pytest.mark.parametrize("text, value", [
    ("3", mpq(3)), ("-1/2", mpq(-1, 2)), ("1/2+3/4*i", QI(mpq(1, 2), mpq(3, 4))), ("0-1*i", QI(0, -1)),
    ("2+i", QI(2, 1)),
])
def test_parse_scalar_examples(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "1/0", "abc", "1+2", "1.5", "i*2"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


def test_format_is_canonical():
    assert format_scalar(mpq(4, 2)) == "2"
    assert format_scalar(QI(0, -1)) == "0-1*i"
    assert format_scalar(QI(mpq(1, 3), 0)) == "1/3"


def test_rref_identity_block():
    red, piv = rref([[2, 4], [1, 3]], 2)
    assert piv == [0, 1] and red == [(1, 0), (0, 1)]


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4))
def test_rank_nullity(rows):
    m = LinearMap.from_rows(rows, 4)
    assert m.rank() + m.kernel().dim == 4
    assert m.image().dim == m.rank()
    for v in m.kernel().basis:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=40, deadline=None)
@given(matrices(2, 4), matrices(2, 4))
def test_subspace_lattice(a_rows, b_rows):
    a, b = Subspace.span(a_rows, 4), Subspace.span(b_rows, 4)
    assert (a + b).dim + (a & b).dim == a.dim + b.dim
    assert a & b <= a <= a + b
    assert a.annihilator().dim == 4 - a.dim


def test_echelon_form_is_canonical():
    a = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
    b = Subspace.span([(1, 2, 1), (1, 0, -1)], 3)
    assert a == b and a.basis == b.basis


@settings(max_examples=30, deadline=None)
@given(matrices(2, 4))
def test_quotient_section(rows):
    s = Subspace.span(rows, 4)
    q = quotient(s)
    assert q.dim == 4 - s.dim
    assert q.projection @ q.section == LinearMap.identity(q.dim)
    assert all(all(x == 0 for x in q.projection.apply(v)) for v in s.basis)


def test_quotient_section_uses_non_pivot_coordinates():
    q = quotient(Subspace.span([(1, 1, 0)], 3))
    assert list(q.section.columns()) == [(0, 1, 0), (0, 0, 1)]


def test_relative_quotient():
    big = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    small = Subspace.span([(1, 1, 0)], 3)
    q = relative_quotient(big, small)
    assert q.dim == 1
    assert q.projection @ q.section == LinearMap.identity(1)
    with pytest.raises(DimensionMismatch):
        relative_quotient(small, big)


def test_solve_and_inconsistency():
    m = LinearMap.from_rows([[1, 1], [2, 2]])
    x = solve(m, (mpq(3), mpq(6)))
    assert m.apply(x) == (3, 6)
    with pytest.raises(InconsistentSystem):
        solve(m, (mpq(1), mpq(0)))


def test_exp_log_are_inverse():
    n = LinearMap.from_rows([[0, 0, 0], [1, 0, 0], [mpq(1, 2), 3, 0]])
    u = nilpotent_exp(n)
    assert unipotent_log(u) == n
    assert nilpotent_exp(unipotent_log(u)) == u
    with pytest.raises(RejectionError):
        nilpotent_exp(LinearMap.identity(2))


def test_complex_maps_and_conjugation():
    m = LinearMap.from_rows([[QI(1, 2), 0], [0, QI(0, -1)]])
    assert not m.is_real()
    assert m.conj().conj() == m
    assert (m @ m.inverse()) == LinearMap.identity(2).complexify()
    assert LinearMap.from_rows([[1, 2]]).complexify().is_real()
