from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import e_to_x, sympy_elementary, to_sympy
from strategies import epolys
from qkzres.polyring import (
    ArityError,
    MPoly,
    bar,
    bar_x,
    delta_plus,
    delta_plus_e,
    e_gen,
    e_symbols,
    elementary,
    eval_e,
    special_assignment,
    specialize_e,
    to_e_rep,
    to_x_rep,
    x_symbols,
)
from qkzres.construct import p_rs


def xs(n):
    return sp.symbols(f"x1:{n + 1}")


def test_elementary_examples():
    assert to_sympy(elementary(2, 1)) == sp.Symbol("x1") + sp.Symbol("x2")
    assert elementary(4, 5).is_zero()
    assert elementary(0, 0) == MPoly.const((), 1)
    assert elementary(3, -1).is_zero()


@pytest.mark.parametrize("n", range(1, 7))
def test_elementary_generating_function(n):
    t = sp.Symbol("t")
    prod = sp.expand(sp.Mul(*[1 + x * t for x in xs(n)]))
    for k in range(n + 1):
        assert prod.coeff(t, k) == to_sympy(elementary(n, k))


def test_to_x_rep_examples():
    e1 = e_gen(2, 1)
    x1, x2 = xs(2)
    assert to_sympy(to_x_rep(e1, 2)) == x1 + x2
    assert to_sympy(to_x_rep(e1 * e1, 2)) == sp.expand((x1 + x2) ** 2)
    assert to_x_rep(e1, 2) == delta_plus(2)


def test_to_x_rep_rejects_large_index():
    with pytest.raises(ArityError):
        to_x_rep(e_gen(4, 4), 3)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 4), data=st.data())
def test_to_x_rep_matches_sympy(n, data):
    p = data.draw(epolys(n))
    assert to_sympy(to_x_rep(p, n)) == e_to_x(to_sympy(p), n)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 4), data=st.data())
def test_round_trip_e_x_e(n, data):
    p = data.draw(epolys(n))
    assert to_e_rep(to_x_rep(p, n), n) == p


def test_to_e_rep_rejects_nonsymmetric():
    x1 = MPoly.gen(x_symbols(2), "x1")
    with pytest.raises(ValueError):
        to_e_rep(x1, 2)


def test_bar_examples():
    n = 6
    assert bar(e_gen(n, 1)) == MPoly.gen(("e1", "e2", "e3", "e4", "x"), "e1")
    b = bar(e_gen(4, 2))
    assert to_sympy(b) == sp.Symbol("e2") - sp.Symbol("x") ** 2
    with pytest.raises(ArityError):
        bar(e_gen(1, 1), 1)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 5), data=st.data())
def test_bar_agrees_with_direct_substitution(n, data):
    p = data.draw(epolys(n, max_exp=1))
    x = sp.Symbol("x")
    direct = e_to_x(to_sympy(p), n).subs({xs(n)[n - 2]: x, xs(n)[n - 1]: -x}, simultaneous=True)
    via_bar = e_to_x(to_sympy(bar(p)), n - 2)
    assert sp.expand(direct - via_bar) == 0
    assert to_x_rep(bar(p), n - 2) == bar_x(to_x_rep(p, n), n)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 5), data=st.data())
def test_bar_is_multiplicative(n, data):
    p, q = data.draw(epolys(n)), data.draw(epolys(n))
    assert bar(p * q) == bar(p) * bar(q)
    assert bar(p + q) == bar(p) + bar(q)


@pytest.mark.parametrize("n", range(2, 7))
def test_bar_kills_delta_multiples(n):
    g = e_gen(n, 1) * e_gen(n, n) + 3
    assert bar(g * delta_plus_e(n)).is_zero()


def test_delta_plus_examples():
    assert delta_plus(1) == MPoly.const(x_symbols(1), 1)
    assert to_sympy(delta_plus(2)) == sum(xs(2))
    assert delta_plus(4).evaluate([1, 1, 1, 1]) == 64
    assert delta_plus(4).evaluate([1, 2, 3, 4]) == 3 * 4 * 5 * 5 * 6 * 7 == 12600


@pytest.mark.parametrize("n", range(1, 6))
def test_delta_plus_e_is_pair_product(n):
    x = xs(n)
    direct = sp.expand(sp.Mul(*[a + b for a, b in itertools.combinations(x, 2)]))
    assert e_to_x(to_sympy(delta_plus_e(n)), n) == direct
    assert to_x_rep(delta_plus_e(n), n) == delta_plus(n)


def test_eval_examples():
    assert elementary(3, 2).evaluate([1, 2, 3]) == 11
    assert MPoly.zero(x_symbols(3)).evaluate([5, 6, 7]) == 0
    assert eval_e(e_gen(3, 2), [1, 2, 3]) == 11
    with pytest.raises(ArityError):
        elementary(3, 2).evaluate([1, 2])


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 4), data=st.data())
def test_eval_is_homomorphism(n, data):
    p, q = data.draw(epolys(n)), data.draw(epolys(n))
    pt = data.draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                            min_size=n, max_size=n))
    assert eval_e(p * q, pt) == eval_e(p, pt) * eval_e(q, pt)
    assert eval_e(p + q, pt) == eval_e(p, pt) + eval_e(q, pt)
    expected = e_to_x(to_sympy(p), n).subs(dict(zip(xs(n), pt)))
    assert sp.Rational(eval_e(p, pt)) == expected


def test_specialize_examples():
    assert specialize_e(p_rs(4, 2, 2), special_assignment(4)) == 1
    assert specialize_e(e_gen(6, 2), special_assignment(6)) == 0
    assert specialize_e(e_gen(5, 5), special_assignment(5)) == 1
    partial = specialize_e(e_gen(3, 1) * e_gen(3, 2) + e_gen(3, 3), {"e1": 2})
    assert partial == MPoly(("e2", "e3"), {(1, 0): 2, (0, 1): 1})
    assert specialize_e(e_gen(3, 1), {"e1": Fraction(1, 2)}) == Fraction(1, 2)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 4), data=st.data())
def test_json_round_trip_and_canonical_form(n, data):
    p = data.draw(epolys(n))
    assert MPoly.from_json(p.to_json()) == p
    shuffled = MPoly(p.symbols, dict(reversed(list(p.terms.items()))))
    assert shuffled.to_json() == p.to_json()
    assert all(c != 0 for c in p.terms.values())


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_divexact_inverts_multiplication(data):
    p, q = data.draw(epolys(3)), data.draw(epolys(3))
    if q.is_zero():
        return
    assert (p * q).divexact(q) == p


def test_symbols_are_canonical():
    assert e_symbols(3) == ("e1", "e2", "e3")
    assert x_symbols(2) == ("x1", "x2")


def test_sympy_elementary_helper():
    assert sympy_elementary(xs(3), 0) == 1
