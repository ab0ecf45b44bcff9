from __future__ import annotations

import itertools

import sympy as sp
import sympy.combinatorics

from qkzres.polyring import MPoly


def to_sympy(p: MPoly) -> sp.Expr:
    syms = [sp.Symbol(s) for s in p.symbols]
    expr = sp.Integer(0)
    for exp, c in p.terms.items():
        term = sp.Integer(c)
        for s, a in zip(syms, exp):
            term *= s ** a
        expr += term
    return sp.expand(expr)


def sympy_elementary(xs, k):
    return sp.Add(*[sp.Mul(*c) for c in itertools.combinations(xs, k)]) if k >= 0 else 0


def e_to_x(expr: sp.Expr, n: int) -> sp.Expr:
    """Substitute e_k -> e_k(x1..xn) with sympy, independently of the package."""
    xs = sp.symbols(f"x1:{n + 1}")
    subs = {sp.Symbol(f"e{k}"): sympy_elementary(xs, k) for k in range(1, n + 1)}
    return sp.expand(expr.subs(subs, simultaneous=True))


def big_x(ell: int):
    return sp.symbols(f"X1:{ell + 1}")


def form_to_sympy(P, expand_e: bool = True) -> sp.Expr:
    """The antisymmetric polynomial in X1..X_ell attached to a form, x-expanded."""
    Xs = big_x(P.ell)
    total = sp.Integer(0)
    for idx, c in P.coeffs.items():
        coeff = e_to_x(to_sympy(c), P.nvars) if expand_e else to_sympy(c)
        alt = sp.Integer(0)
        for perm in itertools.permutations(range(P.ell)):
            sign = sp.combinatorics.Permutation(list(perm)).signature()
            alt += sign * sp.Mul(*[Xs[a] ** idx[perm[a]] for a in range(P.ell)])
        total += coeff * alt
    return sp.expand(total)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
