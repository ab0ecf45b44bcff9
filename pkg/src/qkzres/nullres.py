"""Null-residue conditions, the basis matrix and its determinant."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .construct import basis_indices, enumerate_basis, half, index_deg1, is_even, p_rs
from .qchar import qbinom_coeffs
from .linalg import SparseEchelon, det_bareiss, det_int
from .polyring import (
    MPoly,
    bar,
    bar_symbols,
    delta_plus_e,
    e_symbols,
    e_values,
    e_weights,
    monomials_of_weight,
    to_x_rep,
    x_symbols,
)
from .wedge import WedgeElement, coefficient

RANDOM_BOUND = 10 ** 6


def clearing_exponent(nvars: int) -> int:
    return 2 * nvars - 1


@dataclass
class ResidueComponents:
    """Cleared residue polynomials keyed by the (ell-1)-tuple of leading indices."""

    nvars: int
    even_part: dict
    odd_part: dict

    def vanishes(self) -> bool:
        return not any(self.even_part.values()) and not any(self.odd_part.values())

    def nonzero(self) -> list:
        out = [("even", t, p) for t, p in self.even_part.items() if p]
        return out + [("odd", t, p) for t, p in self.odd_part.items() if p]


def residue_components(P: WedgeElement, stop_early: bool = False) -> ResidueComponents:
    """x^{2N-1} * sum_{i even/odd} bar(P_{t,i}) x^{-i} for every (ell-1)-tuple t."""
    N = P.nvars
    if N < 2:
        raise ValueError("residue components need at least two variables")
    ell = P.ell
    syms = bar_symbols(N)
    xpos = syms.index("x")
    c = clearing_exponent(N)
    even: dict = {}
    odd: dict = {}
    if ell == 0:
        # U_{N,0} = R_N by convention: no conditions
        return ResidueComponents(N, even, odd)
    # group stored coefficients by the tuple that remains after removing one index
    groups: dict = {}
    for idx, coef in P.coeffs.items():
        for pos in range(ell):
            rest = idx[:pos] + idx[pos + 1:]
            sign = -1 if (ell - 1 - pos) % 2 else 1
            groups.setdefault(rest, []).append((idx[pos], sign, coef))
    bars: dict = {}
    for rest, items in groups.items():
        acc = {0: {}, 1: {}}
        for i, sign, coef in items:
            b = bars.get(id(coef))
            if b is None:
                b = bar(coef, N)
                bars[id(coef)] = b
            shift = c - i
            target = acc[i % 2]
            for exp, v in b.terms.items():
                e = list(exp)
                e[xpos] += shift
                e = tuple(e)
                nv = target.get(e, 0) + sign * v
                if nv:
                    target[e] = nv
                else:
                    target.pop(e, None)
        even[rest] = MPoly(syms, acc[0])
        odd[rest] = MPoly(syms, acc[1])
        if stop_early and (acc[0] or acc[1]):
            break
    return ResidueComponents(N, even, odd)


def in_U(P: WedgeElement) -> bool:
    if P.widened and P.max_index() >= P.nvars:
        return False
    return residue_components(P, stop_early=True).vanishes()


# ---------------------------------------------------------------------------
# the basis matrix

def column_tuples(nvars: int, ell: int) -> list:
    return list(itertools.combinations(range(nvars), ell))


@dataclass
class BasisMatrix:
    nvars: int
    ell: int
    rows: list  # BasisIndex
    columns: list  # index tuples
    entries: list  # list of lists of MPoly

    @property
    def size(self) -> int:
        return len(self.rows)

    def evaluate(self, evals: dict) -> list:
        return [[p.evaluate(evals) if p else 0 for p in row] for row in self.entries]


def basis_matrix(nvars: int, ell: int) -> BasisMatrix:
    basis = enumerate_basis(nvars, ell)
    cols = column_tuples(nvars, ell)
    zero = MPoly.zero(e_symbols(nvars))
    entries = [[Q.coeffs.get(t, zero) for t in cols] for _, Q in basis]
    return BasisMatrix(nvars, ell, [b for b, _ in basis], cols, entries)


def det_exponent(nvars: int, ell: int) -> int:
    return comb(nvars - 1, ell - 1) + comb(nvars - 2, ell - 1) if ell >= 1 else 0


def det_degree(nvars: int, ell: int) -> int:
    return comb(nvars, 2) * det_exponent(nvars, ell)


def p_matrix(n: int) -> list:
    """The n x n matrix (P^{(2n)}_{i,j})."""
    return [[p_rs(2 * n, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def p_matrix_det(n: int) -> MPoly:
    syms = e_symbols(2 * n)
    return det_bareiss(p_matrix(n), MPoly.zero(syms), MPoly.const(syms, 1))


def p_matrix_ratio(n: int) -> Fraction | None:
    """c with det(P_{i,j}) = c * Delta^+_{2n}; the expected value is 1."""
    return _ratio(p_matrix_det(n), delta_plus_e(2 * n))


def symbolic_det(nvars: int, ell: int) -> MPoly:
    M = basis_matrix(nvars, ell)
    syms = e_symbols(nvars)
    return det_bareiss(M.entries, MPoly.zero(syms), MPoly.const(syms, 1))


def _ratio(a: MPoly, b: MPoly) -> Fraction | None:
    """c with a == c*b, or None."""
    if not b:
        return None
    if not a:
        return Fraction(0)
    ea, ca = a.leading_term()
    eb, cb = b.leading_term()
    if ea != eb:
        return None
    c = Fraction(ca, cb)
    if a * c.denominator != b * c.numerator:
        return None
    return c


def _delta_plus_value(point) -> int:
    v = 1
    for a, b in itertools.combinations(point, 2):
        v *= a + b
    return v


def random_point(rng: random.Random, nvars: int, bound: int = RANDOM_BOUND) -> list:
    while True:
        pt = [rng.randint(-bound, bound) for _ in range(nvars)]
        if _delta_plus_value(pt):
            return pt


def det_identity_check(nvars: int, ell: int, mode: str = "symbolic", trials: int = 8,
                       seed: int = 0) -> dict:
    """Compare det X^{(N,ell)} with c * (Delta^+_N)^k.

    Symbolic mode divides exactly; randomized mode evaluates at seeded
    integer points and also checks homogeneity by rescaling one point.
    """
    k = det_exponent(nvars, ell)
    expected_degree = det_degree(nvars, ell)
    report = {"n": nvars, "ell": ell, "mode": mode, "exponent": k, "trials": 0,
              "degree": expected_degree}
    if mode == "symbolic":
        det = symbolic_det(nvars, ell)
        target = delta_plus_e(nvars) ** k
        c = _ratio(det, target)
        homogeneous = det.weighted_degrees(e_weights(det.symbols)) == {expected_degree}
        report.update(matches=c is not None and c != 0 and homogeneous,
                      c=str(c) if c is not None else None)
        return report
    if mode != "randomized":
        raise ValueError(f"unknown mode {mode!r}")
    if trials < 1:
        raise ValueError("randomized mode needs at least one trial")
    rng = random.Random(seed)
    M = basis_matrix(nvars, ell)
    syms = e_symbols(nvars)
    c = None
    ok = True
    points = []
    for _ in range(trials):
        pt = random_point(rng, nvars)
        points.append(pt)
        evals = dict(zip(syms, e_values(pt)))
        d = det_int(M.evaluate(evals))
        ratio = Fraction(d, _delta_plus_value(pt) ** k)
        if c is None:
            c = ratio
        elif ratio != c:
            ok = False
    # homogeneity: det(t x) = t^deg det(x)
    t = 3
    pt = points[0]
    scaled = [t * a for a in pt]
    d0 = det_int(M.evaluate(dict(zip(syms, e_values(pt)))))
    d1 = det_int(M.evaluate(dict(zip(syms, e_values(scaled)))))
    homogeneous = d1 == t ** expected_degree * d0
    report.update(matches=ok and bool(c) and homogeneous, c=str(c), trials=trials, seed=seed)
    return report


def full_matrix_sign_ell1(nvars: int) -> Fraction | None:
    """c for the full ell = 1 matrix (rows in basis order)."""
    det = symbolic_det(nvars, 1)
    return _ratio(det, delta_plus_e(nvars) ** det_exponent(nvars, 1))


# ---------------------------------------------------------------------------
# degree sums

def degree_sum_check(nvars: int, ell: int) -> dict:
    idxs = basis_indices(nvars, ell)
    rows = sum(index_deg1(nvars, b) for b in idxs)
    cols = sum(sum(t) for t in column_tuples(nvars, ell))
    closed = det_degree(nvars, ell)
    # derivative route: 2 A + binom(ell, 2) binom(N, ell) with A = d/dq [N, ell]_q at q = 1
    A = sum(k * c for k, c in enumerate(qbinom_coeffs(nvars, ell)))
    via_char = 2 * A + comb(ell, 2) * comb(nvars, ell)
    return {"n": nvars, "ell": ell, "direct": rows + cols, "closed_form": closed,
            "via_character": via_char, "matches": rows + cols == closed == via_char}


# ---------------------------------------------------------------------------
# coordinates

class NotInU(ValueError):
    pass


def _coordinates_cramer(P: WedgeElement, M: BasisMatrix) -> list:
    syms = e_symbols(P.nvars)
    zero, one = MPoly.zero(syms), MPoly.const(syms, 1)
    det = det_bareiss(M.entries, zero, one)
    if not det:
        raise ArithmeticError("basis matrix is singular")
    rhs = [P.coeffs.get(t, zero) for t in M.columns]
    out = []
    # rows of X are the basis elements, so (S) X = (P); replace row r by P
    for r in range(M.size):
        rows = [list(row) for row in M.entries]
        rows[r] = rhs
        num = det_bareiss(rows, zero, one)
        out.append(num.divexact(det) if num else zero)
    return out


def _homogeneous_parts(P: WedgeElement) -> dict:
    parts: dict = {}
    for idx, c in P.coeffs.items():
        w = e_weights(c.symbols)
        for exp, v in c.terms.items():
            d = sum(a * b for a, b in zip(w, exp)) - sum(idx)
            parts.setdefault(d, {}).setdefault(idx, {})[exp] = v
    syms = e_symbols(P.nvars)
    return {d: {idx: MPoly(syms, t) for idx, t in comp.items()} for d, comp in parts.items()}


def _coordinates_graded(P: WedgeElement, basis: list) -> list:
    N = P.nvars
    syms = e_symbols(N)
    degs = [index_deg1(N, b) for b, _ in basis]
    result = [dict() for _ in basis]
    for d, comp in _homogeneous_parts(P).items():
        ech = SparseEchelon(track=True)
        for r, (_, Q) in enumerate(basis):
            for mono in monomials_of_weight(N, d - degs[r]):
                row = {}
                for idx, c in Q.coeffs.items():
                    for exp, v in c.terms.items():
                        key = (idx, tuple(a + b for a, b in zip(exp, mono)))
                        row[key] = row.get(key, 0) + v
                ech.add(row, label=(r, mono))
        target = {}
        for idx, c in comp.items():
            for exp, v in c.terms.items():
                target[(idx, exp)] = v
        sol = ech.solve(target)
        if sol is None:
            raise NotInU("element is not an R-combination of the basis")
        for (r, mono), v in sol.items():
            if v.denominator != 1:
                raise ArithmeticError("non-integral coordinate")
            result[r][mono] = int(v)
    return [MPoly(syms, t) for t in result]


def coordinates(P: WedgeElement, method: str = "auto", check: bool = True) -> list:
    """S_r with P = sum_r S_r Q_r over the basis of U_{N, ell}."""
    N, ell = P.nvars, P.ell
    if check and not in_U(P):
        raise NotInU("element does not satisfy the null-residue conditions")
    if P.widened:
        P = P.narrowed()
    basis = enumerate_basis(N, ell)
    if method == "auto":
        method = "cramer" if len(basis) <= 6 else "graded"
    if method == "cramer":
        S = _coordinates_cramer(P, basis_matrix(N, ell))
    elif method == "graded":
        S = _coordinates_graded(P, basis)
    else:
        raise ValueError(f"unknown method {method!r}")
    if check:
        total = WedgeElement(N, ell, {})
        for s, (_, Q) in zip(S, basis):
            if s:
                total = total + Q.scale(s)
        if total != P:
            raise ArithmeticError("coordinates do not reproduce the element")
    return S


# ---------------------------------------------------------------------------
# the column operation behind the divisibility statement

def column_operation_check(nvars: int, ell: int) -> dict:
    """Apply the column combination with powers of 1/x_{N-1} and test divisibility.

    For each column tuple (0, t) with 0 < t, the combined entry is
    sum_j Q_{r; 2j, t} x_{N-1}^{-2j}; for (1, t') with 1 < t' it is
    sum_j Q_{r; 2j-1, t'} x_{N-1}^{-(2j-1)}.  After clearing the negative
    powers each combined entry must be divisible by x_{N-1} + x_N.
    """
    if not is_even(nvars):
        raise ValueError("column operation check is formulated for an even variable count")
    n = half(nvars)
    basis = enumerate_basis(nvars, ell)
    xs = x_symbols(nvars)
    xl = MPoly.gen(xs, xs[-2])
    divisor = xl + MPoly.gen(xs, xs[-1])
    modified = 0
    failures = []
    xcache: dict = {}

    def xrep(p: MPoly) -> MPoly:
        if p not in xcache:
            xcache[p] = to_x_rep(p, nvars)
        return xcache[p]

    plans = []
    for t in itertools.combinations(range(1, nvars), ell - 1):
        plans.append((0, t, [(2 * j, 2 * (n - 1) - 2 * j) for j in range(n)]))
    for t in itertools.combinations(range(2, nvars), ell - 1):
        plans.append((1, t, [(2 * j - 1, (2 * n - 1) - (2 * j - 1)) for j in range(1, n + 1)]))
    for lead, t, terms in plans:
        modified += 1
        for b, Q in basis:
            entry = MPoly.zero(xs)
            for i, shift in terms:
                c = coefficient(Q, (i,) + t)
                if c:
                    entry = entry + xrep(c) * (xl ** shift)
            try:
                entry.divexact(divisor)
            except ArithmeticError:
                failures.append({"row": b.label(), "column": [lead, *t]})
    expected = det_exponent(nvars, ell)
    return {"n": nvars, "ell": ell, "modified_columns": modified, "expected": expected,
            "matches": modified == expected and not failures, "failures": failures}
