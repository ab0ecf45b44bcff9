"""Named null-residue generators and the candidate bases.

Everything is parametrized by the variable count ``nvars``: even
``nvars = 2n`` and odd ``nvars = 2n+1`` share the recursion for P_{r,s} but
differ in how v, w and xi are assembled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .polyring import MPoly, e_gen, e_symbols
from .wedge import WedgeElement, WedgeError, from_xpoly, one_form, wedge_all


class IndexError_(ValueError):
    """An index outside the documented range of a construction."""


def half(nvars: int) -> int:
    """n for nvars = 2n or 2n+1."""
    return nvars // 2


def is_even(nvars: int) -> bool:
    return nvars % 2 == 0


def r_max(nvars: int) -> int:
    n = half(nvars)
    return n if is_even(nvars) else n + 1


# ---------------------------------------------------------------------------
# P_{r,s}

@lru_cache(maxsize=None)
def _p(nvars: int, r: int, s: int) -> MPoly:
    if r <= 0:
        # extension used when the recursion is unrolled below r = 1
        return e_gen(nvars, 2 * (s + r) - 3)
    if s <= 0:
        return MPoly.zero(e_symbols(nvars))
    if r == 1:
        return e_gen(nvars, 2 * s - 1)
    prev = _p(nvars, r - 1, s + 1)
    e2s = e_gen(nvars, 2 * s)
    if not e2s:
        return prev
    return prev - e2s * _p(nvars, r - 1, 1)


def p_rs(nvars: int, r: int, s: int) -> MPoly:
    """P^{(nvars)}_{r,s} in E-REP, for 1 <= r <= r_max and any integer s."""
    if r < 1 or r > r_max(nvars):
        raise IndexError_(f"r={r} outside 1..{r_max(nvars)} for {nvars} variables")
    return _p(nvars, r, s)


def p_ext(nvars: int, r: int, s: int) -> MPoly:
    """P_{r,s} with the extension P_{r,s} = e_{2(s+r)-3} for r <= 0."""
    if r > r_max(nvars):
        raise IndexError_(f"r={r} above {r_max(nvars)}")
    return _p(nvars, r, s)


def p_table(nvars: int) -> dict:
    """All nonzero P_{r,s} for 1 <= r <= r_max, 1 <= s <= n+1."""
    n = half(nvars)
    out = {}
    for r in range(1, r_max(nvars) + 1):
        for s in range(1, n + 2):
            p = _p(nvars, r, s)
            if p:
                out[(r, s)] = p
    return out


# ---------------------------------------------------------------------------
# one-forms

def _check_index(nvars: int, kind: str, index: int):
    n = half(nvars)
    lo = 0 if (kind == "v" and not is_even(nvars)) else 1
    if not lo <= index <= n:
        raise IndexError_(f"{kind} index {index} outside {lo}..{n} for {nvars} variables")


@lru_cache(maxsize=None)
def v_gen(nvars: int, i: int) -> WedgeElement:
    _check_index(nvars, "v", i)
    if i == 0:
        return v0_gen(nvars)
    n = half(nvars)
    top = n if is_even(nvars) else n + 1
    return one_form(nvars, {2 * (s - 1): _p(nvars, i, s) for s in range(1, top + 1)})


@lru_cache(maxsize=None)
def w_gen(nvars: int, j: int) -> WedgeElement:
    _check_index(nvars, "w", j)
    return _w(nvars, j)


@lru_cache(maxsize=None)
def _w(nvars: int, j: int) -> WedgeElement:
    # even: w_j = X v_j ; odd: w_j = X v_{j+1} (w_0 sits in the widened module)
    n = half(nvars)
    if is_even(nvars):
        return one_form(nvars, {2 * s - 1: _p(nvars, j, s) for s in range(1, n + 1)})
    coeffs = {2 * s - 1: _p(nvars, j + 1, s) for s in range(1, n + 2)}
    rank = nvars + 1 if any(k >= nvars and c for k, c in coeffs.items()) else nvars
    return one_form(nvars, coeffs, rank=rank)


@lru_cache(maxsize=None)
def v0_gen(nvars: int) -> WedgeElement:
    """sum_{j=0}^n e_{2j} X^{2j}; widened (rank nvars+1) when nvars is even."""
    n = half(nvars)
    rank = nvars + 1 if is_even(nvars) else nvars
    return one_form(nvars, {2 * j: e_gen(nvars, 2 * j) for j in range(n + 1)}, rank=rank)


def _theta(nvars: int, sign: int) -> dict:
    return {k: e_gen(nvars, k) * (sign ** k) for k in range(nvars + 1)}


@lru_cache(maxsize=None)
def xi1_big(nvars: int) -> WedgeElement:
    """Xi_1 from 2 Xi_1 = Theta_+ + (-1)^{nvars-1} Theta_-."""
    tp, tm = _theta(nvars, 1), _theta(nvars, -1)
    sgn = (-1) ** (nvars - 1)
    coeffs = {k: (tp[k] + tm[k] * sgn).divexact(2) for k in tp}
    form = one_form(nvars, coeffs, rank=nvars + 1)
    return form.narrowed() if form.max_index() < nvars else form


# ---------------------------------------------------------------------------
# two-forms via exact division by X1 + X2

def _bi_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (a1, a2), ca in a.items():
        for (b1, b2), cb in b.items():
            key = (a1 + b1, a2 + b2)
            t = ca * cb
            out[key] = out[key] + t if key in out else t
    return {k: v for k, v in out.items() if v}


def _bi_add(a: dict, b: dict, scale: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        t = v * scale
        out[k] = out[k] + t if k in out else t
    return {k: v for k, v in out.items() if v}


def _outer(f: dict, g: dict) -> dict:
    """f(X1) g(X2) for one-variable coefficient maps."""
    out = {}
    for a, ca in f.items():
        for b, cb in g.items():
            t = ca * cb
            if t:
                out[(a, b)] = t
    return out


def _swap(f: dict) -> dict:
    return {(b, a): c for (a, b), c in f.items()}


def divide_by_x1_plus_x2(f: dict) -> dict:
    """Exact quotient of a polynomial in X1, X2 by X1 + X2."""
    rem = dict(f)
    quo: dict = {}
    while rem:
        a, b = max(rem, key=lambda k: (k[0], -k[1]))
        c = rem.pop((a, b))
        if a == 0:
            raise ArithmeticError("polynomial is not divisible by X1 + X2")
        quo[(a - 1, b)] = c
        key = (a - 1, b + 1)
        nv = rem[key] - c if key in rem else -c
        if nv:
            rem[key] = nv
        else:
            rem.pop(key, None)
    return {k: v for k, v in quo.items() if v}


def _two_form_from_brackets(nvars: int, sym: dict, anti: dict, anti_sign: int) -> WedgeElement:
    """Form with 2 F = (X1-X2)/(X1+X2) * sym + anti_sign * anti."""
    xm = {(1, 0): 1, (0, 1): -1}
    xp = {(1, 0): 1, (0, 1): 1}
    num = _bi_add(_bi_mul(_lift(xm, nvars), sym), _bi_mul(_lift(xp, nvars), anti), anti_sign)
    quo = divide_by_x1_plus_x2(num)
    halved = {k: v.divexact(2) for k, v in quo.items()}
    form = from_xpoly(nvars, 2, halved, rank=nvars + 2)
    if form.max_index() >= nvars:
        raise WedgeError("two-form leaves H; division produced X-degree >= nvars")
    return form.with_rank(nvars)


def _lift(f: dict, nvars: int) -> dict:
    return {k: MPoly.const(e_symbols(nvars), c) for k, c in f.items()}


def _as_map(form: WedgeElement) -> dict:
    return {i[0]: c for i, c in form.coeffs.items()}


@lru_cache(maxsize=None)
def xi_gen(nvars: int, k: int) -> WedgeElement:
    _check_index(nvars, "xi", k)
    v0 = _as_map(v0_gen(nvars))
    w = _as_map(_w(nvars, k if is_even(nvars) else k - 1))
    a = _outer(v0, w)
    b = _swap(a)
    sym = _bi_add(a, b)
    anti = _bi_add(a, b, -1)
    return _two_form_from_brackets(nvars, sym, anti, -1 if is_even(nvars) else 1)


@lru_cache(maxsize=None)
def xi2_big(nvars: int) -> WedgeElement:
    """Xi_2 from the Theta_+/Theta_- generating formula."""
    tp, tm = _theta(nvars, 1), _theta(nvars, -1)
    pp = _outer(tp, tp)
    mm = _outer(tm, tm)
    sym = _bi_add(pp, mm, -1)
    pm = _outer(tp, tm)
    anti = _bi_add(pm, _swap(pm), -1)
    return _two_form_from_brackets(nvars, sym, anti, (-1) ** nvars)


KINDS = ("v", "w", "v0", "xi", "Xi1", "Xi2")


def generator(nvars: int, kind: str, index: int | None = None) -> WedgeElement:
    """Named generator: v, w, xi take an index; v0, Xi1, Xi2 do not."""
    if kind == "v":
        return v_gen(nvars, index)
    if kind == "w":
        return w_gen(nvars, index)
    if kind == "v0":
        return v0_gen(nvars)
    if kind == "xi":
        return xi_gen(nvars, index)
    if kind == "Xi1":
        return xi1_big(nvars)
    if kind == "Xi2":
        return xi2_big(nvars)
    raise ValueError(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# expansion coefficients of xi_k in X^{2i+1} ^ X^{2j} (even case)

def xi_expansion_coeff(n: int, k: int, i: int, j: int) -> MPoly:
    """a^{(k)}_{ij} over 2n variables by the closed form with e_{2r} P sums."""
    if not 1 <= k <= n or not (0 <= i <= n - 1 and 0 <= j <= n - 1):
        raise IndexError_(f"(k,i,j)=({k},{i},{j}) out of range for n={n}")
    nv = 2 * n
    total = MPoly.zero(e_symbols(nv))
    if i <= n - k:
        m = i + j + 2
        for r in range(0, n + 1):
            s = m - r
            term = e_gen(nv, 2 * r) * p_ext(nv, k - 1, s)
            if r <= i:
                total = total + term
            if r >= j + 1:
                total = total - term
    else:
        m = i + j + 1
        for r in range(0, n + 1):
            s = m - r
            term = e_gen(nv, 2 * r) * _p(nv, k, s)
            if r <= j:
                total = total + term
            if r >= i + 1:
                total = total - term
    return total


def xi_expansion_coeff_direct(n: int, k: int, i: int, j: int) -> MPoly:
    """a^{(k)}_{ij} by the single-sum formulas before rewriting."""
    if not 1 <= k <= n or not (0 <= i <= n - 1 and 0 <= j <= n - 1):
        raise IndexError_(f"(k,i,j)=({k},{i},{j}) out of range for n={n}")
    nv = 2 * n
    total = MPoly.zero(e_symbols(nv))
    if i <= n - k:
        for r in range(0, i + 1):
            total = total + e_gen(nv, 2 * (i - r)) * _p(nv, k + r, j + 1)
    else:
        for r in range(1, n - i + 1):
            total = total - e_gen(nv, 2 * (i + r)) * _p(nv, k - r, j + 1)
    return total


def xi_from_expansion(n: int, k: int) -> WedgeElement:
    """sum_{i,j} a^{(k)}_{ij} X^{2i+1} ^ X^{2j} as a two-form."""
    nv = 2 * n
    poly: dict = {}
    for i in range(n):
        for j in range(n):
            a = xi_expansion_coeff(n, k, i, j)
            if not a:
                continue
            for key, val in (((2 * i + 1, 2 * j), a), ((2 * j, 2 * i + 1), -a)):
                poly[key] = poly[key] + val if key in poly else val
    return from_xpoly(nv, 2, {k_: v for k_, v in poly.items() if v})


# ---------------------------------------------------------------------------
# candidate bases

@dataclass(frozen=True, order=True)
class BasisIndex:
    """Label of v_I ^ w_J ^ xi_K (with a leading v_0 when ``v0`` is set)."""

    sort_key: tuple = field(init=False, repr=False, compare=True)
    I: tuple = field(compare=False)
    J: tuple = field(compare=False)
    K: tuple = field(compare=False)
    v0: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(self.I))
        object.__setattr__(self, "J", tuple(self.J))
        object.__setattr__(self, "K", tuple(self.K))
        key = (not self.v0, len(self.I), len(self.J), len(self.K), self.I, self.J, self.K)
        object.__setattr__(self, "sort_key", key)

    @property
    def ells(self) -> tuple:
        return len(self.I), len(self.J), len(self.K)

    @property
    def ell(self) -> int:
        l1, l2, l3 = self.ells
        return int(self.v0) + l1 + l2 + 2 * l3

    def is_valid(self, n: int) -> bool:
        I, J, K = self.I, self.J, self.K
        l1, l2, l3 = self.ells
        m = n - l1 - l3
        if m < 0:
            return False
        if any(a >= b for a, b in zip(I, I[1:])) or any(a >= b for a, b in zip(J, J[1:])):
            return False
        if any(a > b for a, b in zip(K, K[1:])):
            return False
        if I and not (1 <= I[0] and I[-1] <= n):
            return False
        if J and not (1 <= J[0] and J[-1] <= m):
            return False
        if K and not (1 <= K[0] and K[-1] <= m + 1):
            return False
        return True

    def label(self) -> str:
        parts = ["v0"] if self.v0 else []
        parts += [f"v{i}" for i in self.I] + [f"w{j}" for j in self.J] + [f"xi{k}" for k in self.K]
        return "^".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {"I": list(self.I), "J": list(self.J), "K": list(self.K), "v0": self.v0}

    @classmethod
    def from_json(cls, data: dict) -> "BasisIndex":
        return cls(tuple(data["I"]), tuple(data["J"]), tuple(data["K"]), bool(data.get("v0", False)))


def index_family(n: int, ell: int) -> Iterator[BasisIndex]:
    """All (I, J, K) with l1 + l2 + 2 l3 = ell, in lexicographic order."""
    for l1 in range(0, ell + 1):
        for l2 in range(0, ell - l1 + 1):
            rest = ell - l1 - l2
            if rest % 2:
                continue
            l3 = rest // 2
            m = n - l1 - l3
            if m < 0:
                continue
            for I in itertools.combinations(range(1, n + 1), l1):
                for J in itertools.combinations(range(1, m + 1), l2):
                    for K in itertools.combinations_with_replacement(range(1, m + 2), l3):
                        yield BasisIndex(I, J, K)


def basis_indices(nvars: int, ell: int) -> list:
    n = half(nvars)
    if is_even(nvars):
        return list(index_family(n, ell))
    plus = [BasisIndex(b.I, b.J, b.K, v0=True) for b in index_family(n, ell - 1)] if ell >= 1 else []
    return plus + list(index_family(n, ell))


@lru_cache(maxsize=None)
def basis_element(nvars: int, idx: BasisIndex) -> WedgeElement:
    forms = []
    if idx.v0:
        if is_even(nvars):
            raise IndexError_("v0 is not a basis generator for an even variable count")
        forms.append(v0_gen(nvars))
    forms += [v_gen(nvars, i) for i in idx.I]
    forms += [w_gen(nvars, j) for j in idx.J]
    forms += [xi_gen(nvars, k) for k in idx.K]
    if len(forms) == 1:
        return forms[0]
    if len(forms) == 2:
        return forms[0] ^ forms[1]
    return wedge_all(forms, nvars)


def enumerate_basis(nvars: int, ell: int) -> list:
    """Pairs (BasisIndex, element) of the candidate basis of U_{nvars, ell}."""
    if ell < 0 or ell > nvars:
        return []
    return [(idx, basis_element(nvars, idx)) for idx in basis_indices(nvars, ell)]


def generator_deg1(nvars: int, kind: str, index: int | None = None) -> int:
    """Tabulated deg_1 of the named generators."""
    even = is_even(nvars)
    if kind == "v0":
        return 0
    if kind == "v":
        return 0 if index == 0 else 2 * index - 1
    if kind == "w":
        return 2 * index - 2 if even else 2 * index
    if kind == "xi":
        return 2 * index - 2
    raise ValueError(f"no tabulated degree for {kind}")


def index_deg1(nvars: int, idx: BasisIndex) -> int:
    d = sum(generator_deg1(nvars, "v", i) for i in idx.I)
    d += sum(generator_deg1(nvars, "w", j) for j in idx.J)
    d += sum(generator_deg1(nvars, "xi", k) for k in idx.K)
    return d
