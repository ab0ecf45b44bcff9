"""Exterior powers of the free module H = sum_j R X^j.

An ell-form is stored as a map from strictly increasing index tuples
``(i_1 < ... < i_ell)`` to E-REP coefficients.  Via

    X^{i_1} ^ ... ^ X^{i_ell}  <->  sum_sigma sgn(sigma) X_1^{i_sigma(1)} ... X_ell^{i_sigma(ell)}

an ell-form is the same thing as an antisymmetric polynomial in X_1..X_ell;
the coefficient of the monomial X_1^{a_1}...X_ell^{a_ell} with a strictly
increasing exponent vector is the stored coefficient of that tuple.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .polyring import MPoly, e_symbols, e_weights


class WedgeError(ValueError):
    pass


def sort_sign(seq: Iterable[int]) -> tuple[int, tuple]:
    """Sign of the sorting permutation and the sorted tuple (sign 0 on repeats)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                return 0, tuple(sorted(seq))
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


class WedgeElement:
    """An ell-form over H of rank ``rank`` with coefficients in R_nvars.

    ``rank`` is the number of X-powers available (indices 0..rank-1).  For
    genuine elements of the exterior power rank equals ``nvars``; scaffolding
    elements such as v_0 live in a widened module of rank ``nvars + 1``.
    """

    __slots__ = ("nvars", "rank", "ell", "coeffs")

    def __init__(self, nvars: int, ell: int, coeffs: Mapping[tuple, MPoly] | None = None,
                 rank: int | None = None):
        self.nvars = nvars
        self.rank = nvars if rank is None else rank
        self.ell = ell
        syms = e_symbols(nvars)
        clean = {}
        for idx, c in (coeffs or {}).items():
            if not c:
                continue
            idx = tuple(idx)
            if len(idx) != ell:
                raise WedgeError(f"tuple {idx} has wrong length for an {ell}-form")
            if any(idx[a] >= idx[a + 1] for a in range(ell - 1)):
                raise WedgeError(f"tuple {idx} is not strictly increasing")
            if ell and (idx[0] < 0 or idx[-1] >= self.rank):
                raise WedgeError(f"tuple {idx} out of range for rank {self.rank}")
            if isinstance(c, int):
                c = MPoly.const(syms, c)
            elif c.symbols is not syms:
                c = c.extend(syms)
            if c:
                clean[idx] = c
        self.coeffs = clean

    # -- structure --------------------------------------------------------
    @property
    def widened(self) -> bool:
        return self.rank > self.nvars

    def max_index(self) -> int:
        return max((idx[-1] for idx in self.coeffs if idx), default=-1)

    def narrowed(self) -> "WedgeElement":
        """Same element in the rank-``nvars`` module; fails if it does not fit."""
        if self.max_index() >= self.nvars:
            raise WedgeError("element needs X-degree >= nvars and does not lie in H")
        return WedgeElement(self.nvars, self.ell, self.coeffs, rank=self.nvars)

    def with_rank(self, rank: int) -> "WedgeElement":
        if self.max_index() >= rank:
            raise WedgeError("element does not fit into the requested rank")
        return WedgeElement(self.nvars, self.ell, self.coeffs, rank=rank)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check(self, other: "WedgeElement"):
        if self.nvars != other.nvars:
            raise WedgeError("forms over different coefficient rings")

    def __eq__(self, other) -> bool:
        if not isinstance(other, WedgeElement):
            return NotImplemented
        return self.nvars == other.nvars and self.ell == other.ell and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, self.ell, frozenset(self.coeffs)))

    # -- module operations ------------------------------------------------
    def __add__(self, other: "WedgeElement") -> "WedgeElement":
        self._check(other)
        if self.ell != other.ell:
            raise WedgeError("cannot add forms of different degree")
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out[idx] + c if idx in out else c
        return WedgeElement(self.nvars, self.ell, out, rank=max(self.rank, other.rank))

    def __neg__(self) -> "WedgeElement":
        return WedgeElement(self.nvars, self.ell, {i: -c for i, c in self.coeffs.items()}, rank=self.rank)

    def __sub__(self, other: "WedgeElement") -> "WedgeElement":
        return self + (-other)

    def scale(self, f: MPoly | int) -> "WedgeElement":
        """Multiply every coefficient by a ring element."""
        return WedgeElement(self.nvars, self.ell, {i: c * f for i, c in self.coeffs.items()}, rank=self.rank)

    def __mul__(self, f):
        if isinstance(f, (int, MPoly)):
            return self.scale(f)
        return NotImplemented

    __rmul__ = __mul__

    def __xor__(self, other: "WedgeElement") -> "WedgeElement":
        return wedge_product(self, other)

    # -- reading ----------------------------------------------------------
    def coefficient(self, idx: Iterable[int]) -> MPoly:
        return coefficient(self, idx)

    def __repr__(self) -> str:
        body = ", ".join(f"{list(i)}: {c}" for i, c in sorted(self.coeffs.items()))
        return f"WedgeElement(nvars={self.nvars}, ell={self.ell}, {{{body}}})"

    def to_json(self) -> dict:
        data = {
            "n": self.rank,
            "ell": self.ell,
            "terms": [[list(i), c.to_json()] for i, c in sorted(self.coeffs.items())],
        }
        if self.widened:
            data["nvars"] = self.nvars
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "WedgeElement":
        nvars = data.get("nvars", data["n"])
        coeffs = {tuple(i): MPoly.from_json(c) for i, c in data["terms"]}
        return cls(nvars, data["ell"], coeffs, rank=data["n"])


def basis_form(nvars: int, idx: Iterable[int], rank: int | None = None) -> WedgeElement:
    """The form X^{i_1} ^ ... ^ X^{i_ell} (signed after sorting)."""
    sign, tup = sort_sign(idx)
    syms = e_symbols(nvars)
    if not sign:
        return WedgeElement(nvars, len(tup), {}, rank=rank)
    return WedgeElement(nvars, len(tup), {tup: MPoly.const(syms, sign)}, rank=rank)


def one_form(nvars: int, coeffs: Mapping[int, MPoly], rank: int | None = None) -> WedgeElement:
    """sum_j c_j X^j as a 1-form."""
    return WedgeElement(nvars, 1, {(j,): c for j, c in coeffs.items()}, rank=rank)


def unit(nvars: int) -> WedgeElement:
    """The 0-form 1."""
    return WedgeElement(nvars, 0, {(): MPoly.const(e_symbols(nvars), 1)})


def wedge_product(u: WedgeElement, v: WedgeElement) -> WedgeElement:
    u._check(v)
    rank = max(u.rank, v.rank)
    out: dict = {}
    for iu, cu in u.coeffs.items():
        for iv, cv in v.coeffs.items():
            sign, tup = sort_sign(iu + iv)
            if not sign:
                continue
            term = cu * cv
            if sign < 0:
                term = -term
            out[tup] = out[tup] + term if tup in out else term
    return WedgeElement(u.nvars, u.ell + v.ell, out, rank=rank)


def wedge_all(forms: Iterable[WedgeElement], nvars: int) -> WedgeElement:
    result = unit(nvars)
    for f in forms:
        result = wedge_product(result, f)
    return result


def coefficient(P: WedgeElement, idx: Iterable[int]) -> MPoly:
    """Antisymmetric extension of the stored coefficients."""
    idx = tuple(idx)
    if len(idx) != P.ell:
        raise WedgeError("tuple length does not match degree")
    if any(i < 0 or i >= P.rank for i in idx):
        raise WedgeError(f"index out of range 0..{P.rank - 1}")
    sign, tup = sort_sign(idx)
    syms = e_symbols(P.nvars)
    if not sign:
        return MPoly.zero(syms)
    c = P.coeffs.get(tup)
    if c is None:
        return MPoly.zero(syms)
    return c if sign > 0 else -c


def from_antisymmetric(nvars: int, ell: int, family: Mapping[tuple, MPoly],
                       rank: int | None = None) -> WedgeElement:
    """Build a form from the coefficients of an antisymmetric family.

    ``family`` may list any tuples; entries on strictly increasing tuples are
    kept and the others are checked for antisymmetric consistency.
    """
    out = {}
    for idx, c in family.items():
        sign, tup = sort_sign(idx)
        if not sign:
            if c:
                raise WedgeError(f"nonzero coefficient on repeated tuple {idx}")
            continue
        val = c if sign > 0 else -c
        if tup in out and out[tup] != val:
            raise WedgeError(f"family is not antisymmetric at {idx}")
        out[tup] = val
    return WedgeElement(nvars, ell, out, rank=rank)


def from_xpoly(nvars: int, ell: int, poly: Mapping[tuple, MPoly], rank: int | None = None,
               check: bool = True) -> WedgeElement:
    """Form represented by an antisymmetric polynomial in X_1..X_ell.

    ``poly`` maps exponent vectors of (X_1..X_ell) to coefficients.  The
    coefficient of X^{a_1}^...^X^{a_ell} for a_1 < ... < a_ell is read off at
    the monomial X_1^{a_1}...X_ell^{a_ell}.  With ``check`` the whole
    polynomial is compared to the antisymmetrization of the result.
    """
    out = {}
    for exp, c in poly.items():
        if c and all(exp[a] < exp[a + 1] for a in range(ell - 1)):
            out[tuple(exp)] = c
    form = WedgeElement(nvars, ell, out, rank=rank)
    if check:
        for exp, c in poly.items():
            if not c:
                continue
            expect = coefficient(form, exp) if max(exp, default=0) < form.rank else None
            if expect is None or expect != c:
                raise WedgeError(f"polynomial is not antisymmetric at {exp}")
    return form


def deg1(P: WedgeElement) -> int:
    """deg_1 = (x-degree of the coefficient) - (sum of X-exponents).

    X carries degree -1 and each x_j degree +1, so a term c X^{i_1}^...^X^{i_ell}
    has degree deg_x(c) - sum(i).  Raises on zero or inhomogeneous input.
    """
    if not P.coeffs:
        raise WedgeError("deg1 of the zero form is undefined")
    found = set()
    for idx, c in P.coeffs.items():
        degs = c.weighted_degrees(e_weights(c.symbols))
        found.update(d - sum(idx) for d in degs)
    if len(found) != 1:
        raise WedgeError(f"form is not homogeneous (degrees {sorted(found)})")
    return found.pop()


def deg2(P: WedgeElement) -> Fraction:
    """deg_2 = N^2/4 + deg_1 as an exact rational."""
    return Fraction(P.nvars ** 2, 4) + deg1(P)
