"""Sparse exact multivariate polynomials over the integers.

Polynomials are stored as a map from exponent tuples to nonzero ``int``
coefficients over an explicit tuple of symbol names.  Two coordinate
systems are used throughout the package:

* X-REP: symbols ``x1..xn`` (the variables themselves),
* E-REP: symbols ``e1..en`` (elementary symmetric generators), possibly with
  extra symbols such as ``x`` adjoined after the bar map.

Symmetric functions are always built and stored in E-REP; X-REP is produced
on demand by :func:`to_x_rep`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence


class ArityError(ValueError):
    """A polynomial was used with the wrong number of variables."""


class DivisionError(ArithmeticError):
    """Exact polynomial division left a remainder."""


@lru_cache(maxsize=None)
def _intern(symbols: tuple) -> tuple:
    return symbols


def e_symbols(n: int) -> tuple:
    return _intern(tuple(f"e{k}" for k in range(1, n + 1)))


def x_symbols(n: int) -> tuple:
    return _intern(tuple(f"x{k}" for k in range(1, n + 1)))


def bar_symbols(n: int) -> tuple:
    """Symbols of the image of the bar map on E-REP over ``n`` variables."""
    return _intern(e_symbols(n - 2) + ("x",))


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple([i + j for i, j in zip(a, b)])


class MPoly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("symbols", "terms", "_hash")

    def __init__(self, symbols: Sequence[str], terms: Mapping[tuple, int] | None = None):
        self.symbols = _intern(tuple(symbols))
        nsym = len(self.symbols)
        clean = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    if len(exp) != nsym:
                        raise ArityError(f"exponent {exp} does not match symbols {self.symbols}")
                    clean[tuple(exp)] = int(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, symbols: tuple, terms: dict) -> "MPoly":
        # trusted constructor: symbols already interned, no zero coefficients
        obj = cls.__new__(cls)
        obj.symbols = symbols
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, symbols: Sequence[str]) -> "MPoly":
        return cls._raw(_intern(tuple(symbols)), {})

    @classmethod
    def const(cls, symbols: Sequence[str], c: int) -> "MPoly":
        symbols = _intern(tuple(symbols))
        return cls._raw(symbols, {(0,) * len(symbols): int(c)} if c else {})

    @classmethod
    def gen(cls, symbols: Sequence[str], name: str, power: int = 1) -> "MPoly":
        symbols = _intern(tuple(symbols))
        exp = [0] * len(symbols)
        exp[symbols.index(name)] = power
        return cls._raw(symbols, {tuple(exp): 1})

    # -- basic protocol ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.symbols), 0)

    def _align(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        if self.symbols is other.symbols:
            return self, other
        if other.is_constant():
            return self, MPoly.const(self.symbols, other.constant_value())
        if self.is_constant():
            return MPoly.const(other.symbols, self.constant_value()), other
        merged = list(self.symbols)
        for s in other.symbols:
            if s not in merged:
                merged.append(s)
        return self.extend(merged), other.extend(merged)

    def extend(self, symbols: Sequence[str]) -> "MPoly":
        """Re-express over a superset of the current symbols."""
        symbols = _intern(tuple(symbols))
        if symbols is self.symbols:
            return self
        pos = [symbols.index(s) for s in self.symbols]
        out = {}
        width = len(symbols)
        for exp, c in self.terms.items():
            new = [0] * width
            for p, a in zip(pos, exp):
                new[p] = a
            out[tuple(new)] = c
        return MPoly._raw(symbols, out)

    def restrict(self, symbols: Sequence[str]) -> "MPoly":
        """Drop symbols that do not occur; error if a dropped one occurs."""
        symbols = _intern(tuple(symbols))
        pos = []
        for s in symbols:
            pos.append(self.symbols.index(s) if s in self.symbols else None)
        keep = {p for p in pos if p is not None}
        out = {}
        for exp, c in self.terms.items():
            for i, a in enumerate(exp):
                if a and i not in keep:
                    raise ArityError(f"symbol {self.symbols[i]} occurs and cannot be dropped")
            out[tuple(exp[p] if p is not None else 0 for p in pos)] = c
        return MPoly._raw(symbols, out)

    def used_symbols(self) -> tuple:
        used = set()
        for exp in self.terms:
            used.update(i for i, a in enumerate(exp) if a)
        return tuple(s for i, s in enumerate(self.symbols) if i in used)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other if self.terms else other == 0
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.symbols is other.symbols:
            return self.terms == other.terms
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            used = self.used_symbols()
            self._hash = hash((used, frozenset(self.restrict(used).terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.symbols, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "MPoly":
        if isinstance(other, int):
            other = MPoly.const(self.symbols, other)
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly._raw(a.symbols, out)

    __radd__ = __add__

    def __sub__(self, other) -> "MPoly":
        if isinstance(other, int):
            other = MPoly.const(self.symbols, other)
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, int):
            if not other:
                return MPoly._raw(self.symbols, {})
            return MPoly._raw(self.symbols, {e: c * other for e, c in self.terms.items()})
        a, b = self._align(other)
        return MPoly._raw(a.symbols, mul_terms(a.terms, b.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.symbols, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale_monomial(self, exp: tuple, c: int = 1) -> "MPoly":
        """Multiply by ``c`` times the monomial with exponent ``exp``."""
        return MPoly._raw(self.symbols, {_add_exp(e, exp): v * c for e, v in self.terms.items()})

    # -- degrees and order ------------------------------------------------
    def weighted_degree(self, weights: Sequence[int]) -> int | None:
        """Maximum weighted degree, or ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(w * a for w, a in zip(weights, e)) for e in self.terms)

    def weighted_degrees(self, weights: Sequence[int]) -> set:
        return {sum(w * a for w, a in zip(weights, e)) for e in self.terms}

    def sorted_terms(self) -> list:
        """Terms in the canonical (graded lexicographic, descending) order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_term(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    # -- exact division ---------------------------------------------------
    def divexact(self, other: "MPoly") -> "MPoly":
        """Quotient ``self / other``; raises :class:`DivisionError` if inexact."""
        if isinstance(other, int):
            out = {}
            for e, c in self.terms.items():
                q, r = divmod(c, other)
                if r:
                    raise DivisionError(f"coefficient {c} not divisible by {other}")
                out[e] = q
            return MPoly._raw(self.symbols, out)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        a, b = self._align(other)
        if b.is_constant():
            return a.divexact(b.constant_value())
        return MPoly._raw(a.symbols, _divexact_terms(a.terms, b.terms))

    # -- substitution and evaluation -------------------------------------
    def substitute(self, images: Mapping[str, "MPoly | int"], symbols: Sequence[str]) -> "MPoly":
        """Ring homomorphism sending each symbol to the given image.

        Symbols missing from ``images`` are kept as themselves and must belong
        to the target ``symbols``.
        """
        target = _intern(tuple(symbols))
        gens = []
        for s in self.symbols:
            img = images.get(s)
            if img is None:
                img = MPoly.gen(target, s) if s in target else None
                if img is None:
                    raise ArityError(f"no image for symbol {s}")
            elif isinstance(img, int):
                img = MPoly.const(target, img)
            else:
                img = img.extend(target) if img.symbols is not target else img
            gens.append(img)
        power_cache: dict = {}

        def power(i: int, a: int) -> dict:
            key = (i, a)
            if key not in power_cache:
                if a == 1:
                    power_cache[key] = gens[i].terms
                else:
                    power_cache[key] = mul_terms(power(i, a - 1), gens[i].terms)
            return power_cache[key]

        one = (0,) * len(target)
        acc: dict = {}
        for exp, c in self.terms.items():
            cur = {one: c}
            for i, a in enumerate(exp):
                if a:
                    cur = mul_terms(cur, power(i, a))
                    if not cur:
                        break
            for e, v in cur.items():
                w = acc.get(e, 0) + v
                if w:
                    acc[e] = w
                else:
                    acc.pop(e, None)
        return MPoly._raw(target, acc)

    def evaluate(self, values: Mapping[str, Fraction | int] | Sequence) -> Fraction | int:
        """Exact value at a point given per symbol (mapping or sequence)."""
        if not isinstance(values, Mapping):
            values = list(values)
            if len(values) != len(self.symbols):
                raise ArityError(f"point has {len(values)} entries, polynomial has {len(self.symbols)} symbols")
            vals = values
        else:
            vals = []
            for s in self.symbols:
                if s not in values:
                    raise ArityError(f"no value for symbol {s}")
                vals.append(values[s])
        total = 0
        pw = [dict() for _ in vals]
        for exp, c in self.terms.items():
            t = c
            for i, a in enumerate(exp):
                if a:
                    p = pw[i].get(a)
                    if p is None:
                        p = vals[i] ** a
                        pw[i][a] = p
                    t = t * p
            total += t
        return total

    # -- display / serialization -----------------------------------------
    def __repr__(self) -> str:
        return f"MPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                s if a == 1 else f"{s}^{a}" for s, a in zip(self.symbols, exp) if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "symbols": list(self.symbols),
            "terms": [[str(c), list(e)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MPoly":
        symbols = tuple(data["symbols"])
        return cls(symbols, {tuple(e): int(c) for c, e in data["terms"]})


def mul_terms(a: Mapping[tuple, int], b: Mapping[tuple, int]) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([i + j for i, j in zip(ea, eb)])
            v = get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def _divexact_terms(a: Mapping[tuple, int], b: Mapping[tuple, int]) -> dict:
    def key(e):
        return (sum(e), e)

    lead_b = max(b, key=key)
    cb = b[lead_b]
    rem = dict(a)
    quo = {}
    while rem:
        lead = max(rem, key=key)
        diff = tuple(i - j for i, j in zip(lead, lead_b))
        if min(diff) < 0:
            raise DivisionError("leading monomial not divisible")
        q, r = divmod(rem[lead], cb)
        if r:
            raise DivisionError("leading coefficient not divisible")
        quo[diff] = q
        for e, c in b.items():
            m = tuple(i + j for i, j in zip(e, diff))
            v = rem.get(m, 0) - q * c
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return quo


# ---------------------------------------------------------------------------
# symmetric functions

def elementary(n: int, k: int) -> MPoly:
    """The elementary symmetric polynomial e_k of x1..xn in X-REP."""
    if n < 0:
        raise ArityError("negative variable count")
    syms = x_symbols(n)
    if k < 0 or k > n:
        return MPoly.zero(syms)
    terms = {}
    for combo in itertools.combinations(range(n), k):
        exp = [0] * n
        for i in combo:
            exp[i] = 1
        terms[tuple(exp)] = 1
    return MPoly._raw(syms, terms)


def e_gen(n: int, k: int) -> MPoly:
    """The generator e_k in E-REP over n variables (0 outside 0..n, 1 at k=0)."""
    syms = e_symbols(n)
    if k == 0:
        return MPoly.const(syms, 1)
    if k < 0 or k > n:
        return MPoly.zero(syms)
    return MPoly.gen(syms, f"e{k}")


def e_index(symbol: str) -> int | None:
    if symbol.startswith("e") and symbol[1:].isdigit():
        return int(symbol[1:])
    return None


def to_x_rep(p: MPoly, n: int) -> MPoly:
    """Expand e_k -> e_k(x1..xn); other symbols are carried along."""
    images = {}
    target = list(x_symbols(n))
    for s in p.symbols:
        k = e_index(s)
        if k is None:
            if s not in target:
                target.append(s)
            continue
        if k > n:
            if any(exp[p.symbols.index(s)] for exp in p.terms):
                raise ArityError(f"{s} exceeds variable count {n}")
            images[s] = 0
            continue
        images[s] = elementary(n, k)
    return p.substitute(images, target)


def to_e_rep(f: MPoly, n: int | None = None) -> MPoly:
    """Write a symmetric X-REP polynomial in terms of e1..en.

    Uses the leading-term algorithm in lexicographic order; raises
    ``ValueError`` if the input is not symmetric.
    """
    if n is None:
        n = len(f.symbols)
    f = f.extend(x_symbols(n)) if f.symbols is not x_symbols(n) else f
    esyms = e_symbols(n)
    rem = dict(f.terms)
    out: dict = {}
    ecache = {k: elementary(n, k).terms for k in range(1, n + 1)}
    while rem:
        lead = max(rem)
        if any(lead[i] < lead[i + 1] for i in range(n - 1)):
            raise ValueError("polynomial is not symmetric")
        c = rem[lead]
        exps = [lead[i] - (lead[i + 1] if i + 1 < n else 0) for i in range(n)]
        out[tuple(exps)] = out.get(tuple(exps), 0) + c
        prod = {(0,) * n: c}
        for k, a in enumerate(exps, start=1):
            for _ in range(a):
                prod = mul_terms(prod, ecache[k])
        for e, v in prod.items():
            w = rem.get(e, 0) - v
            if w:
                rem[e] = w
            else:
                rem.pop(e, None)
    return MPoly(esyms, out)


def e_weights(symbols: Sequence[str]) -> list:
    """x-degree weight of each symbol: e_k has weight k, every x-like symbol 1."""
    w = []
    for s in symbols:
        k = e_index(s)
        w.append(k if k is not None else 1)
    return w


def x_degree(p: MPoly) -> int | None:
    """Degree in the x variables (e_k counted with weight k)."""
    return p.weighted_degree(e_weights(p.symbols))


def is_homogeneous(p: MPoly) -> bool:
    return len(p.weighted_degrees(e_weights(p.symbols))) <= 1


# ---------------------------------------------------------------------------
# the bar map  f(x1..xn) -> f(x1..x_{n-2}, x, -x)

@lru_cache(maxsize=None)
def _bar_images(n: int) -> dict:
    target = bar_symbols(n)
    lower = e_symbols(n - 2)
    x2 = MPoly.gen(target, "x", 2)

    def low(k):
        if k == 0:
            return MPoly.const(target, 1)
        if k < 0 or k > n - 2:
            return MPoly.zero(target)
        return MPoly.gen(target, lower[k - 1])

    return {f"e{k}": low(k) - x2 * low(k - 2) for k in range(1, n + 1)}


def bar(p: MPoly, n: int | None = None) -> MPoly:
    """Apply x_{n-1} -> x, x_n -> -x to an E-REP polynomial over n variables.

    Uses the generator rule bar(e_k) = e'_k - x^2 e'_{k-2}, where e' are the
    elementary symmetric polynomials of the first n-2 variables.
    """
    if n is None:
        n = len(p.symbols)
    if n < 2:
        raise ArityError("bar map needs at least two variables")
    esyms = e_symbols(n)
    if p.symbols is not esyms:
        p = p.extend(esyms) if set(p.symbols) <= set(esyms) else p
        if p.symbols is not esyms:
            raise ArityError(f"bar expects pure E-REP over {n} variables, got {p.symbols}")
    return p.substitute(_bar_images(n), bar_symbols(n))


def bar_x(f: MPoly, n: int) -> MPoly:
    """The bar map applied directly in X-REP: x_{n-1} -> x, x_n -> -x."""
    xs = x_symbols(n)
    target = x_symbols(n - 2) + ("x",)
    images = {xs[n - 2]: MPoly.gen(target, "x"), xs[n - 1]: -MPoly.gen(target, "x")}
    for s in xs[: n - 2]:
        images[s] = MPoly.gen(target, s)
    return f.extend(xs).substitute(images, target)


def delta_plus(n: int) -> MPoly:
    """Product of (x_i + x_j) over i < j, in X-REP."""
    if n < 1:
        raise ArityError("delta_plus needs n >= 1")
    syms = x_symbols(n)
    result = MPoly.const(syms, 1)
    for i, j in itertools.combinations(range(n), 2):
        result = result * (MPoly.gen(syms, syms[i]) + MPoly.gen(syms, syms[j]))
    return result


@lru_cache(maxsize=None)
def delta_plus_e(n: int) -> MPoly:
    """Delta^+_n in E-REP via the dual Jacobi-Trudi determinant det(e_{n-2i+j}).

    The staircase partition is self-conjugate, so the Schur function
    s_(n-1,...,1,0) = prod_{i<j}(x_i + x_j) is the (n-1)x(n-1) determinant of
    elementary symmetric polynomials.
    """
    from .linalg import det_bareiss

    if n < 1:
        raise ArityError("delta_plus needs n >= 1")
    m = n - 1
    if m == 0:
        return MPoly.const(e_symbols(n), 1)
    rows = [[e_gen(n, n - 2 * i + j) for j in range(1, m + 1)] for i in range(1, m + 1)]
    return det_bareiss(rows, MPoly.zero(e_symbols(n)), MPoly.const(e_symbols(n), 1))


def e_values(point: Sequence) -> list:
    """Values e_1..e_n of the elementary symmetric functions at a point."""
    coeffs = [1]
    for v in point:
        nxt = coeffs + [0]
        for k in range(len(coeffs)):
            nxt[k + 1] += coeffs[k] * v
        coeffs = nxt
    return coeffs[1:]


def eval_e(p: MPoly, point: Sequence, n: int | None = None) -> Fraction | int:
    """Evaluate an E-REP polynomial at an x-point (one value per variable)."""
    if n is None:
        n = len(point)
    if len(point) != n:
        raise ArityError("point length does not match variable count")
    ev = e_values(point)
    values = {}
    for s in p.symbols:
        k = e_index(s)
        if k is None:
            raise ArityError(f"symbol {s} has no value at an x-point")
        values[s] = ev[k - 1] if 1 <= k <= n else 0
    return p.evaluate(values)


def specialize_e(p: MPoly, assignment: Mapping[str, Fraction | int]) -> MPoly | Fraction | int:
    """Substitute values for some symbols.

    Returns an ``MPoly`` over the remaining symbols, or a number when every
    symbol occurring in ``p`` is assigned.
    """
    remaining = tuple(s for s in p.symbols if s not in assignment)
    used = set(p.used_symbols())
    if not used - set(assignment):
        vals = {s: assignment.get(s, 0) for s in p.symbols}
        return p.evaluate(vals)
    images = {}
    for s, v in assignment.items():
        if s not in p.symbols:
            continue
        if Fraction(v).denominator != 1:
            raise ValueError("partial specialization needs integer values")
        images[s] = int(v)
    return p.substitute(images, remaining)


def special_assignment(nvars: int) -> dict:
    """The collapsing specialization used for the independence argument.

    Even ``nvars = 2n``: e_1 = 1, e_{2n} = -1, all other e_j = 0.
    Odd ``nvars = 2n+1``: e_{2n+1} = 1, e_{2n} = -1, all other e_j = 0.
    """
    vals = {f"e{k}": 0 for k in range(1, nvars + 1)}
    if nvars % 2 == 0:
        vals["e1"] = 1
        vals[f"e{nvars}"] = -1
    else:
        vals[f"e{nvars}"] = 1
        if nvars > 1:
            vals[f"e{nvars - 1}"] = -1
    return vals


def monomials_of_weight(nvars: int, d: int) -> list:
    """Exponent vectors over e1..en with sum k*a_k == d (partitions of d, parts <= n)."""
    out = []

    def rec(k: int, left: int, acc: list):
        if k == 0:
            if left == 0:
                out.append(tuple(acc))
            return
        for a in range(left // k, -1, -1):
            acc[k - 1] = a
            rec(k - 1, left - a * k, acc)
        acc[k - 1] = 0

    if d < 0:
        return []
    rec(nvars, d, [0] * nvars)
    return out
