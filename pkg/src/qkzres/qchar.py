"""Truncated q-series with exact integer coefficients, and the character identities.

A series is q^offset * sum_k c_k q^k.  ``offset`` is an exact rational so the
quarter-integer prefactors of the odd case need no fractional arithmetic in
the coefficient array.  ``cutoff`` is the largest k that is known; ``None``
marks an exact polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


class SeriesError(ValueError):
    pass


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class QSeries:
    __slots__ = ("offset", "coeffs", "cutoff")

    def __init__(self, coeffs: Iterable[int] = (), offset=0, cutoff: int | None = None):
        self.offset = Fraction(offset)
        c = [int(x) for x in coeffs]
        if cutoff is None:
            _trim(c)
        else:
            if cutoff < -1:
                raise SeriesError("cutoff must be >= -1")
            c = (c + [0] * (cutoff + 1 - len(c)))[: cutoff + 1]
        self.coeffs = c
        self.cutoff = cutoff

    # -- constructors -----------------------------------------------------
    @classmethod
    def one(cls, cutoff: int | None = None) -> "QSeries":
        return cls([1], 0, cutoff)

    @classmethod
    def monomial(cls, exponent, coeff: int = 1, cutoff: int | None = None) -> "QSeries":
        return cls([coeff], exponent, cutoff)

    @property
    def exact(self) -> bool:
        return self.cutoff is None

    @property
    def precision(self) -> Fraction | None:
        """Largest absolute exponent whose coefficient is known."""
        return None if self.cutoff is None else self.offset + self.cutoff

    def coefficient(self, exponent) -> int:
        k = Fraction(exponent) - self.offset
        if k.denominator != 1:
            return 0
        k = int(k)
        if self.cutoff is not None and k > self.cutoff:
            raise SeriesError(f"q^{exponent} lies beyond the truncation")
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def terms(self) -> list:
        """(absolute exponent, coefficient) pairs with nonzero coefficient."""
        return [(self.offset + k, c) for k, c in enumerate(self.coeffs) if c]

    # -- alignment --------------------------------------------------------
    def _align(self, other: "QSeries") -> tuple[Fraction, int | None, list, list]:
        shift = self.offset - other.offset
        if shift.denominator != 1:
            raise SeriesError("series have incompatible fractional offsets")
        base = min(self.offset, other.offset)
        precs = [p for p in (self.precision, other.precision) if p is not None]
        cutoff = None if not precs else int(min(precs) - base)
        a = [0] * int(self.offset - base) + self.coeffs
        b = [0] * int(other.offset - base) + other.coeffs
        return base, cutoff, a, b

    def truncate(self, cutoff: int) -> "QSeries":
        if self.cutoff is not None and cutoff > self.cutoff:
            raise SeriesError("cannot extend a truncated series")
        return QSeries(self.coeffs, self.offset, cutoff)

    def normalized(self) -> "QSeries":
        """Move the offset onto the lowest nonzero term."""
        k = next((i for i, c in enumerate(self.coeffs) if c), None)
        if k is None or k == 0:
            return self
        cut = None if self.cutoff is None else self.cutoff - k
        return QSeries(self.coeffs[k:], self.offset + k, cut)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = QSeries([other])
        base, cutoff, a, b = self._align(other)
        size = max(len(a), len(b))
        out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)]
        return QSeries(out, base, cutoff)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.offset, self.cutoff)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries([c * other for c in self.coeffs], self.offset, self.cutoff)
        if not isinstance(other, QSeries):
            return NotImplemented
        cuts = [c for c in (self.cutoff, other.cutoff) if c is not None]
        cutoff = min(cuts) if cuts else None
        limit = len(self.coeffs) + len(other.coeffs) - 1
        if cutoff is not None:
            limit = min(limit, cutoff + 1)
        out = [0] * max(limit, 0)
        for i, a in enumerate(self.coeffs):
            if not a or i >= limit:
                continue
            for j, b in enumerate(other.coeffs[: limit - i]):
                if b:
                    out[i + j] += a * b
        return QSeries(out, self.offset + other.offset, cutoff)

    __rmul__ = __mul__

    def shift(self, exponent) -> "QSeries":
        """Multiply by q^exponent."""
        return QSeries(self.coeffs, self.offset + Fraction(exponent), self.cutoff)

    def inverse(self, cutoff: int) -> "QSeries":
        """Power-series inverse; the lowest coefficient must be +-1."""
        s = self.normalized()
        if not s.coeffs or s.coeffs[0] not in (1, -1):
            raise SeriesError("inverse needs lowest coefficient +-1")
        if s.cutoff is not None:
            cutoff = min(cutoff, s.cutoff)
        lead = s.coeffs[0]
        inv = [0] * (cutoff + 1)
        for k in range(cutoff + 1):
            acc = 1 if k == 0 else 0
            for j in range(1, min(k, len(s.coeffs) - 1) + 1):
                acc -= s.coeffs[j] * inv[k - j]
            inv[k] = acc * lead
        return QSeries(inv, -s.offset, cutoff)

    def divide(self, other: "QSeries", cutoff: int | None = None) -> "QSeries":
        cut = cutoff if cutoff is not None else (self.cutoff if self.cutoff is not None else other.cutoff)
        if cut is None:
            raise SeriesError("dividing exact polynomials needs a cutoff")
        return self * other.inverse(cut)

    # -- comparison / io --------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        try:
            base, cutoff, a, b = self._align(other)
        except SeriesError:
            return False
        if self.precision != other.precision:
            return False
        size = max(len(a), len(b))
        a += [0] * (size - len(a))
        b += [0] * (size - len(b))
        return a == b

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality on the common range of known coefficients."""
        base, cutoff, a, b = self._align(other)
        size = max(len(a), len(b)) if cutoff is None else cutoff + 1
        a = (a + [0] * size)[:size]
        b = (b + [0] * size)[:size]
        return a == b

    def __hash__(self):
        s = self.normalized()
        return hash((s.offset, tuple(s.coeffs), s.precision))

    def __repr__(self) -> str:
        return f"QSeries(offset={self.offset}, cutoff={self.cutoff}, coeffs={self.coeffs})"

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms():
            mono = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        body = " + ".join(parts).replace("+ -", "- ") or "0"
        return body if self.exact else f"{body} + O(q^{self.precision + 1})"

    def to_json(self) -> dict:
        return {"offset": str(self.offset), "cutoff": self.cutoff, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: Mapping) -> "QSeries":
        return cls(data["coeffs"], Fraction(data["offset"]), data["cutoff"])


class ZLaurent:
    """Finite Laurent polynomial in z with QSeries coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, QSeries] | None = None):
        self.terms = {m: s for m, s in (terms or {}).items()}

    def __add__(self, other: "ZLaurent") -> "ZLaurent":
        out = dict(self.terms)
        for m, s in other.terms.items():
            out[m] = out[m] + s if m in out else s
        return ZLaurent(out)

    def times_z_poly(self, poly: Mapping[int, int]) -> "ZLaurent":
        out: dict = {}
        for m, s in self.terms.items():
            for k, c in poly.items():
                t = s * c
                out[m + k] = out[m + k] + t if m + k in out else t
        return ZLaurent(out)

    def coefficient(self, m: int) -> QSeries | None:
        return self.terms.get(m)

    def to_json(self) -> dict:
        return {str(m): s.to_json() for m, s in sorted(self.terms.items())}


# ---------------------------------------------------------------------------
# q-binomials

def _padd(a: Sequence[int], b: Sequence[int], shift: int = 0) -> list:
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for i, c in enumerate(b):
        out[i + shift] += c
    return _trim(out)


def _pmul(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _stretch(a: Sequence[int], base: int) -> list:
    """p(q) -> p(q^base)."""
    if base == 1 or not a:
        return list(a)
    out = [0] * ((len(a) - 1) * base + 1)
    for i, c in enumerate(a):
        out[i * base] = c
    return out


@lru_cache(maxsize=None)
def _qbinom_rec1(m: int, r: int) -> tuple:
    if r < 0 or r > m:
        return ()
    if r == 0 or r == m:
        return (1,)
    return tuple(_padd(_qbinom_rec1(m - 1, r), _qbinom_rec1(m - 1, r - 1), m - r))


@lru_cache(maxsize=None)
def _qbinom_rec2(m: int, r: int) -> tuple:
    if r < 0 or r > m:
        return ()
    if r == 0 or r == m:
        return (1,)
    return tuple(_padd(_qbinom_rec2(m - 1, r - 1), _qbinom_rec2(m - 1, r), r))


def qbinom_coeffs(m: int, r: int, base: int = 1, method: str = "rec1") -> list:
    """Coefficient list of the Gaussian binomial [m, r] in p = q^base."""
    if method == "rec1":
        c = _qbinom_rec1(m, r)
    elif method == "rec2":
        c = _qbinom_rec2(m, r)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _stretch(c, base)


def qbinom(m: int, r: int, base: int = 1, method: str = "rec1") -> QSeries:
    """Exact Gaussian binomial coefficient in q^base (zero outside 0 <= r <= m)."""
    if base not in (1, 2):
        raise ValueError("base must be 1 (q) or 2 (q^2)")
    return QSeries(qbinom_coeffs(m, r, base, method))


def qbinom_recursions_agree(m_max: int) -> bool:
    return all(_qbinom_rec1(m, r) == _qbinom_rec2(m, r)
               for m in range(m_max + 1) for r in range(-1, m + 2))


def qtetra(n: int, l1: int, l2: int, l3: int) -> QSeries:
    """q^2-tetranomial [n; l1, l2, l3] (zero when any part is negative)."""
    if min(l1, l2, l3) < 0 or l1 + l2 + l3 > n:
        return QSeries()
    c = _pmul(_pmul(qbinom_coeffs(n, l1, 2), qbinom_coeffs(n - l1, l3, 2)),
              qbinom_coeffs(n - l1 - l3, l2, 2))
    return QSeries(c)


def q_int(k: int, base: int = 1) -> QSeries:
    """[k]_p = 1 - p^k."""
    return QSeries([1] + [0] * (k * base - 1) + [-1]) if k > 0 else QSeries()


def tetra_rhs(n: int, ell: int) -> QSeries:
    """sum over l1 + l2 + 2 l3 = ell of q^{l1^2 + l2(l2-1)} times the tetranomial."""
    total = QSeries()
    for l3 in range(ell // 2 + 1):
        for l1 in range(ell - 2 * l3 + 1):
            l2 = ell - 2 * l3 - l1
            total = total + qtetra(n, l1, l2, l3).shift(l1 * l1 + l2 * (l2 - 1))
    return total


def tetra_lhs(n: int, ell: int) -> QSeries:
    return qbinom(2 * n, ell)


def tetra_count(n: int, ell: int) -> int:
    """Number of index triples (I, J, K) for given n, ell (the q = 1 value)."""
    return sum(tetra_rhs(n, ell).coeffs)


def _a_rec_holds(seq, n: int, ell: int) -> bool:
    """x_{n,l} = x_{n-1,l} + (q^{2n-l-1} + q^{2n-1}) x_{n-1,l-1} + q^{2n-l} x_{n-1,l-2}."""
    rhs = seq(n - 1, ell)
    prev1 = seq(n - 1, ell - 1)
    if prev1.coeffs:
        rhs = rhs + prev1.shift(2 * n - ell - 1) + prev1.shift(2 * n - 1)
    prev2 = seq(n - 1, ell - 2)
    if prev2.coeffs:
        rhs = rhs + prev2.shift(2 * n - ell)
    return seq(n, ell) == rhs


def verify_tetranomial(n: int, detail: bool = False):
    """Both sides agree for every 0 <= ell <= 2n and both satisfy the a-recursion."""
    sides = {}
    ok_identity = ok_rec = True
    for ell in range(-2, 2 * n + 3):
        a, b = tetra_lhs(n, ell), tetra_rhs(n, ell)
        if ell >= 0 and a != b:
            ok_identity = False
        sides[ell] = (a, b)

    def lhs(m, l):
        return tetra_lhs(m, l) if l >= 0 else QSeries()

    def rhs(m, l):
        return tetra_rhs(m, l) if l >= 0 else QSeries()

    if n >= 1:
        for ell in range(0, 2 * n + 1):
            if not (_a_rec_holds(lhs, n, ell) and _a_rec_holds(rhs, n, ell)):
                ok_rec = False
    if detail:
        return {"n": n, "identity": ok_identity, "recursion": ok_rec}
    return ok_identity and ok_rec


def pivot_identity(n: int, l1: int, l2: int, l3: int) -> bool:
    """[l3]_{q^2} T(n; l1, l2, l3) = [l1+1]_{q^2} T(n; l1+1, l2, l3-1)."""
    return q_int(l3, 2) * qtetra(n, l1, l2, l3) == q_int(l1 + 1, 2) * qtetra(n, l1 + 1, l2, l3 - 1)


# ---------------------------------------------------------------------------
# characters

def inv_qpoch(m: int, cutoff: int) -> QSeries:
    """1/(q)_m = 1/prod_{j=1}^m (1 - q^j), truncated."""
    out = [0] * (cutoff + 1)
    out[0] = 1
    for j in range(1, m + 1):
        # multiply by 1/(1 - q^j): running sums with stride j
        for k in range(j, cutoff + 1):
            out[k] += out[k - j]
    return QSeries(out, 0, cutoff)


def inv_qpoch_infinite(cutoff: int) -> QSeries:
    return inv_qpoch(cutoff, cutoff)


def prefactor(nvars: int) -> Fraction:
    """Global exponent N^2/4 of the characters."""
    return Fraction(nvars * nvars, 4)


def ch_R(nvars: int, cutoff: int) -> QSeries:
    return inv_qpoch(nvars, cutoff)


def ch_U(nvars: int, ell: int, cutoff: int) -> QSeries:
    """q^{N^2/4} [N, ell]_q / (q)_N, truncated ``cutoff`` steps above the prefactor."""
    return (qbinom(nvars, ell) * inv_qpoch(nvars, cutoff)).shift(prefactor(nvars))


def ch_M(nvars: int, ell: int, cutoff: int) -> QSeries:
    """q^{N^2/4} ([N, ell]_q - [N, ell-1]_q) / (q)_N."""
    diff = qbinom(nvars, ell) - qbinom(nvars, ell - 1)
    return (diff * inv_qpoch(nvars, cutoff)).shift(prefactor(nvars))


def basis_character(nvars: int, ell: int) -> QSeries:
    """sum over the candidate basis of q^{deg1}, from the index sets directly."""
    from .construct import basis_indices, index_deg1

    counts: dict = {}
    for idx in basis_indices(nvars, ell):
        d = index_deg1(nvars, idx)
        counts[d] = counts.get(d, 0) + 1
    if not counts:
        return QSeries()
    lo = min(counts)
    return QSeries([counts.get(lo + k, 0) for k in range(max(counts) - lo + 1)], lo)


def branching(parity: int, lam: int, cutoff: int) -> QSeries:
    """sum over N = lam + 2 ell, N = parity mod 2, of ch_M(N, ell).

    The result carries offset lam^2/4 and ``cutoff`` steps above it; a
    summand starts at q^{N^2/4}, so N stops once that exceeds the range.
    """
    if parity not in (0, 1) or lam < 0 or lam % 2 != parity:
        raise ValueError("need lam >= 0 with lam = parity mod 2")
    base = prefactor(lam)
    top = base + cutoff
    total = QSeries([], base, cutoff)
    nv = lam
    while prefactor(nv) <= top:
        ell = (nv - lam) // 2
        room = int(top - prefactor(nv))
        total = total + ch_M(nv, ell, room)
        nv += 2
    return total


def virasoro_product(spin, cutoff: int) -> QSeries:
    """q^{S^2} (1 - q^{2S+1}) / (q;q)_inf for a non-negative half integer S."""
    s = Fraction(spin)
    if s < 0 or (2 * s).denominator != 1:
        raise ValueError("spin must be a non-negative half integer")
    gap = int(2 * s + 1)
    num = QSeries([1] + [0] * (gap - 1) + [-1])
    return (num * inv_qpoch_infinite(cutoff)).shift(s * s)


def chi(spin) -> dict:
    """sl2 character chi_S(z) as {z-exponent: 1}."""
    s = Fraction(spin)
    if s < 0 or (2 * s).denominator != 1:
        raise ValueError("spin must be a non-negative half integer")
    top = int(2 * s)
    return {m: 1 for m in range(-top, top + 1, 2)}


def fermionic_sides(parity: int, cutoff: int, z_range: int) -> tuple[ZLaurent, ZLaurent]:
    """Both sides of the fermionic identity, truncated in q and in |z|."""
    base = Fraction(parity, 4)
    top = base + cutoff
    lhs, rhs = ZLaurent(), ZLaurent()
    nv = parity
    while prefactor(nv) <= top:
        room = int(top - prefactor(nv))
        for ell in range(nv + 1):
            m = nv - 2 * ell
            if abs(m) <= z_range:
                term = (inv_qpoch(ell, room) * inv_qpoch(nv - ell, room)).shift(prefactor(nv))
                rhs = rhs + ZLaurent({m: term})
        nv += 2
    for lam in range(parity, z_range + 1 + 2 * cutoff + 2, 2):
        if prefactor(lam) > top:
            break
        room = int(top - prefactor(lam))
        b = branching(parity, lam, room)
        kept = {m: 1 for m in chi(Fraction(lam, 2)) if abs(m) <= z_range}
        lhs = lhs + ZLaurent({0: b}).times_z_poly(kept)
    return lhs, rhs


def window(series: QSeries, lo, top) -> list:
    """Coefficients of q^lo, q^{lo+1}, ..., q^top (top must be within precision)."""
    if series.precision is not None and series.precision < top:
        raise SeriesError(f"series known only up to q^{series.precision}")
    return [series.coefficient(lo + k) for k in range(int(Fraction(top) - Fraction(lo)) + 1)]


def fermionic_identity(parity: int, cutoff: int, z_range: int) -> bool:
    lhs, rhs = fermionic_sides(parity, cutoff, z_range)
    base = Fraction(parity, 4)
    empty = QSeries([], base, cutoff)
    for m in range(-z_range, z_range + 1):
        a = lhs.coefficient(m) or empty
        b = rhs.coefficient(m) or empty
        if window(a, base, base + cutoff) != window(b, base, base + cutoff):
            return False
    return True


def ising_char(parity: int, cutoff: int) -> QSeries:
    """sum over N = parity mod 2 of q^{N(N-1)/2} / (q)_N."""
    total = QSeries([], 0, cutoff)
    nv = parity
    while nv * (nv - 1) // 2 <= cutoff:
        shift = nv * (nv - 1) // 2
        total = total + inv_qpoch(nv, cutoff - shift).shift(shift)
        nv += 2
    return total


def fermion_product(cutoff: int) -> QSeries:
    """prod_{j>=1} (1 + q^j), truncated."""
    out = [0] * (cutoff + 1)
    out[0] = 1
    for j in range(1, cutoff + 1):
        for k in range(cutoff, j - 1, -1):
            out[k] += out[k - j]
    return QSeries(out, 0, cutoff)


def ising_identity(parity: int, cutoff: int) -> bool:
    return ising_char(parity, cutoff) == fermion_product(cutoff)


def euler_characteristic(nvars: int, ell: int, cutoff: int) -> QSeries:
    """ch U_ell - sum_r (-1)^r (ch U_{ell-1-r} + ch U_{ell-2-r}), the resolution count."""
    total = ch_U(nvars, ell, cutoff)
    for r in range(ell):
        for m in (ell - 1 - r, ell - 2 - r):
            if m >= 0:
                term = ch_U(nvars, m, cutoff)
                total = total - term if r % 2 == 0 else total + term
    return total
