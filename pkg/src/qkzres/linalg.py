"""Exact linear algebra: Bareiss determinants and sparse rational elimination."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence


def _is_zero(a) -> bool:
    return not a


def _divexact(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in Bareiss step")
        return q
    if hasattr(a, "divexact"):
        return a.divexact(b)
    return a / b


def det_bareiss(rows: Sequence[Sequence], zero, one):
    """Fraction-free determinant over an integral domain.

    Entries may be ints or objects with ring operations and ``divexact``.
    """
    m = [list(r) for r in rows]
    size = len(m)
    if size == 0:
        return one
    if any(len(r) != size for r in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = one
    for k in range(size - 1):
        if _is_zero(m[k][k]):
            for i in range(k + 1, size):
                if not _is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, size):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, size):
                a = pivot * row_i[j]
                if not _is_zero(mik) and not _is_zero(row_k[j]):
                    a = a - mik * row_k[j]
                row_i[j] = _divexact(a, prev) if not _is_zero(a) else zero
            row_i[k] = zero
        prev = pivot
    d = m[size - 1][size - 1]
    return d if sign > 0 else -d


def det_int(rows: Sequence[Sequence[int]]) -> int:
    return det_bareiss(rows, 0, 1)


def det_fraction(rows: Sequence[Sequence]) -> Fraction:
    """Determinant over the rationals by Gaussian elimination."""
    m = [[Fraction(v) for v in r] for r in rows]
    size = len(m)
    det = Fraction(1)
    for k in range(size):
        piv = next((i for i in range(k, size) if m[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, size):
            f = m[i][k] * inv
            if f:
                for j in range(k, size):
                    m[i][j] -= f * m[k][j]
    return det


class SparseEchelon:
    """Incremental row echelon form over the rationals.

    Rows are dicts column -> value.  ``add`` reduces a new row against the
    stored pivots and keeps it when independent, so the rank of a stream of
    vectors is the number of rows kept.  Optionally tracks how each stored
    row was combined from the inputs, which gives exact solutions.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict = {}  # pivot column -> normalized row
        self.track = track
        self.combos: dict = {}  # pivot column -> {input label: coeff}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping, combo: dict | None = None) -> tuple[dict, dict | None]:
        vec = {c: Fraction(v) for c, v in row.items() if v}
        # stored rows are fully reduced, so one pass over pivot columns suffices
        for col in [c for c in vec if c in self.pivots]:
            coef = vec.get(col)
            if not coef:
                continue
            prow = self.pivots[col]
            for c, v in prow.items():
                nv = vec.get(c, 0) - coef * v
                if nv:
                    vec[c] = nv
                else:
                    vec.pop(c, None)
            if combo is not None:
                for lab, v in self.combos[col].items():
                    nv = combo.get(lab, 0) - coef * v
                    if nv:
                        combo[lab] = nv
                    else:
                        combo.pop(lab, None)
        return vec, combo

    def add(self, row: Mapping, label: Hashable = None) -> bool:
        combo = {label: Fraction(1)} if self.track else None
        vec, combo = self.reduce(row, combo)
        if not vec:
            return False
        col = min(vec)
        inv = 1 / vec[col]
        vec = {c: v * inv for c, v in vec.items()}
        # keep stored rows fully reduced on the new pivot column
        for pc, prow in self.pivots.items():
            coef = prow.get(col)
            if coef:
                for c, v in vec.items():
                    nv = prow.get(c, 0) - coef * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
                if self.track:
                    pcombo = self.combos[pc]
                    for lab, v in combo.items():
                        nv = pcombo.get(lab, 0) - coef * v * inv
                        if nv:
                            pcombo[lab] = nv
                        else:
                            pcombo.pop(lab, None)
        self.pivots[col] = vec
        if self.track:
            self.combos[col] = {lab: v * inv for lab, v in combo.items()}
        return True

    def solve(self, target: Mapping) -> dict | None:
        """Express ``target`` as a combination of the added (labeled) rows."""
        if not self.track:
            raise ValueError("solve needs track=True")
        vec = {c: Fraction(v) for c, v in target.items() if v}
        out: dict = {}
        # pivots are fully reduced, so the target coefficient on each pivot
        # column is the multiplier of that stored row
        residual = dict(vec)
        for col, prow in self.pivots.items():
            coef = vec.get(col)
            if not coef:
                continue
            for c, v in prow.items():
                nv = residual.get(c, 0) - coef * v
                if nv:
                    residual[c] = nv
                else:
                    residual.pop(c, None)
            for lab, v in self.combos[col].items():
                nv = out.get(lab, 0) + coef * v
                if nv:
                    out[lab] = nv
                else:
                    out.pop(lab, None)
        if residual:
            return None
        return out


def rank(rows: Iterable[Mapping]) -> int:
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    return ech.rank
