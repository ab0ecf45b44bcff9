"""Compare graded dimensions of the quotient M with its character.

Run: python3 demos/quotient_characters.py
"""

from __future__ import annotations

from qkzres.qchar import ch_M, ch_U
from qkzres.resolution import bas_split, graded_slices, quotient_vs_character

D_MAX = 8


def main() -> None:
    for nvars in (2, 4, 3):
        for ell in range(0, nvars // 2 + 1):
            r = quotient_vs_character(nvars, ell, D_MAX)
            print(f"N={nvars} ell={ell}")
            print(f"  ch U   {ch_U(nvars, ell, D_MAX)}")
            print(f"  ch M   {ch_M(nvars, ell, D_MAX)}")
            print(f"  dims M {r['dims_M']}  agree={r['matches']}")

    print("\nslice detail for N=4, ell=1")
    for s in graded_slices(4, 1, 5):
        print(f"  {s.to_json()}")

    plus, minus = bas_split(4, 1)
    print("\nsplit of the ell=1 basis at N=4 by the first form w_1:")
    print(f"  with w_1:    {[b.label() for b in plus]}")
    print(f"  without w_1: {[b.label() for b in minus]}")


if __name__ == "__main__":
    main()
