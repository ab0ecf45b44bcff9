"""Walk through the basis of U_{N, ell} for a small N.

Run: python3 demos/null_residue_basis.py [N] [ell]
"""

from __future__ import annotations

import sys

from qkzres.construct import enumerate_basis, index_deg1
from qkzres.nullres import coordinates, det_identity_check, in_U
from qkzres.construct import xi2_big


def main(nvars: int = 4, ell: int = 2) -> None:
    print(f"basis of U_{{{nvars},{ell}}}")
    for idx, form in enumerate_basis(nvars, ell):
        print(f"  {idx.label():10s} deg1={index_deg1(nvars, idx):3d}  "
              f"terms={len(form.coeffs):3d}  residues vanish={in_U(form)}")

    report = det_identity_check(nvars, ell, "symbolic")
    print(f"\ndet of the coefficient matrix = {report['c']} * (Delta+)^{report['exponent']}"
          f"  (matches={report['matches']})")

    if nvars % 2 == 0 and nvars >= 4 and ell == 2:
        # the theta-built two-form is twice xi_1, not xi_1 itself
        coords = coordinates(xi2_big(nvars))
        nonzero = {idx.label(): str(c) for (idx, _), c in zip(enumerate_basis(nvars, 2), coords) if c}
        print(f"Xi_2 in this basis: {nonzero}")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
