"""Rewriting out-of-range alpha/beta monomials, then the q-series identities.

Run: python3 demos/reduction_and_series.py
"""

from __future__ import annotations

from fractions import Fraction

from qkzres.combinat import Descriptor, reduction_summary, reduction_trace, span_rank, specialization_bridge
from qkzres.qchar import branching, fermionic_identity, ising_identity, virasoro_product


def main() -> None:
    d = Descriptor(4, (1, 2, 4), (0, 2))
    print(f"trace of {d}:")
    for step in reduction_trace(d):
        print(f"  {step['case']:7s} {step['descriptor']}  h={step['h']}")
    s = reduction_summary(4, 3)
    print(f"all descriptors at n=4, l1=3: {s['descriptors']} nodes, {s['steps']} steps, "
          f"cases {s['cases']}, acyclic={s['acyclic']}")

    for n in (2, 3):
        print(f"span ranks n={n}: {[span_rank(n, ell)['rank'] for ell in range(2 * n + 1)]}")
    b = specialization_bridge(4)
    print(f"specialization bridge at N=4 passed={b['passed']}, Delta+ at the special point={b['delta_plus']}")

    for lam in range(3):
        lhs = branching(lam % 2, lam, 12)
        print(f"lambda={lam}: {lhs}   product form agrees={lhs == virasoro_product(Fraction(lam, 2), 12)}")
    print(f"fermionic sums agree: {[fermionic_identity(i, 12, 5) for i in (0, 1)]}")
    print(f"Ising characters agree: {[ising_identity(i, 16) for i in (0, 1)]}")


if __name__ == "__main__":
    main()
