"""Frobenius branches at the origin and the two admissibility gates.

Near r = 0 the reduced radial function is a combination of two power-law
branches.  For an attractive inverse-square potential -v0/r^2 the branch
exponents are 1/2 +- P with P = sqrt((l+1/2)^2 - 2 m v0).  Two policies
compete for which branches a calculation may keep:

* square-integrable-only: keep anything with finite norm (s > -1/2), which
  admits BOTH branches for every 0 <= P < 1;
* the Dirichlet origin gate u(0) = 0: keep only s > 0, which admits both
  branches only for 0 <= P < 1/2.

The strip 1/2 <= P < 1 is where the two policies disagree, and where
spectra become policy-dependent (see demo 04).
"""

import numpy as np

import radialgate as rg


def main():
    print("P scan at l = 0, m = 1 (v0 = (1/4 - P^2)/2, negative = repulsive)")
    print(f"{'P':>5s} {'v0':>9s} {'s+':>6s} {'s-':>6s} "
          f"{'SI: both ok':>12s} {'Dirichlet: both ok':>19s}")
    for p_target in (0.05, 0.2, 0.35, 0.49, 0.5, 0.62, 0.7, 0.85, 0.95):
        v0 = (0.25 - p_target**2) / 2.0
        rep = rg.indicial_exponents(rg.TransitiveSingular(v0), 0, 1.0)
        si = rg.admissibility(rep, rg.SquareIntegrableOnly())
        di = rg.admissibility(rep, rg.DirichletOrigin())
        both_si = si.flags_plus.admissible and si.flags_minus.admissible
        both_di = di.flags_plus.admissible and di.flags_minus.admissible
        print(f"{rep.p_value:5.2f} {v0:9.5f} {rep.s_plus:6.2f} {rep.s_minus:6.2f}"
              f" {str(both_si):>12s} {str(both_di):>19s}")
    print()
    print("Regular potentials: the gate discards the r^{-l} branch, and for")
    print("l = 0 it also discards the constant branch that the norm allows:")
    rep = rg.admissibility(rg.indicial_exponents(rg.Regular(), 0), rg.DirichletOrigin())
    print(f"  l = 0: s- = {rep.s_minus}, square integrable = "
          f"{rep.flags_minus.square_integrable}, admissible = "
          f"{rep.flags_minus.admissible}")
    print()
    print("Fall to center: 2 m v0 > (l + 1/2)^2 turns the exponents complex.")
    rep = rg.indicial_exponents(rg.TransitiveSingular(0.25), 0, 1.0)
    print(f"  v0 = 0.25: fall_to_center = {rep.fall_to_center}")
    print()
    print("Steeper singularities have no two-branch structure; the vanishing")
    print("of the origin defect instead demands s > n - 2:")
    for n in (2.0, 2.5, 3.0, 4.0):
        print(f"  V ~ 1/r^{n}: leading exponent must exceed {rg.min_exponent_bound(n)}")


if __name__ == "__main__":
    main()
