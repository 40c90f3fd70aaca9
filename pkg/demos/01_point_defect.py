"""The hidden point source in the radial Laplacian identity.

Acting with the radial Laplacian on u(r)/r and with (1/r) u'' on u gives
the same function for every r > 0, yet the two operators are NOT equal:
integrating their difference over a small sphere exposes a point source of
strength -4*pi*u(0).  The defect therefore vanishes exactly when u(0) = 0,
which is the boundary condition that makes the reduced radial equation
equivalent to the full 3D problem.

This script measures the defect for a profile with u(0) = 1 and one with
u(0) = 0, shows the second-order convergence of the probe, and checks the
corrected identity (defect + 4*pi*u(0) -> 0) for three smooth profiles.
"""

import math

import numpy as np

import radialgate as rg

FOUR_PI = 4.0 * math.pi


def grid_through(r_min, probe, r_max, h_target):
    k = max(int(round((probe - r_min) / h_target)), 8)
    h = (probe - r_min) / k
    n = k + int(math.ceil((r_max - probe) / h)) + 1
    return rg.RadialGrid(r_min, r_min + (n - 1) * h, n)


def main():
    print("=== small-sphere defect integral, probe radius a = 0.1 ===")
    print(f"{'profile':>10s} {'h':>10s} {'integral':>16s} {'-4*pi*u(0)':>14s} {'abs.err':>10s}")
    for name, f in (("u = 1", lambda r: np.ones_like(r)),
                    ("u = r", lambda r: r.copy()),
                    ("u = cos r", np.cos)):
        for m in (1, 2, 4):
            grid = grid_through(1e-4, 0.1, 0.12, 1e-4 / m)
            rep = rg.numeric_delta_residual(f(grid.nodes()), grid, 0.1)
            print(f"{name:>10s} {rep.grid_spacing:10.2e} {rep.integral:16.10f}"
                  f" {rep.predicted:14.10f} {abs(rep.integral - rep.predicted):10.2e}")
    print()
    print("u(0) != 0 leaves the full -4*pi*u(0) sink; u(0) = 0 removes it.")
    print()

    print("=== corrected identity: integral + 4*pi*u(0) -> 0 at order 2 ===")
    for name, f in (("cos r", np.cos),
                    ("exp(-r)", lambda r: np.exp(-r)),
                    ("1 + r^2", lambda r: 1 + r**2)):
        errs = []
        for m in (1, 2, 4):
            grid = grid_through(1e-3, 0.5, 0.6, 4e-4 / m)
            rep = rg.numeric_delta_residual(f(grid.nodes()), grid, 0.5)
            errs.append(abs(rep.integral - rep.predicted))
        orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
        print(f"  {name:8s}: residuals {errs[0]:.2e} -> {errs[1]:.2e} -> "
              f"{errs[2]:.2e}, observed orders {orders[0]:.2f}, {orders[1]:.2f}")
    print()

    print("=== pointwise agreement away from the origin (flux stencil) ===")
    for n in (426, 851, 1701):
        g = rg.RadialGrid(0.3, 2.0, n)
        d = rg.identity_defect_away_from_origin(np.cos(g.nodes()), g, 0.5)
        print(f"  h = {g.spacing:.2e}: max defect on r >= 0.5 is {d:.3e}")
    print("The two operator forms agree pointwise for r > 0; only the origin")
    print("carries the difference, and only u(0) = 0 silences it.")


if __name__ == "__main__":
    main()
