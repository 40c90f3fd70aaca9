"""Independent 3D check: the full Cartesian problem knows nothing of r = 0.

Two cross-checks close the loop on the radial reduction:

1. eigenvalues of the full 3D Hamiltonian on a cell-centered cube agree
   with the radial solver under the Dirichlet origin gate;
2. applying the 3D stencil to psi = u(r)/r exposes the same point defect
   the radial probe measures: profiles with u(0) != 0 act as a point sink
   of strength about -4*pi*u(0), profiles with u(0) = 0 do not.
"""

import math

import numpy as np

import radialgate as rg

FOUR_PI = 4.0 * math.pi


def main():
    print("=== oscillator ground state: 3D box vs radial shooting ===")
    radial = rg.bound_states(
        rg.Harmonic(1.0), 0, 1.0, rg.DirichletOrigin(), (0.5, 2.5), 1,
        rg.RadialGrid(1e-3, 12.0, 6000),
    ).entries[0].energy
    print(f"  radial (Dirichlet gate): {radial:.8f}")
    for n in (48, 64):
        res = rg.lowest_eigenvalues_3d(
            rg.Harmonic(1.0), 1.0, rg.CartesianGrid(6.0, n), 1
        )
        e = res.eigenvalues[0]
        print(f"  3D, n = {n:2d}: {e:.8f}  (diff {abs(e - radial) / radial:.2%},"
              f" residual {res.residuals[0]:.1e})")
    print()

    print("=== hydrogen ground state (cusp limits the stencil) ===")
    res = rg.lowest_eigenvalues_3d(rg.Coulomb(1.0), 1.0, rg.CartesianGrid(12.0, 64), 1)
    print(f"  3D, n = 64: {res.eigenvalues[0]:.6f} vs -0.5 "
          f"({abs(res.eigenvalues[0] + 0.5) / 0.5:.1%})")
    print()

    print("=== point defect of psi = u(r)/r over the 2x2x2 central cells ===")
    print(f"{'n':>5s} {'u = 1':>12s} {'u = r e^-r':>12s} {'ratio':>8s}")
    for n in (48, 64, 96):
        grid = rg.CartesianGrid(2.0, n)
        r_max = math.sqrt(3.0) * (2.0 + 2 * grid.spacing)
        d1 = rg.point_defect_3d(
            rg.RadialProfile.from_callable(lambda r: np.ones_like(r), r_max), grid
        )
        de = rg.point_defect_3d(
            rg.RadialProfile.from_callable(lambda r: r * np.exp(-r), r_max), grid
        )
        print(f"{n:5d} {d1:12.6f} {de:12.2e} {abs(d1 / de):8.0f}")
    print(f"  -4*pi = {-FOUR_PI:.6f}: a u(0) != 0 profile is a genuine point")
    print("  sink (the lattice captures ~95% of it in the central cells);")
    print("  a u(0) = 0 profile leaves nothing behind.")


if __name__ == "__main__":
    main()
