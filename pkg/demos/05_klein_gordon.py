"""The same origin gate in the radial Klein-Gordon reduction.

Separating the Klein-Gordon equation in spherical coordinates runs through
the identical u = r R substitution, so the u(0) = 0 gate carries over.
For a Coulomb field the coupling sharpens the singularity: the effective
centrifugal strength is l(l+1) - alpha^2, overcritical at alpha >= l + 1/2.

Levels are checked against the closed form
    E = m [1 + alpha^2 / (n_r + 1/2 + sqrt((l+1/2)^2 - alpha^2))^2]^(-1/2).
"""

import math

import radialgate as rg


def closed_form(alpha, n_r, l=0, mass=1.0):
    gap = math.sqrt((l + 0.5) ** 2 - alpha**2)
    return mass / math.sqrt(1.0 + alpha**2 / (n_r + 0.5 + gap) ** 2)


def main():
    alpha = 0.3
    grid = rg.RadialGrid(1e-3, 60.0, 60000)
    spec = rg.kg_bound_states(
        rg.Coulomb(alpha), 0, 1.0, rg.DirichletOrigin(), (0.9, 0.99), 2, grid
    )
    print(f"Klein-Gordon Coulomb levels at alpha = {alpha}, l = 0, m = 1:")
    for entry, n_r in zip(spec.entries, (0, 1)):
        exact = closed_form(alpha, n_r)
        print(f"  n_r = {n_r}: E = {entry.energy:.8f}  closed form {exact:.8f}  "
              f"rel {abs(entry.energy - exact) / exact:.1e}")
    print()
    print("Weak coupling reduces to the Schrodinger binding m alpha^2 / 2:")
    a = 0.05
    g = rg.RadialGrid(1e-2, 600.0, 24000)
    s = rg.kg_bound_states(
        rg.Coulomb(a), 0, 1.0, rg.DirichletOrigin(),
        (1 - 2 * a * a, 1 - 0.1 * a * a), 1, g,
    )
    e = s.entries[0].energy
    print(f"  alpha = {a}: E = {e:.10f}, m - m a^2/2 = {1 - a * a / 2:.10f}, "
          f"gap {abs(e - (1 - a * a / 2)):.2e} ~ (5/8) a^4 = {0.625 * a**4:.2e}")
    print()
    print("Overcritical coupling is refused, not silently continued:")
    try:
        rg.kg_bound_states(
            rg.Coulomb(0.6), 0, 1.0, rg.DirichletOrigin(), (0.9, 0.99), 1, grid
        )
    except rg.KGFallToCenter as exc:
        print(f"  KGFallToCenter: {exc}")


if __name__ == "__main__":
    main()
