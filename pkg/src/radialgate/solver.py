"""Bound-state spectra for the reduced radial equation via Numerov shooting.

The reduced radial function obeys u'' = q(r) u with

    q(r) = l(l+1)/r^2 + 2 m (V(r) - E)                    (Schrodinger)
    q(r) = (l(l+1) - alpha^2)/r^2 - 2 E alpha / r + m^2 - E^2   (Klein-Gordon,
                                                                 Coulomb only)

Outward integration starts from a Frobenius power-law branch (or a mixture
of the two branches, selected by the boundary policy), inward integration
from a decaying tail or from a hard wall at r_max for boxed problems.  An
energy is an eigenvalue when the Wronskian of the two solutions vanishes at
the matching point; roots are bracketed by a uniform pre-scan and refined
by bisection.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._numerov import count_sign_changes, numerov_sweep
from .errors import (
    DomainError,
    FallToCenter,
    KGFallToCenter,
    NonDecayingTail,
    NonPositiveSamples,
    PolicyError,
    WindowEmpty,
)
from .indicial import (
    BoundaryPolicy,
    DirichletOrigin,
    SquareIntegrableOnly,
    format_policy,
    indicial_exponents,
)
from .potentials import (
    Coulomb,
    Harmonic,
    InverseSquare,
    Potential,
    PowerLaw,
    RadialGrid,
    RegularizedInverseSquare,
    classify_origin,
    evaluate_potential,
    format_potential,
)

__all__ = [
    "FrobeniusStart",
    "NumerovResult",
    "SpectrumEntry",
    "Spectrum",
    "OriginSlopeFit",
    "numerov_integrate",
    "bound_states",
    "policy_contrast",
    "kg_bound_states",
    "solve_wavefunction",
    "origin_slope_fit",
    "thread_cap",
]

_PRESCAN_POINTS = 256
_BISECT_MAX_ITER = 200


def thread_cap() -> int:
    """Parallelism cap from RADIAL_GATE_THREADS (default: hardware count)."""
    raw = os.environ.get("RADIAL_GATE_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise DomainError(f"RADIAL_GATE_THREADS={raw!r} is not an integer") from None
    return os.cpu_count() or 1


@dataclass(frozen=True)
class FrobeniusStart:
    """Power-law initialization of the outward integration.

    The synthesized small-r shape is

        cos(theta) * r**s_plus + sin(theta) * r_ref**s_plus * (r/r_ref)**s_minus

    so theta = 0 is the pure dominant branch and r_ref makes the mixture
    dimensionless.  The solver augments each branch with the first three
    Frobenius series corrections when the potential's origin expansion
    supports them.
    """

    s_plus: float
    s_minus: float
    theta: float = 0.0
    r_ref: float = 1.0

    def weights(self) -> tuple[float, float]:
        return math.cos(self.theta), math.sin(self.theta)


@dataclass(frozen=True)
class NumerovResult:
    u: np.ndarray
    rescaled: bool
    direction: str


@dataclass(frozen=True)
class SpectrumEntry:
    k: int
    energy: float
    node_count: int
    converged: bool
    bisection_width: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "energy": self.energy,
            "node_count": self.node_count,
            "converged": self.converged,
            "bisection_width": self.bisection_width,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SpectrumEntry":
        return cls(
            k=int(d["k"]),
            energy=float(d["energy"]),
            node_count=int(d["node_count"]),
            converged=bool(d["converged"]),
            bisection_width=float(d["bisection_width"]),
        )


@dataclass(frozen=True)
class Spectrum:
    """Ordered bound-state energies with node counts and solve metadata."""

    entries: tuple[SpectrumEntry, ...]
    potential: str
    l: int
    mass: float
    policy: str
    grid: RadialGrid
    window: tuple[float, float]
    boxed: bool
    equation: str = "schrodinger"
    rescaled: bool = False

    def __post_init__(self):
        energies = [e.energy for e in self.entries]
        if any(b <= a for a, b in zip(energies, energies[1:])):
            raise DomainError("spectrum energies must be strictly increasing")
        nodes = [e.node_count for e in self.entries]
        if any(b <= a for a, b in zip(nodes, nodes[1:])):
            raise DomainError("node counts must be strictly increasing")

    def energies(self) -> np.ndarray:
        return np.array([e.energy for e in self.entries])

    def to_dict(self) -> dict:
        return {
            "equation": self.equation,
            "potential": self.potential,
            "l": self.l,
            "mass": self.mass,
            "policy": self.policy,
            "grid": self.grid.to_dict(),
            "window": list(self.window),
            "boxed": self.boxed,
            "rescaled": self.rescaled,
            "entries": [e.to_dict() for e in self.entries],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Spectrum":
        return cls(
            entries=tuple(SpectrumEntry.from_dict(e) for e in d["entries"]),
            potential=str(d["potential"]),
            l=int(d["l"]),
            mass=float(d["mass"]),
            policy=str(d["policy"]),
            grid=RadialGrid.from_dict(d["grid"]),
            window=(float(d["window"][0]), float(d["window"][1])),
            boxed=bool(d["boxed"]),
            equation=str(d.get("equation", "schrodinger")),
            rescaled=bool(d.get("rescaled", False)),
        )


@dataclass(frozen=True)
class OriginSlopeFit:
    exponent: float
    stderr: float
    ci95: float
    n_points: int


# ---------------------------------------------------------------------------
# internal shooting machinery
# ---------------------------------------------------------------------------


def _series_coefficients(d_coef: float, f_coef: float, s: float):
    """First three Frobenius corrections for u ~ r^s (1 + a1 r + a2 r^2 + a3 r^3).

    Valid when q(r) = s(s-1)/r^2 + d_coef/r + f_coef + O(r); degenerate
    denominators truncate the series.
    """
    den1 = 2.0 * s
    a1 = d_coef / den1 if abs(den1) > 1e-12 else 0.0
    den2 = 2.0 * (2.0 * s + 1.0)
    a2 = (d_coef * a1 + f_coef) / den2 if abs(den2) > 1e-12 else 0.0
    den3 = 3.0 * (2.0 * s + 2.0)
    a3 = (d_coef * a2 + f_coef * a1) / den3 if abs(den3) > 1e-12 else 0.0
    return a1, a2, a3


def _branch(r: float, s: float, coeffs) -> float:
    a1, a2, a3 = coeffs
    return r**s * (1.0 + r * (a1 + r * (a2 + r * a3)))


class _ShootingProblem:
    """Grid, q(E) assembly, boundary starts, and the mismatch function."""

    def __init__(self, p, l, mass, grid, start, boxed, equation="schrodinger"):
        self.p = p
        self.l = l
        self.mass = mass
        self.grid = grid
        self.start = start
        self.boxed = boxed
        self.equation = equation
        self.r = grid.nodes()
        self.h = grid.spacing
        self.n = grid.n_points
        if equation == "schrodinger":
            self.v = evaluate_potential(p, self.r, mass)
            self.centrifugal = l * (l + 1) / (self.r * self.r)
        else:  # klein_gordon, Coulomb only
            self.alpha = p.alpha
            self.centrifugal = (l * (l + 1) - p.alpha**2) / (self.r * self.r)
        self.rescaled = False

    # small-r expansion q ~ s(s-1)/r^2 + D/r + F used by the series start
    def _series_df(self, energy: float) -> tuple[float, float, bool]:
        if self.equation == "klein_gordon":
            return -2.0 * energy * self.alpha, self.mass**2 - energy**2, True
        p, m = self.p, self.mass
        if isinstance(p, Coulomb):
            v1, v0, ok = -p.alpha, 0.0, True
        elif isinstance(p, (InverseSquare, Harmonic)):
            v1, v0, ok = 0.0, 0.0, True
        elif isinstance(p, RegularizedInverseSquare):
            v1, v0, ok = 0.0, -p.v0 / p.r_core**2, True
        elif isinstance(p, PowerLaw):
            if p.n == 1.0:
                v1, v0, ok = p.g, 0.0, True
            elif p.n == 2.0:
                v1, v0, ok = 0.0, 0.0, True
            else:
                v1, v0, ok = 0.0, 0.0, False
        else:
            v1, v0, ok = 0.0, 0.0, False
        return 2.0 * m * v1, 2.0 * m * (v0 - energy), ok

    def q_of(self, energy: float) -> np.ndarray:
        if self.equation == "schrodinger":
            return self.centrifugal + 2.0 * self.mass * (self.v - energy)
        # centrifugal already holds (l(l+1) - alpha^2)/r^2
        return (self.centrifugal - 2.0 * energy * self.alpha / self.r
                + self.mass**2 - energy**2)

    def start_values(self, energy: float) -> tuple[float, float]:
        st = self.start
        d_coef, f_coef, ok = self._series_df(energy)
        if not ok:
            d_coef = f_coef = 0.0
        cp = _series_coefficients(d_coef, f_coef, st.s_plus)
        cm = _series_coefficients(d_coef, f_coef, st.s_minus)
        w_plus, w_minus = st.weights()
        scale_minus = w_minus * st.r_ref ** (st.s_plus - st.s_minus)
        vals = []
        for r in (self.r[0], self.r[1]):
            vals.append(w_plus * _branch(r, st.s_plus, cp)
                        + scale_minus * _branch(r, st.s_minus, cm))
        return vals[0], vals[1]

    def tail_values(self, q: np.ndarray) -> tuple[float, float]:
        if self.boxed:
            return 0.0, 1.0
        if q[-1] <= 0.0 or q[-2] <= 0.0:
            raise NonDecayingTail(
                "tail region at r_max is classically allowed; no decaying start"
            )
        kappa = 0.5 * (math.sqrt(q[-1]) + math.sqrt(q[-2]))
        return 1.0, math.exp(kappa * self.h)

    def match_index(self, q: np.ndarray) -> int:
        flips = np.nonzero(np.signbit(q[:-1]) != np.signbit(q[1:]))[0]
        i_m = int(flips[-1]) if flips.size else self.n // 2
        return min(max(i_m, 10), self.n - 11)

    def mismatch(self, energy: float) -> float:
        q = self.q_of(energy)
        i_m = self.match_index(q)
        u0, u1 = self.start_values(energy)
        u_out, resc_o = numerov_sweep(q[: i_m + 2], self.h, u0, u1)
        t0, t1 = self.tail_values(q)
        u_in_rev, resc_i = numerov_sweep(q[i_m - 1 :][::-1].copy(), self.h, t0, t1)
        if resc_o or resc_i:
            self.rescaled = True
        uo = u_out[i_m]
        uo_p = (u_out[i_m + 1] - u_out[i_m - 1]) / (2.0 * self.h)
        j = self.n - 1 - i_m  # index of node i_m in the reversed inward array
        ui = u_in_rev[j]
        # reversed orientation: u_in_rev[j - 1] is the node above i_m
        ui_p = (u_in_rev[j - 1] - u_in_rev[j + 1]) / (2.0 * self.h)
        w = uo_p * ui - ui_p * uo
        return w / (abs(uo_p * ui) + abs(ui_p * uo) + 1e-300)

    def wavefunction(self, energy: float) -> np.ndarray:
        """Glued, normalized eigenfunction at the given energy."""
        q = self.q_of(energy)
        i_m = self.match_index(q)
        u0, u1 = self.start_values(energy)
        u_out, _ = numerov_sweep(q[: i_m + 2], self.h, u0, u1)
        t0, t1 = self.tail_values(q)
        u_in_rev, _ = numerov_sweep(q[i_m - 1 :][::-1].copy(), self.h, t0, t1)
        u_in = u_in_rev[::-1]  # nodes i_m-1 .. n-1, so node i_m is u_in[1]
        j = 1
        do = u_out[i_m + 1] - u_out[i_m - 1]
        di = u_in[j + 1] - u_in[j - 1]
        if abs(u_out[i_m]) >= 0.5 * abs(do):
            scale = u_in[j] / u_out[i_m]
        else:
            scale = di / do
        full = np.empty(self.n)
        full[:i_m] = u_out[:i_m] * scale
        full[i_m:] = u_in[1:]
        norm = math.sqrt(float(np.trapezoid(full * full, dx=self.h)))
        if norm > 0:
            full /= norm
        if full[int(np.argmax(np.abs(full)))] < 0:
            full = -full
        return full


def _start_from_policy(p, l, mass, policy, equation="schrodinger") -> FrobeniusStart:
    """Indicial exponents plus policy-selected branch weights."""
    if equation == "klein_gordon":
        disc = (l + 0.5) ** 2 - p.alpha**2
        if disc <= 0:
            raise KGFallToCenter(
                f"alpha = {p.alpha} >= l + 1/2 = {l + 0.5}: effective"
                " centrifugal term is overcritical"
            )
        pgap = math.sqrt(disc)
        s_plus, s_minus = 0.5 + pgap, 0.5 - pgap
        report = None
    else:
        report = indicial_exponents(classify_origin(p), l, mass)
        if report.fall_to_center:
            raise FallToCenter(
                "2 m v0 exceeds (l + 1/2)^2: indicial exponents are complex"
            )
        s_plus, s_minus = report.s_plus, report.s_minus
    if isinstance(policy, DirichletOrigin):
        return FrobeniusStart(s_plus=s_plus, s_minus=s_minus, theta=0.0)
    if isinstance(policy, SquareIntegrableOnly):
        if policy.theta != 0.0 and s_minus <= -0.5:
            raise PolicyError(
                f"subdominant branch s = {s_minus} is not square integrable;"
                " mixing weight must be zero"
            )
        return FrobeniusStart(
            s_plus=s_plus, s_minus=s_minus, theta=policy.theta, r_ref=policy.r_ref
        )
    raise DomainError(f"unknown policy {type(policy).__name__}")


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def numerov_integrate(
    p: Potential,
    l: int,
    mass: float,
    energy: float,
    grid: RadialGrid,
    start: FrobeniusStart | None = None,
    direction: str = "outward",
) -> NumerovResult:
    """Fourth-order Numerov samples of u on the grid.

    Outward integration starts from the Frobenius branch values at the two
    innermost nodes; inward integration starts from the decaying tail at
    r_max, which requires the tail region to be classically forbidden
    (for potentials vanishing at infinity this is E < 0).
    """
    if direction not in ("outward", "inward"):
        raise DomainError(f"direction must be outward or inward, got {direction!r}")
    if direction == "outward" and start is None:
        raise DomainError("outward integration requires a FrobeniusStart")
    prob = _ShootingProblem(p, l, mass, grid, start, boxed=False)
    q = prob.q_of(energy)
    if direction == "outward":
        u0, u1 = prob.start_values(energy)
        u, resc = numerov_sweep(q, prob.h, u0, u1)
        return NumerovResult(u=u, rescaled=bool(resc), direction=direction)
    t0, t1 = prob.tail_values(q)
    u_rev, resc = numerov_sweep(q[::-1].copy(), prob.h, t0, t1)
    return NumerovResult(u=u_rev[::-1].copy(), rescaled=bool(resc), direction=direction)


def _guarded_mismatch(prob: _ShootingProblem, energy: float) -> float:
    # energies whose tail region is classically allowed at r_max cannot host
    # a bound state this grid resolves; skip them instead of aborting
    try:
        return prob.mismatch(energy)
    except NonDecayingTail:
        return math.nan


def _scan_and_bisect(prob: _ShootingProblem, window, k_max, prescan, rtol):
    e_lo, e_hi = window
    energies = np.linspace(e_lo, e_hi, prescan)
    cap = thread_cap()
    if cap > 1 and prescan >= 32:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            values = list(pool.map(lambda e: _guarded_mismatch(prob, e), energies))
    else:
        values = [_guarded_mismatch(prob, e) for e in energies]
    values = np.asarray(values)

    roots = []
    for i in range(prescan - 1):
        d_a, d_b = values[i], values[i + 1]
        if not (np.isfinite(d_a) and np.isfinite(d_b)):
            continue
        if d_a == 0.0:
            roots.append((float(energies[i]), 0.0, True))
            continue
        if d_a * d_b < 0.0:
            a, b = float(energies[i]), float(energies[i + 1])
            sign_a = d_a > 0.0
            converged = False
            for _ in range(_BISECT_MAX_ITER):
                mid = 0.5 * (a + b)
                if b - a <= rtol * max(1.0, abs(mid)):
                    converged = True
                    break
                d_m = prob.mismatch(mid)
                if d_m == 0.0:
                    a = b = mid
                    converged = True
                    break
                if (d_m > 0.0) == sign_a:
                    a = mid
                else:
                    b = mid
            roots.append((0.5 * (a + b), b - a, converged))
        if len(roots) >= k_max:
            break
    if values[-1] == 0.0 and len(roots) < k_max:
        roots.append((float(energies[-1]), 0.0, True))
    if not roots:
        raise WindowEmpty(
            f"no mismatch sign change in window ({e_lo}, {e_hi})"
        )
    return roots[:k_max]


def bound_states(
    p: Potential,
    l: int,
    mass: float,
    policy: BoundaryPolicy,
    window: tuple[float, float],
    k_max: int,
    grid: RadialGrid,
    *,
    boxed: bool | None = None,
    bisection_rtol: float = 1e-10,
    prescan: int = _PRESCAN_POINTS,
) -> Spectrum:
    """Up to k_max eigenvalues in the window, bracketed and bisected.

    A pure inverse-square potential has no discrete spectrum on the half
    line, so for it the problem is boxed by default: the inward solution
    starts from a hard Dirichlet wall at r_max (stated in the output).
    """
    e_lo, e_hi = window
    if not e_lo < e_hi:
        raise DomainError(f"need E_lo < E_hi, got {window}")
    if boxed is None:
        boxed = isinstance(p, InverseSquare)
    if not boxed and not isinstance(p, Harmonic) and e_hi >= 0:
        raise DomainError(
            "window must lie below the continuum threshold E = 0"
        )
    start = _start_from_policy(p, l, mass, policy)
    prob = _ShootingProblem(p, l, mass, grid, start, boxed)
    roots = _scan_and_bisect(prob, window, k_max, prescan, bisection_rtol)
    entries = []
    for k, (energy, width, converged) in enumerate(roots, start=1):
        u = prob.wavefunction(energy)
        nodes = int(count_sign_changes(u, 0, prob.n))
        entries.append(
            SpectrumEntry(
                k=k,
                energy=energy,
                node_count=nodes,
                converged=converged,
                bisection_width=width,
            )
        )
    return Spectrum(
        entries=tuple(entries),
        potential=format_potential(p),
        l=l,
        mass=mass,
        policy=format_policy(policy),
        grid=grid,
        window=(float(e_lo), float(e_hi)),
        boxed=boxed,
        rescaled=prob.rescaled,
    )


def policy_contrast(
    p: Potential,
    l: int,
    mass: float,
    theta_list,
    grid: RadialGrid,
    window: tuple[float, float],
    *,
    r_ref: float = 1.0,
    k_max: int = 1,
    bisection_rtol: float = 1e-10,
) -> list[Spectrum]:
    """Spectra under the Dirichlet gate and under each requested mixing angle.

    The first returned spectrum is the DirichletOrigin reference; one more
    follows per angle in theta_list, all on the same grid and window.
    """
    if not isinstance(p, (InverseSquare, RegularizedInverseSquare)):
        raise DomainError("policy contrast targets (regularized) inverse-square")
    report = indicial_exponents(classify_origin(p), l, mass)
    if report.fall_to_center:
        raise FallToCenter("no real exponents: cannot contrast policies")
    p_gap = 0.5 * (report.s_plus - report.s_minus)
    if not 0.0 < p_gap < 1.0:
        raise DomainError(
            f"exponent gap P = {p_gap} outside (0, 1): both-branch mixing"
            " is not square integrable"
        )
    spectra = [
        bound_states(
            p, l, mass, DirichletOrigin(), window, k_max, grid,
            bisection_rtol=bisection_rtol,
        )
    ]
    for theta in theta_list:
        spectra.append(
            bound_states(
                p, l, mass,
                SquareIntegrableOnly(theta=float(theta), r_ref=r_ref),
                window, k_max, grid,
                bisection_rtol=bisection_rtol,
            )
        )
    return spectra


def kg_bound_states(
    p: Coulomb,
    l: int,
    mass: float,
    policy: BoundaryPolicy,
    window: tuple[float, float],
    k_max: int,
    grid: RadialGrid,
    *,
    bisection_rtol: float = 1e-10,
    prescan: int = _PRESCAN_POINTS,
) -> Spectrum:
    """Bound states of the radial Klein-Gordon reduction for a Coulomb field.

    The equation is u'' + [(E - V)^2 - m^2 - l(l+1)/r^2] u = 0; the Coulomb
    coupling shifts the effective centrifugal term to l(l+1) - alpha^2, so
    alpha >= l + 1/2 is overcritical.  The scan window must lie in (0, m).
    """
    if not isinstance(p, Coulomb):
        raise DomainError("the Klein-Gordon mode supports the Coulomb variant only")
    e_lo, e_hi = window
    if not (0.0 < e_lo < e_hi < mass):
        raise DomainError(f"window must lie inside (0, m) = (0, {mass}), got {window}")
    start = _start_from_policy(p, l, mass, policy, equation="klein_gordon")
    prob = _ShootingProblem(p, l, mass, grid, start, boxed=False,
                            equation="klein_gordon")
    roots = _scan_and_bisect(prob, window, k_max, prescan, bisection_rtol)
    entries = []
    for k, (energy, width, converged) in enumerate(roots, start=1):
        u = prob.wavefunction(energy)
        nodes = int(count_sign_changes(u, 0, prob.n))
        entries.append(
            SpectrumEntry(k=k, energy=energy, node_count=nodes,
                          converged=converged, bisection_width=width)
        )
    return Spectrum(
        entries=tuple(entries),
        potential=format_potential(p),
        l=l,
        mass=mass,
        policy=format_policy(policy),
        grid=grid,
        window=(float(e_lo), float(e_hi)),
        boxed=False,
        equation="klein_gordon",
        rescaled=prob.rescaled,
    )


def solve_wavefunction(
    p: Potential,
    l: int,
    mass: float,
    policy: BoundaryPolicy,
    energy: float,
    grid: RadialGrid,
    *,
    boxed: bool | None = None,
    equation: str = "schrodinger",
) -> np.ndarray:
    """Normalized glued eigenfunction at a (previously solved) energy."""
    if boxed is None:
        boxed = isinstance(p, InverseSquare) and equation == "schrodinger"
    start = _start_from_policy(p, l, mass, policy, equation=equation)
    prob = _ShootingProblem(p, l, mass, grid, start, boxed, equation=equation)
    return prob.wavefunction(energy)


def origin_slope_fit(
    u: np.ndarray,
    grid: RadialGrid,
    fit_window: tuple[float, float],
) -> OriginSlopeFit:
    """Least-squares slope of log u vs log r over the window.

    The window must sit where the origin power law dominates; samples must
    not change sign there.
    """
    r = grid.nodes()
    u = np.asarray(u, dtype=float)
    r_a, r_b = fit_window
    mask = (r >= r_a) & (r <= r_b)
    if int(mask.sum()) < 3:
        raise DomainError(f"fit window {fit_window} contains fewer than 3 nodes")
    uu = u[mask]
    if np.any(uu == 0.0) or (np.any(uu > 0) and np.any(uu < 0)):
        raise NonPositiveSamples("samples change sign inside the fit window")
    x = np.log(r[mask])
    y = np.log(np.abs(uu))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    dof = max(len(x) - 2, 1)
    sxx = float(np.sum((x - x.mean()) ** 2))
    stderr = math.sqrt(float(np.sum(resid**2)) / dof / sxx)
    return OriginSlopeFit(
        exponent=float(slope),
        stderr=stderr,
        ci95=1.96 * stderr,
        n_points=int(mask.sum()),
    )
