"""Numerical probes for the point defect of the radial Laplacian identity.

Acting with the radial Laplacian on u(r)/r and with (1/r) d^2/dr^2 on u
gives the same function everywhere except the origin, where the two differ
by a point source of strength -4*pi*u(0).  This module measures that defect
on sampled data:

* :func:`numeric_delta_residual` integrates the difference over a small
  sphere in flux form and compares it with -4*pi*u(0);
* :func:`identity_defect_away_from_origin` checks that the two operators
  agree pointwise away from the origin at O(h^2);
* :func:`asymptotic_origin_limit` evaluates the closed-form small-sphere
  bracket for power-law data u ~ r^s, V ~ g/r^n and classifies its limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridTooCoarse, LogCase
from .potentials import RadialGrid

__all__ = [
    "ResidualReport",
    "LimitClass",
    "Zero",
    "Finite",
    "Infinite",
    "numeric_delta_residual",
    "identity_defect_away_from_origin",
    "asymptotic_origin_limit",
    "min_exponent_bound",
    "extrapolate_to_origin",
]

FOUR_PI = 4.0 * math.pi

#: predicted defect per unit u(0) under the two delta-reduction conventions.
#: "4pi" reads the radial delta with unit mass on the half line (default);
#: "2pi" keeps unit mass on the full line, doubling the predicted constant.
_CONVENTIONS = {"4pi": -FOUR_PI, "2pi": -2.0 * FOUR_PI}


@dataclass(frozen=True)
class ResidualReport:
    """Small-sphere defect integral vs the predicted -4*pi*u(0)."""

    probe_radius: float
    integral: float
    predicted: float
    relative_error: float
    grid_spacing: float
    convention: str = "4pi"

    def __post_init__(self):
        if self.probe_radius < 4.0 * self.grid_spacing:
            raise GridTooCoarse(
                f"probe radius {self.probe_radius} < 4 h = {4 * self.grid_spacing}"
            )

    def to_dict(self) -> dict:
        return {
            "probe_radius": self.probe_radius,
            "integral": self.integral,
            "predicted": self.predicted,
            "relative_error": self.relative_error,
            "grid_spacing": self.grid_spacing,
            "convention": self.convention,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ResidualReport":
        return cls(
            probe_radius=float(d["probe_radius"]),
            integral=float(d["integral"]),
            predicted=float(d["predicted"]),
            relative_error=float(d["relative_error"]),
            grid_spacing=float(d["grid_spacing"]),
            convention=str(d.get("convention", "4pi")),
        )


class LimitClass:
    """Marker base class for small-radius limit classifications."""


@dataclass(frozen=True)
class Zero(LimitClass):
    pass


@dataclass(frozen=True)
class Finite(LimitClass):
    value: float


@dataclass(frozen=True)
class Infinite(LimitClass):
    pass


def extrapolate_to_origin(r: np.ndarray, u: np.ndarray) -> float:
    """Quadratic (3-point Richardson) extrapolation of samples to r = 0."""
    r0, r1, r2 = float(r[0]), float(r[1]), float(r[2])
    l0 = r1 * r2 / ((r0 - r1) * (r0 - r2))
    l1 = r0 * r2 / ((r1 - r0) * (r1 - r2))
    l2 = r0 * r1 / ((r2 - r0) * (r2 - r1))
    return float(u[0] * l0 + u[1] * l1 + u[2] * l2)


def numeric_delta_residual(
    u: np.ndarray,
    grid: RadialGrid,
    probe_radius: float,
    convention: str = "4pi",
) -> ResidualReport:
    """Integrate the operator defect over a sphere of the given radius.

    The volume integral is evaluated in flux form,

        4*pi * [ a^2 (u/r)'(a)  -  int_0^a u''(r) r dr ],

    with the derivative by central differences and the radial integral by
    the trapezoid rule (the [0, r_min] stub uses the fact that u'' r -> 0).
    u(0) is obtained by 3-point extrapolation of the smallest grid nodes,
    so the report is self-contained: analytically the integral equals
    -4*pi*u(0) for every probe radius.
    """
    if convention not in _CONVENTIONS:
        raise DomainError(f"unknown delta convention {convention!r}")
    u = np.asarray(u, dtype=float)
    if u.shape != (grid.n_points,):
        raise DomainError("u must be sampled on the grid nodes")
    h = grid.spacing
    if probe_radius < 4.0 * h:
        raise GridTooCoarse(f"probe radius {probe_radius} < 4 h = {4 * h}")
    if probe_radius > grid.r_max - h:
        raise DomainError(
            f"probe radius {probe_radius} needs a node above it; r_max = {grid.r_max}"
        )
    r = grid.nodes()
    ia = int(round((probe_radius - grid.r_min) / h))
    ia = min(max(ia, 1), grid.n_points - 2)
    a = r[ia]

    w = u / r
    flux = a * a * (w[ia + 1] - w[ia - 1]) / (2.0 * h)

    upp = np.empty(ia + 1)
    upp[1:] = (u[2 : ia + 2] - 2.0 * u[1 : ia + 1] + u[: ia]) / (h * h)
    # one-sided second difference at the innermost node; weighted by r_min
    upp[0] = (u[0] - 2.0 * u[1] + u[2]) / (h * h)
    integrand = upp * r[: ia + 1]
    volume = np.trapezoid(integrand, dx=h) + 0.5 * grid.r_min * integrand[0]

    integral = FOUR_PI * (flux - volume)
    u0 = extrapolate_to_origin(r, u)
    predicted = _CONVENTIONS[convention] * u0
    rel = abs(integral - predicted) / max(abs(predicted), 1e-300)
    return ResidualReport(
        probe_radius=float(a),
        integral=float(integral),
        predicted=float(predicted),
        relative_error=float(rel),
        grid_spacing=h,
        convention=convention,
    )


def identity_defect_away_from_origin(
    u: np.ndarray, grid: RadialGrid, r_low: float
) -> float:
    """Max-norm difference of the two operator forms on nodes r >= r_low.

    The radial Laplacian is discretized in its defining conservative form,

        (1/r^2) d/dr (r^2 dw/dr)  ->  [r_{i+1/2}^2 (w_{i+1} - w_i)
                                       - r_{i-1/2}^2 (w_i - w_{i-1})] / (h^2 r_i^2),

    the second form as (1/r) times the central second difference of u.
    For smooth u the difference decays as O(h^2) (truncation h^2 w''/(4 r^2));
    for u = r^2 both stencils are exact and the defect vanishes.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (grid.n_points,):
        raise DomainError("u must be sampled on the grid nodes")
    h = grid.spacing
    if r_low < grid.r_min + 2.0 * h:
        raise DomainError(f"need r_low >= r_min + 2h = {grid.r_min + 2 * h}")
    r = grid.nodes()
    w = u / r
    rp = r[1:-1] + 0.5 * h
    rm_half = r[1:-1] - 0.5 * h
    lap = (rp * rp * (w[2:] - w[1:-1]) - rm_half * rm_half * (w[1:-1] - w[:-2])) / (
        h * h * r[1:-1] * r[1:-1]
    )
    upp = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    defect = lap - upp / r[1:-1]
    i0 = max(int(math.ceil((r_low - grid.r_min) / h)), 1)
    return float(np.max(np.abs(defect[i0 - 1 : grid.n_points - 2])))


def asymptotic_origin_limit(
    s: float,
    l: int,
    n: float,
    g: float,
    mass: float,
    energy: float,
    a: float,
) -> tuple[float, LimitClass]:
    """Evaluate the small-sphere bracket for u ~ r^s, V ~ g/r^n at radius a.

    The bracket is

        (s(s-1) - l(l+1))/s * a^s + 2mE/(s+2) * a^(s+2) - 2mg/(s+2-n) * a^(s+2-n)

    and the classification is its a -> 0 limit: Zero when every surviving
    term has a positive exponent, Infinite when any surviving exponent is
    negative.  Degenerate denominators make the antiderivative logarithmic
    and raise :class:`LogCase`, except s = 0 with g = 0 and l = 0 where the
    limit of the first coefficient exists and the bracket stays finite.
    """
    if not a > 0:
        raise DomainError(f"probe radius must be positive, got {a}")
    if not (isinstance(l, int) and l >= 0):
        raise DomainError(f"l must be a non-negative integer, got {l!r}")

    if s == 0.0:
        if g != 0.0:
            raise LogCase("s = 0 with g != 0: the potential term is logarithmic")
        if l > 0:
            raise LogCase("s = 0 with l > 0: the centrifugal term is logarithmic")
        # lim_{s->0} (s(s-1) - 0)/s = -1; remaining term is 2mE/(s+2) a^2
        value = -1.0 + mass * energy * a * a
        return value, Finite(value=-1.0)
    if s + 2.0 - n == 0.0 and g != 0.0:
        raise LogCase("s + 2 - n = 0: the potential term is logarithmic")
    if s + 2.0 == 0.0 and energy != 0.0:
        raise LogCase("s = -2: the energy term is logarithmic")

    terms = []  # (coefficient, exponent)
    c1 = (s * (s - 1.0) - l * (l + 1.0)) / s
    terms.append((c1, s))
    if energy != 0.0:
        terms.append((2.0 * mass * energy / (s + 2.0), s + 2.0))
    if g != 0.0:
        terms.append((-2.0 * mass * g / (s + 2.0 - n), s + 2.0 - n))

    value = sum(c * a**e for c, e in terms if c != 0.0)
    surviving = [e for c, e in terms if c != 0.0]
    if any(e < 0.0 for e in surviving):
        cls: LimitClass = Infinite()
    elif any(e == 0.0 for e in surviving):
        cls = Finite(value=sum(c for c, e in terms if c != 0.0 and e == 0.0))
    else:
        cls = Zero()
    return float(value), cls


def min_exponent_bound(n: float) -> float:
    """Strict lower bound on the leading exponent s for a vanishing defect.

    For a potential ~ 1/r^n the small-sphere bracket vanishes only when
    s + 2 - n > 0, i.e. s > n - 2.
    """
    if n < 0:
        raise DomainError(f"potential exponent must be non-negative, got {n}")
    return n - 2.0
