"""Central potential models, their origin classification, and radial grids.

Every potential is an immutable value; ``evaluate_potential`` accepts scalars
or numpy arrays.  Units: hbar = 1, the particle mass is a runtime parameter
(default 1), energies and lengths are reciprocal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PotentialParseError, Unclassifiable

__all__ = [
    "Potential",
    "Coulomb",
    "InverseSquare",
    "PowerLaw",
    "Harmonic",
    "RegularizedInverseSquare",
    "OriginClass",
    "Regular",
    "TransitiveSingular",
    "StronglySingular",
    "RadialGrid",
    "evaluate_potential",
    "classify_origin",
    "parse_potential",
    "format_potential",
]


class Potential:
    """Marker base class for the potential variants."""

    #: True when V(0) is finite, so r = 0 is an allowed evaluation point.
    finite_at_origin = False

    def __call__(self, r, mass: float = 1.0):
        return evaluate_potential(self, r, mass)


@dataclass(frozen=True)
class Coulomb(Potential):
    """V(r) = -alpha / r."""

    alpha: float


@dataclass(frozen=True)
class InverseSquare(Potential):
    """V(r) = -v0 / r**2.

    ``v0 > 0`` is the attractive case; ``v0 < 0`` encodes the repulsive
    inverse-square potential with the same sign convention carried through
    to the indicial analysis.
    """

    v0: float


@dataclass(frozen=True)
class PowerLaw(Potential):
    """V(r) = g / r**n with n > 0."""

    g: float
    n: float

    def __post_init__(self):
        if not self.n > 0:
            raise DomainError(f"PowerLaw exponent must be positive, got n={self.n}")


@dataclass(frozen=True)
class Harmonic(Potential):
    """V(r) = (1/2) m omega**2 r**2 (the particle mass enters at evaluation)."""

    omega: float
    finite_at_origin = True


@dataclass(frozen=True)
class RegularizedInverseSquare(Potential):
    """Inverse-square tail with a constant plateau inside r_core.

    V(r) = -v0/r**2 for r >= r_core and -v0/r_core**2 for r < r_core.
    """

    v0: float
    r_core: float
    finite_at_origin = True

    def __post_init__(self):
        if not self.r_core > 0:
            raise DomainError(f"r_core must be positive, got {self.r_core}")


class OriginClass:
    """Marker base class for origin-behavior classes."""


@dataclass(frozen=True)
class Regular(OriginClass):
    """r**2 V(r) -> 0 at the origin."""


@dataclass(frozen=True)
class TransitiveSingular(OriginClass):
    """r**2 V(r) -> -v0 at the origin (v0 > 0: attractive)."""

    v0: float


@dataclass(frozen=True)
class StronglySingular(OriginClass):
    """Power-law singularity steeper than 1/r**2."""

    n: float
    g: float


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid on [r_min, r_max] with n_points nodes.

    Node i sits at r_min + i*h with h = (r_max - r_min)/(n_points - 1).
    The grid never contains r = 0; origin behavior is injected analytically
    by the solver's series starts.
    """

    r_min: float
    r_max: float
    n_points: int

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise DomainError(
                f"need 0 < r_min < r_max, got r_min={self.r_min}, r_max={self.r_max}"
            )
        if self.n_points < 16:
            raise DomainError(f"need n_points >= 16, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    def nodes(self) -> np.ndarray:
        return self.r_min + self.spacing * np.arange(self.n_points)

    def to_dict(self) -> dict:
        return {"r_min": self.r_min, "r_max": self.r_max, "n_points": self.n_points}

    @classmethod
    def from_dict(cls, d: dict) -> "RadialGrid":
        return cls(float(d["r_min"]), float(d["r_max"]), int(d["n_points"]))


def evaluate_potential(p: Potential, r, mass: float = 1.0):
    """Evaluate V(r) for a scalar or array radius.

    Radii must be positive; r = 0 is allowed only for variants finite at
    the origin (Harmonic, RegularizedInverseSquare).  ``mass`` enters only
    the harmonic variant, V = (1/2) mass omega^2 r^2.
    """
    r = np.asarray(r, dtype=float)
    rmin = r.min() if r.ndim else float(r)
    if rmin < 0 or (rmin == 0 and not p.finite_at_origin):
        raise DomainError(
            f"potential {type(p).__name__} is not defined at r = {rmin}"
        )
    if isinstance(p, Coulomb):
        out = -p.alpha / r
    elif isinstance(p, InverseSquare):
        out = -p.v0 / (r * r)
    elif isinstance(p, PowerLaw):
        out = p.g * r ** (-p.n)
    elif isinstance(p, Harmonic):
        out = 0.5 * mass * p.omega**2 * r * r
    elif isinstance(p, RegularizedInverseSquare):
        out = np.where(r >= p.r_core, -p.v0 / np.maximum(r, p.r_core) ** 2,
                       -p.v0 / p.r_core**2)
    else:
        raise DomainError(f"unknown potential variant {type(p).__name__}")
    return out if out.ndim else float(out)


def classify_origin(p: Potential) -> OriginClass:
    """Classify the origin behavior of a potential by lim r**2 V(r).

    Regular when the limit is 0, TransitiveSingular when it is a nonzero
    constant -v0, StronglySingular for power laws steeper than 1/r**2.
    A repulsive 1/r**2 written as a PowerLaw (g > 0, n = 2) is rejected;
    use InverseSquare with v0 < 0 to carry the sign explicitly.
    """
    if isinstance(p, (Coulomb, Harmonic, RegularizedInverseSquare)):
        return Regular()
    if isinstance(p, InverseSquare):
        return TransitiveSingular(v0=p.v0)
    if isinstance(p, PowerLaw):
        if p.g == 0.0 or p.n < 2:
            return Regular()
        if p.n == 2:
            if p.g > 0:
                raise Unclassifiable(
                    "repulsive 1/r^2 as PowerLaw(g>0, n=2): use InverseSquare"
                    " with v0 < 0 instead"
                )
            return TransitiveSingular(v0=-p.g)
        return StronglySingular(n=p.n, g=p.g)
    raise Unclassifiable(f"unknown potential variant {type(p).__name__}")


# ---------------------------------------------------------------------------
# potential mini-grammar: coulomb:alpha=<f> | invsq:v0=<f> | power:g=<f>,n=<f>
#                         harmonic:omega=<f> | invsq-reg:v0=<f>,rcore=<f>
# ---------------------------------------------------------------------------

_GRAMMAR = {
    "coulomb": ("alpha",),
    "invsq": ("v0",),
    "power": ("g", "n"),
    "harmonic": ("omega",),
    "invsq-reg": ("v0", "rcore"),
}


def parse_potential(text: str) -> Potential:
    """Parse a potential spec string; errors name the offending token."""
    head, sep, rest = text.partition(":")
    if head not in _GRAMMAR:
        raise PotentialParseError(
            f"unknown potential kind {head!r} at position 0 in {text!r}"
        )
    if not sep:
        raise PotentialParseError(f"missing ':' after {head!r} in {text!r}")
    wanted = _GRAMMAR[head]
    values = {}
    pos = len(head) + 1
    for token in rest.split(","):
        key, eq, val = token.partition("=")
        if not eq or key not in wanted:
            raise PotentialParseError(
                f"bad token {token!r} at position {pos} in {text!r}"
                f" (expected {'/'.join(wanted)}=<float>)"
            )
        try:
            values[key] = float(val)
        except ValueError:
            raise PotentialParseError(
                f"bad float {val!r} at position {pos + len(key) + 1} in {text!r}"
            ) from None
        if not np.isfinite(values[key]):
            raise PotentialParseError(
                f"non-finite value {val!r} at position {pos + len(key) + 1} in {text!r}"
            )
        pos += len(token) + 1
    missing = [k for k in wanted if k not in values]
    if missing:
        raise PotentialParseError(f"missing field(s) {missing} in {text!r}")
    if head == "coulomb":
        return Coulomb(alpha=values["alpha"])
    if head == "invsq":
        return InverseSquare(v0=values["v0"])
    if head == "power":
        return PowerLaw(g=values["g"], n=values["n"])
    if head == "harmonic":
        return Harmonic(omega=values["omega"])
    return RegularizedInverseSquare(v0=values["v0"], r_core=values["rcore"])


def format_potential(p: Potential) -> str:
    """Inverse of parse_potential (12 significant digits)."""
    f = lambda x: f"{x:.12g}"
    if isinstance(p, Coulomb):
        return f"coulomb:alpha={f(p.alpha)}"
    if isinstance(p, InverseSquare):
        return f"invsq:v0={f(p.v0)}"
    if isinstance(p, PowerLaw):
        return f"power:g={f(p.g)},n={f(p.n)}"
    if isinstance(p, Harmonic):
        return f"harmonic:omega={f(p.omega)}"
    if isinstance(p, RegularizedInverseSquare):
        return f"invsq-reg:v0={f(p.v0)},rcore={f(p.r_core)}"
    raise DomainError(f"unknown potential variant {type(p).__name__}")
