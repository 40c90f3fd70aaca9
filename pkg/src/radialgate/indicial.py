"""Frobenius indicial exponents at the origin and boundary-policy admissibility.

Near r = 0 the reduced radial function behaves like a combination of two
power-law branches r**s_plus and r**s_minus.  Which branches a calculation
may keep depends on the boundary policy:

* ``DirichletOrigin``  - u(0) = 0 is required, so a branch is admissible
  iff its exponent is positive;
* ``SquareIntegrableOnly`` - only the norm matters, so a branch is
  admissible iff s > -1/2, and a mixing angle selects the combination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import (
    DomainError,
    FallToCenter,
    PotentialParseError,
    StronglySingularUnsupported,
)
from .potentials import OriginClass, Regular, StronglySingular, TransitiveSingular

__all__ = [
    "BoundaryPolicy",
    "DirichletOrigin",
    "SquareIntegrableOnly",
    "ExponentFlags",
    "IndicialReport",
    "indicial_exponents",
    "admissibility",
    "parse_policy",
    "format_policy",
]


class BoundaryPolicy:
    """Marker base class for origin boundary policies."""


@dataclass(frozen=True)
class DirichletOrigin(BoundaryPolicy):
    """Require u(0) = 0: only branches with s > 0 are admissible."""


@dataclass(frozen=True)
class SquareIntegrableOnly(BoundaryPolicy):
    """Admit every square-integrable branch; theta mixes the two.

    theta in [0, pi); weight cos(theta) on the dominant branch and
    sin(theta) on the subdominant one, made dimensionless with r_ref.
    """

    theta: float = 0.0
    r_ref: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.theta < math.pi):
            raise DomainError(f"theta must lie in [0, pi), got {self.theta}")
        if not self.r_ref > 0:
            raise DomainError(f"r_ref must be positive, got {self.r_ref}")


@dataclass(frozen=True)
class ExponentFlags:
    square_integrable: bool
    vanishes_at_origin: bool
    admissible: bool


@dataclass(frozen=True)
class IndicialReport:
    """Exponent pair, gap parameter, and per-branch admissibility flags.

    ``p_value`` is present only for the transitive-singular case and equals
    half the exponent gap, sqrt((l + 1/2)**2 - 2 m v0).  Flags are None
    until :func:`admissibility` fills them for a concrete policy.
    """

    s_plus: float | None
    s_minus: float | None
    p_value: float | None
    fall_to_center: bool = False
    degenerate: bool = False
    flags_plus: ExponentFlags | None = None
    flags_minus: ExponentFlags | None = None
    ambiguous: bool | None = None
    policy: str | None = None

    def to_dict(self) -> dict:
        d = {
            "s_plus": self.s_plus,
            "s_minus": self.s_minus,
            "p_value": self.p_value,
            "fall_to_center": self.fall_to_center,
            "degenerate": self.degenerate,
            "ambiguous": self.ambiguous,
            "policy": self.policy,
        }
        for tag, flags in (("plus", self.flags_plus), ("minus", self.flags_minus)):
            if flags is not None:
                d[f"square_integrable_{tag}"] = flags.square_integrable
                d[f"vanishes_at_origin_{tag}"] = flags.vanishes_at_origin
                d[f"admissible_{tag}"] = flags.admissible
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "IndicialReport":
        def flags(tag):
            key = f"admissible_{tag}"
            if key not in d:
                return None
            return ExponentFlags(
                bool(d[f"square_integrable_{tag}"]),
                bool(d[f"vanishes_at_origin_{tag}"]),
                bool(d[key]),
            )

        opt = lambda k: None if d.get(k) is None else float(d[k])
        return cls(
            s_plus=opt("s_plus"),
            s_minus=opt("s_minus"),
            p_value=opt("p_value"),
            fall_to_center=bool(d["fall_to_center"]),
            degenerate=bool(d.get("degenerate", False)),
            flags_plus=flags("plus"),
            flags_minus=flags("minus"),
            ambiguous=d.get("ambiguous"),
            policy=d.get("policy"),
        )


def indicial_exponents(origin_class: OriginClass, l: int, mass: float = 1.0) -> IndicialReport:
    """Solve the indicial equation s(s-1) = l(l+1) - 2 m v0 at the origin.

    Regular potentials give (l+1, -l).  Transitive-singular ones give
    1/2 +- P with P = sqrt((l+1/2)**2 - 2 m v0); when 2 m v0 exceeds
    (l+1/2)**2 the exponents turn complex and the report only flags
    fall_to_center.  P = 0 is reported as a degenerate double root.
    """
    if not (isinstance(l, int) and l >= 0):
        raise DomainError(f"l must be a non-negative integer, got {l!r}")
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass}")
    if isinstance(origin_class, StronglySingular):
        raise StronglySingularUnsupported(
            f"no two-term indicial equation for 1/r^{origin_class.n}"
        )
    if isinstance(origin_class, Regular):
        return IndicialReport(s_plus=float(l + 1), s_minus=float(-l), p_value=None)
    if isinstance(origin_class, TransitiveSingular):
        disc = (l + 0.5) ** 2 - 2.0 * mass * origin_class.v0
        if disc < 0:
            return IndicialReport(
                s_plus=None, s_minus=None, p_value=None, fall_to_center=True
            )
        p = math.sqrt(disc)
        return IndicialReport(
            s_plus=0.5 + p, s_minus=0.5 - p, p_value=p, degenerate=(p == 0.0)
        )
    raise DomainError(f"unknown origin class {type(origin_class).__name__}")


def _branch_flags(s: float, policy: BoundaryPolicy) -> ExponentFlags:
    square_integrable = s > -0.5  # int_0 r^{2s} dr finite; s = -1/2 diverges
    vanishes = s > 0.0
    if isinstance(policy, DirichletOrigin):
        admissible = vanishes
    else:
        admissible = square_integrable
    return ExponentFlags(square_integrable, vanishes, admissible)


def admissibility(report: IndicialReport, policy: BoundaryPolicy) -> IndicialReport:
    """Fill per-branch admissibility flags for a concrete policy.

    ``ambiguous`` is True when both branches pass the policy's gate, i.e.
    the policy alone does not select the origin behavior.
    """
    if report.fall_to_center:
        raise FallToCenter("admissibility undefined: exponents are complex")
    fp = _branch_flags(report.s_plus, policy)
    fm = _branch_flags(report.s_minus, policy)
    return replace(
        report,
        flags_plus=fp,
        flags_minus=fm,
        ambiguous=fp.admissible and fm.admissible,
        policy=format_policy(policy),
    )


def parse_policy(text: str) -> BoundaryPolicy:
    """Parse ``dirichlet`` or ``si:theta=<f>,rref=<f>``."""
    if text == "dirichlet":
        return DirichletOrigin()
    head, sep, rest = text.partition(":")
    if head != "si" or not sep:
        raise PotentialParseError(
            f"unknown policy {text!r} (expected 'dirichlet' or 'si:theta=..,rref=..')"
        )
    values = {"theta": 0.0, "rref": 1.0}
    pos = len(head) + 1
    for token in rest.split(","):
        key, eq, val = token.partition("=")
        if not eq or key not in values:
            raise PotentialParseError(
                f"bad token {token!r} at position {pos} in {text!r}"
            )
        try:
            values[key] = float(val)
        except ValueError:
            raise PotentialParseError(
                f"bad float {val!r} at position {pos + len(key) + 1} in {text!r}"
            ) from None
        pos += len(token) + 1
    return SquareIntegrableOnly(theta=values["theta"], r_ref=values["rref"])


def format_policy(policy: BoundaryPolicy) -> str:
    if isinstance(policy, DirichletOrigin):
        return "dirichlet"
    if isinstance(policy, SquareIntegrableOnly):
        return f"si:theta={policy.theta:.12g},rref={policy.r_ref:.12g}"
    raise DomainError(f"unknown policy {type(policy).__name__}")
