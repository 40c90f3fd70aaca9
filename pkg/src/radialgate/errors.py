"""Exception hierarchy shared by all radialgate modules."""


class RadialGateError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RadialGateError):
    """An argument lies outside the mathematical domain of an operation."""


class PotentialParseError(RadialGateError):
    """A potential/policy/grid spec string could not be parsed."""


class Unclassifiable(DomainError):
    """The potential's origin behavior has no supported classification."""


class StronglySingularUnsupported(DomainError):
    """Indicial analysis is not defined for potentials more singular than 1/r^2."""


class FallToCenter(DomainError):
    """The indicial exponents are complex: no lowest state exists."""


class KGFallToCenter(FallToCenter):
    """Klein-Gordon coupling too strong: effective centrifugal term overcritical."""


class GridTooCoarse(DomainError):
    """The radial grid does not resolve the requested probe or window."""


class LogCase(DomainError):
    """A closed-form antiderivative degenerates to a logarithm."""


class NonDecayingTail(DomainError):
    """Inward integration requested where the tail region is classically allowed."""


class WindowEmpty(DomainError):
    """No eigenvalue bracket found inside the requested energy window."""


class PolicyError(DomainError):
    """A boundary policy requests weight on a branch it does not admit."""


class NonPositiveSamples(DomainError):
    """A log-log fit window contains a sign change or zeros."""


class NoConvergence(RadialGateError):
    """An iterative eigensolver exhausted its iteration budget."""
