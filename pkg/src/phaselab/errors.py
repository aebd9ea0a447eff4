"""Shared exception types."""


class PhaseLabError(Exception):
    """Base class for all library errors."""


class TailNotPreserved(PhaseLabError):
    """A flow acts nontrivially on coordinates a set leaves at the tail cell."""


class LeftPhaseSpace(PhaseLabError):
    """Trajectory evaluated outside its interval of existence in the l2 phase space."""


class DegenerateSet(PhaseLabError):
    """Point outside the hyperbolic action-angle chart."""


class UnsupportedCombination(PhaseLabError):
    """No closed form is implemented for this envelope/frequency pair."""


class UnsupportedSet(PhaseLabError):
    """Set class without a classical averaged density."""


class HoleLimitExceeded(PhaseLabError):
    """Porous bar exceeds the inclusion-exclusion hole budget."""


class SpaceMismatch(PhaseLabError):
    """Operands live over different measure rings."""


class ConfigError(PhaseLabError):
    """Invalid experiment configuration."""
