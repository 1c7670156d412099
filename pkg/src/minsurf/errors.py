"""Exception hierarchy shared by all minsurf modules."""


class MinsurfError(Exception):
    """Base class for every error raised by this package."""


class DomainViolation(MinsurfError, ValueError):
    """A family parameter lies outside its admissible range."""


class PoleProximity(MinsurfError, ValueError):
    """An evaluation point is too close to a pole or puncture."""


class BranchCutViolation(MinsurfError, ValueError):
    """A point lies on a branch cut of the multivalued function w."""


class NonConvergent(MinsurfError, RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget."""


class SingularityOnPath(MinsurfError, ValueError):
    """An integration path runs through a declared puncture."""


class SeamMismatch(MinsurfError, RuntimeError):
    """Replicated copies of a fundamental piece fail to meet along a seam."""
