"""Error types raised by the evaluation routines."""


class AWError(Exception):
    """Base class for all library errors."""


class DomainError(AWError, ValueError):
    """Argument outside the domain of a formula."""


class PoleHit(AWError, ValueError):
    """Evaluation point lies (numerically) on a pole."""


class ZeroHit(AWError, ZeroDivisionError):
    """Continuation step would divide by a vanishing factor."""


class SingularPoint(AWError, ValueError):
    """A rational coefficient has a vanishing denominator."""


class ThetaZero(SingularPoint):
    """A theta function in a denominator vanishes."""


class InfiniteProductDivergent(AWError, ValueError):
    """Infinite q-product requested with |q| >= 1."""


class SeriesDivergent(AWError, ValueError):
    """Nonterminating series outside its disc of convergence."""


class NonConvergence(AWError, RuntimeError):
    """Iterative refinement did not reach the requested accuracy."""


class CapExceeded(NonConvergence):
    """A hard iteration cap was hit."""


class StripViolation(AWError, ValueError):
    """Integral representation evaluated outside its strip."""


class WindowViolation(AWError, ValueError):
    """Parameters outside the admissible window of a construction."""


class DegenerateHeights(AWError, ValueError):
    """Two singular half lines of opposite direction share a height."""


class InfeasibleSeparation(AWError, ValueError):
    """No separating contour exists with the requested clearance."""


class ConfigError(AWError, ValueError):
    """Invalid command line configuration."""
