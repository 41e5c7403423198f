"""Exception types raised by the library."""


class GifsError(Exception):
    """Base class for all library errors."""


class NonExpandingMatrix(GifsError):
    """The system matrix has an eigenvalue of modulus <= 1."""


class EmptyVertex(GifsError):
    """A vertex has no outgoing edge."""


class RankGap(GifsError):
    """Outgoing edge ranks of some vertex are not contiguous from 1."""


class DepthOverflow(GifsError):
    """Walk enumeration would exceed the configured cap."""


class NotPrimitive(GifsError):
    """The associated matrix is not primitive."""


class NoConvergence(GifsError):
    """Eigenvalue iteration hit its iteration cap."""


class SingularSystem(GifsError):
    """A fixed-point linear solve was singular (upstream invariant broken)."""


class WindowExhausted(GifsError):
    """Pseudo-norm membership still active at the truncation window edge."""


class EpsOutOfRange(GifsError):
    """Comparability epsilon outside (0, lambda_min - 1)."""


class OutOfRange(GifsError):
    """Parameter outside the interval it addresses."""


class NotABreakpoint(GifsError):
    """Two-sided addressing requested away from any breakpoint."""


class ChainConditionUnverified(GifsError):
    """Refused to parametrize a system whose chain condition did not pass."""


class ParseError(GifsError):
    """System description file is malformed."""


class ValidationError(GifsError):
    """System description decoded but failed structural validation."""


class UnknownSymbol(GifsError):
    """Substitution rule references an undefined vertex or map symbol."""


class EmptyRule(GifsError):
    """Substitution rule has an empty right-hand side."""
