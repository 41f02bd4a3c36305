"""Exception types shared across the package."""


class ScatterlabError(Exception):
    """Base class for package-specific failures."""


class ValidationError(ScatterlabError, ValueError):
    """A term or region violates a structural invariant."""


class UndecidablePairError(ScatterlabError):
    """meets/intersection was asked about a pair outside the decidable fragment."""


class HorizonExceededError(ScatterlabError):
    """An iteration bound (k_max, depth cap) was reached before stabilisation."""


class UnsupportedSplitError(ScatterlabError):
    """kernel_split applied to a term with no defined kernel/scattered partition."""


class NotIntervalUnionError(ValidationError):
    """boundary() needs a term all of whose components are nondegenerate intervals."""


class NotSupportedError(ScatterlabError):
    """Operation intentionally refuses this term shape (e.g. components of a Cantor leaf)."""


class ProfileMismatchError(ScatterlabError):
    """Component geometry does not match the expected block grammar."""


class NotWellOrderedError(ScatterlabError):
    """Order-type requested for a term that is not compact well-ordered."""


class ChainIntractableError(ScatterlabError):
    """Longest-chain search refused: component too large and not grid-shaped."""


class NotTotallyDisconnectedError(ValidationError):
    """discrete_approximant() needs a compact totally disconnected scaffold."""
