"""Exception types shared across the package."""


class BtcyclesError(Exception):
    """Base class for all package errors."""


class IngestError(BtcyclesError):
    """Problem input failed validation; message names the offending field."""


class NegativeValuation(BtcyclesError):
    """Residue reduction was asked for a scalar outside the valuation ring."""


class RankDeficient(BtcyclesError):
    """A basis matrix had linearly dependent columns."""


class NotInSpan(BtcyclesError):
    """A vector lies outside the span of the given lattice."""


class NotContained(BtcyclesError):
    """Elementary divisors were requested for a non-inclusion of lattices."""


class NotAVertex(BtcyclesError):
    """A lattice failed vertex certification."""


class SingularT(IngestError):
    """The fundamental matrix of the special vectors is singular."""


class NonIntegralT(IngestError):
    """The fundamental matrix has a negative-valuation entry."""


class SeedFailure(BtcyclesError):
    """The canonical seed construction did not produce a vertex."""


class TooLarge(BtcyclesError):
    """An enumeration exceeded its configured work cap."""


class WindowTooSmall(BtcyclesError):
    """The requested window cannot certify the answer at the asked radius."""


class Unreachable:
    """Result of a bounded distance search that exhausted its bound."""

    def __init__(self, bound):
        self.bound = bound

    def __repr__(self):
        return "Unreachable(bound=%d)" % self.bound

    def __eq__(self, other):
        return isinstance(other, Unreachable) and self.bound == other.bound
