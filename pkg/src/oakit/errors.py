"""Exception types shared across the toolkit."""


class OakitError(Exception):
    """Base class for every error raised by oakit."""


class AntisymmetryViolation(OakitError):
    """The transitive closure of the given pairs contains a cycle."""


class NotALattice(OakitError):
    """Some pair of elements lacks a meet or a join, or there is no bottom/top."""


class NotAFrame(OakitError):
    """The operation needs a validated Heyting implication and none exists."""


class SizeCap(OakitError):
    """The requested construction exceeds the configured size cap."""


class NotATopology(OakitError):
    """The open-set family is not closed under the required operations."""


class NotABase(OakitError):
    """The given subset fails the generation condition p = join of base elements below p."""


class NotJoinPreserving(OakitError):
    """The assignment does not preserve joins; args carry a witness pair."""


class NotSymmetrizable(OakitError):
    """The computed candidate conjugate fails the symmetry biconditional."""


class PreconditionFailed(OakitError):
    """An operation was called outside its stated domain."""


class ShapeMismatch(OakitError):
    """Sources and targets of the given arrows do not line up."""


class NotANucleus(OakitError):
    """The self-map violates one of the three nucleus laws; args carry a witness."""


class CrossCheckFailed(OakitError):
    """An internal redundant computation disagreed with the primary one."""


class ParseError(OakitError):
    """Malformed input document; args carry the line number."""


class ValidationError(OakitError):
    """A parsed document failed validation in its owning module."""
