"""singlepeaked's exceptions."""


class SinglePeakedError(Exception):
    """Base class for every error raised by singlepeaked."""


class ProfileError(SinglePeakedError, ValueError):
    """Exception raised when profile data is invalid.

    :param message: human readable description
    :param line: 1-based line number of the offending input line, if known
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        """Store the offending line number along with the message."""
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ProfileFormatError(ProfileError):
    """Exception raised on malformed profile syntax."""


class DuplicateCandidateError(ProfileError):
    """Exception raised when a candidate name is declared twice."""


class UnknownCandidateError(ProfileError):
    """Exception raised when a vote names a candidate that was not declared."""


class RepeatedCandidateError(ProfileError):
    """Exception raised when a vote ranks the same candidate twice."""


class IncompleteVoteError(ProfileError):
    """Exception raised when a vote does not rank every candidate."""


class ProfileNotFound(SinglePeakedError, FileNotFoundError):
    """Exception raised when the profile input can not be read."""


class UnknownColumnError(SinglePeakedError, KeyError):
    """Exception raised when a PQ-tree row names a column the tree does not hold."""


class InfeasibleTreeError(SinglePeakedError):
    """Exception raised when an infeasible PQ-tree is queried or reduced."""


class CandidateBoundExceeded(SinglePeakedError):
    """Exception raised when brute force is asked for too many candidates."""


class EmptyTreeError(SinglePeakedError, ValueError):
    """Exception raised when a PQ-tree is requested over no columns."""
