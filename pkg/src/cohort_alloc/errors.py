"""Exception hierarchy shared across the package.

Two broad families matter to callers: :class:`DatasetError` covers anything
wrong with input files or their contents, :class:`DomainError` covers
arguments outside an operation's domain (bad start index, capacity, damping).
The CLI maps the former to exit code 2 and the latter to exit code 3.
"""


class CohortError(Exception):
    """Base class for all errors raised by cohort_alloc."""


class DatasetError(CohortError):
    """Input data is malformed, inconsistent, or violates a load-time bound."""


class MalformedRow(DatasetError):
    """A CSV row failed to parse (bad field count, unparseable cell)."""


class IdOutOfRange(DatasetError):
    """A node id falls outside [0, n)."""


class SelfLoop(DatasetError):
    """An edge names the same node as source and destination."""


class DuplicateEdge(DatasetError):
    """The same directed edge appears twice."""


class DegreeBoundExceeded(DatasetError):
    """A node's out-list exceeds the allowed length for its network."""


class InconsistentNodeCount(DatasetError):
    """Ids do not cover [0, n) exactly (missing, duplicated, or extra)."""


class SemesterOutOfRange(DatasetError):
    """The requested semester index addresses no grade column."""


class NodeRangeMismatch(DatasetError):
    """Two team assignments do not cover the same set of node ids."""


class DomainError(CohortError):
    """An argument lies outside the operation's domain."""


class StartOutOfRange(DomainError):
    """The allocation start index is not a valid node id."""


class InvalidCapacity(DomainError):
    """Team capacity must be a positive integer."""


class InvalidDamping(DomainError):
    """PageRank damping must lie strictly between 0 and 1."""
