"""Exception hierarchy shared by every layer of the package.

Each error carries a stable machine-readable ``code`` string so the HTTP
layer and the CLI can map failures to responses and exit statuses without
matching on message text.  Optional keyword context (line numbers, field
names, offending ids) is kept on the instance for structured reporting.
"""

from __future__ import annotations


class DivaError(Exception):
    """Base class for all package errors."""

    code = "InternalError"

    def __init__(self, message: str = "", **context):
        super().__init__(message)
        self.message = message
        self.context = {k: v for k, v in context.items() if v is not None}

    def __str__(self) -> str:
        if self.context:
            extras = ", ".join(f"{k}={v!r}" for k, v in self.context.items())
            return f"{self.message} ({extras})" if self.message else extras
        return self.message


# ---------------------------------------------------------------------------
# graph construction and parsing

class MalformedInput(DivaError):
    """Input text/bytes violate the declared graph format."""

    code = "MalformedInput"


class UnknownFormat(DivaError):
    code = "UnknownFormat"


class EmptyGraph(DivaError):
    """Parsed input contains no nodes."""

    code = "EmptyGraph"


class InvalidParameter(DivaError):
    """A scalar argument is outside its documented domain."""

    code = "InvalidParameter"


class DegenerateGraph(DivaError):
    """The requested quantity is undefined on this graph (e.g. density of K1)."""

    code = "DegenerateGraph"


# ---------------------------------------------------------------------------
# archive persistence

class VersionMismatch(DivaError):
    """Archive was written by an incompatible format version."""

    code = "VersionMismatch"


class CorruptArchive(DivaError):
    """Archive bytes fail decompression, decoding, or checksum verification."""

    code = "CorruptArchive"


# ---------------------------------------------------------------------------
# layout

class LayoutIncomplete(DivaError):
    """Positions were requested before the layout loop finished."""

    code = "LayoutIncomplete"


# ---------------------------------------------------------------------------
# simulation configuration and traces

class InvalidConfig(DivaError):
    """Model configuration is structurally wrong or out of domain."""

    code = "InvalidConfig"


class UnknownSeedNode(DivaError):
    """An explicit seed id does not exist in the graph."""

    code = "UnknownSeedNode"


class RuleError(DivaError):
    """A declarative rule set is inconsistent or references unknown states."""

    code = "RuleError"


class SchemaError(DivaError):
    """Uploaded trace document does not match the iteration-trace schema."""

    code = "SchemaError"


class NodeCountMismatch(DivaError):
    """Trace node counts disagree with the graph or with the status deltas."""

    code = "NodeCountMismatch"


class UnknownNode(DivaError):
    """Trace status map references a node id absent from the graph."""

    code = "UnknownNode"


class TraceInconsistent(DivaError):
    """Recomputed per-class counts disagree with the recorded ones."""

    code = "TraceInconsistent"


# ---------------------------------------------------------------------------
# analytics

class UnknownStat(DivaError):
    code = "UnknownStat"


class LengthMismatch(DivaError):
    """Two traces being compared do not share length or node universe."""

    code = "LengthMismatch"


# ---------------------------------------------------------------------------
# server sessions

class SessionNotFound(DivaError):
    code = "SessionNotFound"


class GraphNotFound(DivaError):
    code = "GraphNotFound"


class RunNotFound(DivaError):
    code = "RunNotFound"


class LayoutPending(DivaError):
    """Layout still running; carries progress so clients can poll."""

    code = "LayoutPending"


class RunPending(DivaError):
    """Run still executing in the background; poll the handle."""

    code = "RunPending"


class RunFailed(DivaError):
    """Run finished with an error; detail lives in the handle."""

    code = "RunFailed"
