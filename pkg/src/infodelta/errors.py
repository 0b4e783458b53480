"""Exception hierarchy shared by every infodelta module."""


class InfodeltaError(Exception):
    """Base class for all errors raised by this package."""


class EmptyQueryError(InfodeltaError):
    """Query text was blank or a query object is missing."""


class QuerySyntaxError(InfodeltaError):
    """Malformed boolean query; carries the UTF-8 byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ConfigError(InfodeltaError):
    """Invalid taxonomy or run configuration."""


class DuplicateIdError(ConfigError):
    """Two subtopics share the same id."""


class SchemaError(InfodeltaError):
    """A tabular input file misses required header columns."""


class RowError(InfodeltaError):
    """One unusable row in a tabular input; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class FormatError(InfodeltaError):
    """Structurally malformed line in a search-interest export."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class RangeError(InfodeltaError):
    """Value outside the documented 0-100 search-interest scale."""


class EmptyFileError(InfodeltaError):
    """Input file contains no data rows."""


class NetworkError(InfodeltaError):
    """HTTP transport failure; carries the last HTTP status if one was seen."""

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class ApiFormatError(InfodeltaError):
    """News API response body lacks the expected timeline structure."""


class WindowError(InfodeltaError):
    """Analysis window is inverted or not anchored on Mondays."""


class NoOverlapError(InfodeltaError):
    """Two weekly series share no common weeks."""


class AlignmentError(InfodeltaError):
    """Operation requires identical week grids on both inputs."""


class TooShortError(InfodeltaError):
    """Series too short for the requested correlation analysis."""


class RankDeficientError(InfodeltaError):
    """Least-squares design matrix is numerically rank-deficient."""


class NothingToAnalyzeError(InfodeltaError):
    """Analysis stage found no ingested series to work on."""
