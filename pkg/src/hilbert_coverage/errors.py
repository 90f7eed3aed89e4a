"""Exception hierarchy shared by the planner modules."""


class HilbertCoverageError(Exception):
    """Base class for all package errors."""


class RankError(HilbertCoverageError, ValueError):
    """A rank, digit or cell index lies outside the curve of the given order."""


class TerminalNodeError(HilbertCoverageError):
    """The first or last node of the curve was blocked or asked to be classified."""


class ManeuverPreconditionError(HilbertCoverageError):
    """A maneuver would read or write slots outside the curve."""


class SensingContractError(HilbertCoverageError):
    """The planner queried a cell outside the agent's 8-neighbourhood."""


class WorldError(HilbertCoverageError, ValueError):
    """Inconsistent world or resolution map."""


class PlanningError(HilbertCoverageError):
    """The non-uniform planner was given a world it cannot traverse."""


class ParseError(HilbertCoverageError, ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if line is not None:
            where = f"{source or '<world>'}:{line}:{column}: "
        super().__init__(where + message)
