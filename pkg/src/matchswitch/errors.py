"""Exception hierarchy shared by all matchswitch modules."""


class MatchSwitchError(Exception):
    """Base class for all errors raised by this package."""


# graph construction

class SelfLoopError(MatchSwitchError):
    """An edge joins a vertex to itself."""


class NonCrossingEdgeError(MatchSwitchError):
    """A bipartite graph was given an edge inside one part."""


class UnbalancedBipartitionError(MatchSwitchError):
    """The two parts of a declared bipartition differ in size."""


class DivisibilityViolation(MatchSwitchError):
    """Family parameters fail an integrality or size precondition."""


class InfeasibleDegreeError(MatchSwitchError):
    """Requested minimum degree exceeds what the vertex count allows."""


class OreBipOnNonBipartiteError(MatchSwitchError):
    """Bipartite Ore minimum requested for a graph without a bipartition."""


# matchings

class EnumerationBudgetExceeded(MatchSwitchError):
    """Matching enumeration produced more results than the configured cap."""


class NoAugmentingEdgeError(MatchSwitchError):
    """Near-perfect injection found no pigeonhole edge (hypothesis violated)."""


class NoPerfectMatchingError(MatchSwitchError):
    """The graph has no perfect matching to start a chain from."""


# reconfiguration

class NoMoveFound(MatchSwitchError):
    """The constructive case ladder is stuck; carries the stuck pair."""

    def __init__(self, message, matching=None, target=None):
        super().__init__(message)
        self.matching = matching
        self.target = target


class PatternNotFound(MatchSwitchError):
    """No chord and no refinement pattern edge exists (hypothesis violated)."""


class CaseLadderStuck(MatchSwitchError):
    """Canonical-path case machine found no applicable move."""


# chain diagnostics

class OmegaTooLarge(MatchSwitchError):
    """State space exceeds the cap for exact diagnostics."""


# CLI

class ConfigError(MatchSwitchError):
    """Invalid or inconsistent experiment configuration."""
