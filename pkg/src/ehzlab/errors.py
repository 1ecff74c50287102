"""Exception hierarchy shared by all modules.

Two broad families matter to callers: ``ParseError`` (bad input text,
CLI exit code 2) and ``SolverError`` (a valid input the solvers cannot or
refuse to handle, CLI exit code 3).  ``GoldenMismatch`` is reserved for the
built-in worked example whose outputs are checked against frozen values
(CLI exit code 4).
"""

from __future__ import annotations

__all__ = [
    "EhzlabError",
    "ParseError",
    "SolverError",
    "NotSimplex",
    "NoFeasibleMultiplier",
    "LimitExceeded",
    "EmptyFeasibleSet",
    "InnerMaxNonpositive",
    "NoPositiveValueFound",
    "HasCycle",
    "TooManyVertices",
    "PreconditionViolated",
    "NonIntegerWeight",
    "RankNotRestored",
    "ParityViolation",
    "RoundingIdentityViolated",
    "CertificateMismatch",
    "GoldenMismatch",
]


class EhzlabError(Exception):
    """Base class for every error raised on purpose by this package."""


class ParseError(EhzlabError):
    """Input text does not conform to one of the file formats."""


class SolverError(EhzlabError):
    """A structurally valid input that a solver cannot handle."""


class NotSimplex(SolverError):
    """The polytope fails the simplex certificate (facet count or rank)."""


class NoFeasibleMultiplier(SolverError):
    """The kernel direction cannot be scaled to a nonnegative multiplier."""


class LimitExceeded(SolverError):
    """Instance is larger than a configured exact-search budget."""


class EmptyFeasibleSet(SolverError):
    """The multiplier polytope has no feasible point."""


class InnerMaxNonpositive(SolverError):
    """Every ordering gives a nonpositive objective; capacity undefined."""


class NoPositiveValueFound(SolverError):
    """The heuristic search found no positive objective value."""


class HasCycle(SolverError):
    """A topological order was requested for a graph with a cycle."""


class TooManyVertices(SolverError):
    """Graph exceeds the exact bitmask-oracle vertex cap."""


class PreconditionViolated(SolverError):
    """A caller-supplied certificate fails its stated preconditions."""


class NonIntegerWeight(SolverError):
    """Auxiliary-graph construction needs an integer weight matrix."""


class RankNotRestored(SolverError):
    """Perturbation failed to produce a full-rank matrix (internal bug)."""


class ParityViolation(SolverError):
    """Rounded maximum and arc total disagree in parity (internal bug)."""


class RoundingIdentityViolated(SolverError):
    """The perturbed order sums drift by 1/2 or more; epsilon too large."""


class CertificateMismatch(SolverError):
    """Recovered feedback arc set disagrees with the counted optimum."""


class GoldenMismatch(EhzlabError):
    """Built-in example produced values different from the frozen ones."""
