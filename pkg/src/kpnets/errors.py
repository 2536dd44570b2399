"""Exception hierarchy shared by all modules.

Exit-code mapping used by the command line tool:
  1 -> ValidationFailure (network fails a structural requirement)
  2 -> DegenerateGeometry and subclasses (embedding or ray degeneracy)
  3 -> SizeGuard (combinatorial enumeration exceeded its budget)
"""


class KpnetsError(Exception):
    """Base class for all package errors."""


class ValidationFailure(KpnetsError):
    """A network violates a structural requirement needed by the caller."""


class DegenerateGeometry(KpnetsError):
    """An exact geometric predicate hit a degenerate configuration."""


class EmbeddingDegenerate(DegenerateGeometry):
    """Vertex positions do not give a proper straight-segment embedding."""


class NotABase(KpnetsError):
    """The requested column set is not a base of the network matroid."""


class NotReachable(KpnetsError):
    """No move sequence connects the two orientations."""


class NonPath(KpnetsError):
    """An edge sequence is not a connected directed path."""


class MissingWaveValue(KpnetsError):
    """A wave value required at an edge was not supplied."""


class SizeGuard(KpnetsError):
    """An enumeration exceeded the configured budget."""


class NonGenericTime(KpnetsError):
    """No admissible evaluation time found within the attempt budget."""


class NonPositiveTau(KpnetsError):
    """A tau function value came out nonpositive, so the data is not TNN."""


class SingularWronskian(KpnetsError):
    """The generator Wronskian is singular at the requested time."""


class EmptyDiagram(KpnetsError):
    """A diagram with no filled boxes cannot produce a network."""


class NullTypeTwo(KpnetsError):
    """A null subgraph of the second kind admits no consistent divisor."""
