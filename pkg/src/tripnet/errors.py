"""Exception hierarchy for tripnet."""


class TripnetError(Exception):
    """Base class for every error raised by this package."""


class NetworkError(TripnetError, ValueError):
    """Invalid network structure (raised by validation)."""


class NotAcyclic(NetworkError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"directed cycle through vertex {vertex!r}")


class DegreeViolation(NetworkError):
    def __init__(self, vertex, indeg, outdeg, detail=""):
        self.vertex = vertex
        msg = f"vertex {vertex!r} has in-degree {indeg} and out-degree {outdeg}"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class MultipleRoots(NetworkError):
    def __init__(self, roots):
        self.roots = tuple(roots)
        super().__init__(f"expected one vertex of in-degree 0, found {list(self.roots)!r}")


class UnlabeledLeaf(NetworkError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"out-degree-0 vertex {vertex!r} has no label")


class DuplicateLabel(NetworkError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"label {label!r} is used more than once")


class ParallelArc(NetworkError):
    def __init__(self, arc):
        self.arc = arc
        super().__init__(f"parallel arc {arc!r}")


class UnknownVertex(NetworkError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"no vertex {vertex!r} in network")


class LabelOutsideUniverse(TripnetError, ValueError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"label {label!r} is not in the leaf set")


class NotACherry(NetworkError):
    pass


class NotAReticulatedCherry(NetworkError):
    pass


class WouldCreateParallelArc(NetworkError):
    def __init__(self, arc):
        self.arc = arc
        super().__init__(f"suppression would create parallel arc {arc!r}")


class LabelClash(NetworkError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"label {label!r} is already a leaf of the network")


class NoVisibilityMatch(NetworkError):
    def __init__(self, members):
        self.members = frozenset(members)
        super().__init__(f"no vertex has visibility set {sorted(self.members)}")


class AmbiguousAttachment(NetworkError):
    def __init__(self, members, candidates):
        self.members = frozenset(members)
        self.candidates = tuple(candidates)
        super().__init__(
            f"{len(self.candidates)} vertices have visibility set "
            f"{sorted(self.members)}: {list(self.candidates)!r}"
        )


class NotNearSiblingPair(NetworkError):
    pass


class GenerationBudgetExhausted(TripnetError, RuntimeError):
    pass


class UniverseTooLargeForExhaustiveSearch(TripnetError, ValueError):
    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"leaf set of size {size} exceeds exhaustive search limit {limit}")


class MalformedW(TripnetError, ValueError):
    pass


class NotRealizableOrOutOfClass(TripnetError):
    """Reconstruction failed; ``witness`` says where."""

    def __init__(self, reason, witness=None, steps=()):
        self.reason = reason
        self.witness = witness
        self.steps = tuple(steps)
        super().__init__(reason if witness is None else f"{reason}: {witness}")


class NewickSyntaxError(TripnetError, ValueError):
    def __init__(self, message, line, col):
        self.line = line
        self.col = col
        super().__init__(f"{message} at line {line}, column {col}")


class HybridTagMismatch(TripnetError, ValueError):
    def __init__(self, tag, detail):
        self.tag = tag
        super().__init__(f"hybrid tag #{tag}: {detail}")


class TripleFormatError(TripnetError, ValueError):
    def __init__(self, message, line):
        self.line = line
        super().__init__(f"line {line}: {message}")
