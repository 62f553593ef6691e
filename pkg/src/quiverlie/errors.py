"""Exception hierarchy.

`InputError` subclasses are problems with the user's data (the CLI maps them
to exit code 2).  `MathCheckFailure` subclasses mean an identity that must
hold did not, which points at a bug (exit code 1).
"""


class QuiverError(Exception):
    pass


class InputError(QuiverError):
    pass


class MathCheckFailure(QuiverError):
    pass


class CycleFound(InputError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("quiver has a cycle: " + " ".join(self.cycle))


class DuplicateIdentifier(InputError):
    pass


class DanglingEndpoint(InputError):
    pass


class EmptyQuiver(InputError):
    pass


class LengthOne(InputError):
    """The reduction step needs a quiver of length at least 2."""


class NotComposable(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NonPositiveNorm(InputError):
    pass


class DslSyntaxError(InputError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateArrowName(DslSyntaxError):
    def __init__(self, line, name):
        super().__init__(line, f"duplicate arrow name {name!r}")


class DuplicateVertexDeclaration(DslSyntaxError):
    def __init__(self, line, name):
        super().__init__(line, f"duplicate vertex declaration {name!r}")


class MetricSyntaxError(DslSyntaxError):
    pass


class BothProductsNonzero(MathCheckFailure):
    pass


class GradedBracketFailure(MathCheckFailure):
    def __init__(self, i, j, witness):
        self.i, self.j, self.witness = i, j, witness
        super().__init__(f"[n^{i}, n^{j}] != n^{i + j}: {witness}")


class NiceBasisViolation(MathCheckFailure):
    pass


class JacobiFailure(MathCheckFailure):
    pass


class HypothesisViolated(MathCheckFailure):
    pass


class NormMismatch(MathCheckFailure):
    pass


class DecompositionFailure(MathCheckFailure):
    def __init__(self, case, path, lhs, rhs):
        self.case, self.path, self.lhs, self.rhs = case, path, lhs, rhs
        super().__init__(f"case {case} fails at {path}: {lhs} != {rhs}")


class NonDiagonalRicci(MathCheckFailure):
    pass
