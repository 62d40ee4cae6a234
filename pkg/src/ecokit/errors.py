"""Exception hierarchy.

The CLI maps each base class to one exit code, so every concrete error
derives from exactly one of ``InfeasibleError``, ``InputError`` or
``NumericalError``.
"""

from __future__ import annotations


class EcokitError(Exception):
    """Base class for all ecokit errors."""


class InfeasibleError(EcokitError):
    """A well-posed question whose answer is 'no transaction takes place'."""


class InputError(EcokitError):
    """Malformed or out-of-contract input."""


class NumericalError(EcokitError):
    """A numerical procedure failed to produce an answer."""


class Infeasible(InfeasibleError):
    def __init__(self, margin: float, message: str | None = None):
        self.margin = margin
        self.deficit = -margin
        super().__init__(message or f"infeasible: total margin {margin:.9g} is not positive")


class InfeasibleEdge(InfeasibleError):
    def __init__(self, edges: list[tuple[str, str, float]]):
        # (provider, consumer, margin) for every failing edge
        self.edges = list(edges)
        names = ", ".join(f"{p}->{c} (margin {m:.9g})" for p, c, m in self.edges)
        super().__init__(f"infeasible edge(s): {names}")


class MissingFee(InputError):
    def __init__(self, message: str = "transaction terms carry no fee"):
        super().__init__(message)


class InelasticSupply(InputError):
    def __init__(self, x: float, n_prime: float):
        self.x = x
        self.n_prime = n_prime
        super().__init__(f"supply is inelastic at X={x:.9g}: n'(X)={n_prime:.3g}")


class AmbiguousCase(InputError):
    def __init__(self, delta_v: float, delta_t: float):
        self.delta_v = delta_v
        self.delta_t = delta_t
        super().__init__(
            f"case undecidable: dV={delta_v:.9g}, dT={delta_t:.9g} (a delta lies on the sign boundary)"
        )


class NoBracket(NumericalError):
    def __init__(self, low: float, high: float, f_low: float, f_high: float):
        self.low, self.high = low, high
        self.f_low, self.f_high = f_low, f_high
        super().__init__(
            f"no sign change on [{low:.9g}, {high:.9g}]: f={f_low:.3g}, {f_high:.3g}"
        )


class NonConvergence(NumericalError):
    def __init__(self, iterations: int, low: float, high: float):
        self.iterations = iterations
        self.low, self.high = low, high
        super().__init__(
            f"bisection did not converge after {iterations} iterations on [{low!r}, {high!r}]"
        )


class EvaluationFailure(NumericalError):
    def __init__(self, x: float, cause: BaseException):
        self.x = x
        self.cause = cause
        super().__init__(f"model evaluation failed at {x!r}: {cause}")


class ParseError(InputError):
    pass


class SchemaMismatch(InputError):
    def __init__(self, found: object, expected: str = "1"):
        self.found = found
        super().__init__(f"schema_version {found!r} does not match expected {expected!r}")


class UnknownField(InputError):
    def __init__(self, field: str, path: str | None = None):
        self.field = field
        self.path = path or field
        super().__init__(f"unknown field {field!r} at {self.path}")
