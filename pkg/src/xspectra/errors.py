"""Exception taxonomy for the package.

Argument and domain problems derive from ValueError so they read naturally
at call sites; algorithmic failures derive from RuntimeError.
"""


class ArgumentError(ValueError):
    """An argument violates a documented precondition."""


class DomainError(ValueError):
    """Evaluation requested outside a function's regular domain."""


class PoleError(DomainError):
    """Evaluation exactly at a pole of a special function."""


class SingularityError(DomainError):
    """Evaluation at, or on a path through, a singular point."""


class BranchCutError(DomainError):
    """A complex-shift convention would cross a branch cut."""


class ConstructionError(RuntimeError):
    """A linear-algebra construction did not produce the expected structure."""


class ConsistencyError(RuntimeError):
    """A cross-check that should hold for valid inputs failed."""


class ConvergenceError(RuntimeError):
    """An iterative scheme exhausted its refinement or iteration budget."""


class FactorizationError(RuntimeError):
    """A matrix factorization broke down even after the retry perturbation."""


class EvaluationError(RuntimeError):
    """An integrand or evaluator returned a non-finite value."""
