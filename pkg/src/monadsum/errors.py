"""Exception hierarchy shared across the engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine-raised errors."""


class ContractViolation(EngineError):
    """A caller broke an operation's precondition (e.g. mismatched dom/cod)."""


class UnknownMonad(EngineError):
    """Requested builtin name is not registered."""


class InconsistentMonad(EngineError):
    """Operation requires a consistent monad (injective unit everywhere)."""


class NotInjective(EngineError):
    """A map required to be injective is not."""


class NotBijective(EngineError):
    """A map required to be a bijection is not."""


class InvalidAlgebra(EngineError):
    """A structure map fails the Eilenberg-Moore axioms."""


class AmbiguousSupport(EngineError):
    """Minimal support is not unique at its size; caller must special-case."""


class BudgetExceeded(EngineError):
    """An exhaustive search or materialization went past its configured bound."""


class SubfunctorViolation(EngineError):
    """A right-hand side failed to act injectively on injections."""


class LawViolation(EngineError):
    """An identity that holds for every lawful monad failed; the input
    structure is broken (wrong tables, corrupted action, ...)."""


class NoConvergence(EngineError):
    """Chain did not converge within budget; existence is undecided.

    Carries the per-stage size trace and, when profiles are known, the
    advisor's verdict about whether the coproduct exists at all.
    """

    def __init__(self, message: str, trace=None, verdict: str | None = None):
        super().__init__(message)
        self.trace = trace or []
        self.verdict = verdict
