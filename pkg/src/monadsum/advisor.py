"""Coproduct-existence verdicts from declared fixpoint profiles.

The engine can only witness convergence or divergence up to a budget;
whether a coproduct exists at all is decided by cardinal fixpoints,
which are not computable from tables.  Profiles declare the fixpoint
class of a monad (or functor) symbolically and a fixed pairwise table
decides joint unboundedness.  Everything here is a total decision
table; Unknown is an explicit cell value, not a missing case.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation

EXISTS = "Exists"
NOT_EXISTS = "NotExists"
UNKNOWN = "Unknown"


class Kind:
    INCONSISTENT = "Inconsistent"
    EXCEPTIONAL = "SubstantiallyExceptional"
    NO_FIXPOINTS = "NoFixpoints"
    EVENTUALLY_ALL = "EventuallyAllCardinals"
    CARDINAL_CLASS = "CardinalClass"

    ALL = (INCONSISTENT, EXCEPTIONAL, NO_FIXPOINTS, EVENTUALLY_ALL,
           CARDINAL_CLASS)


@dataclass(frozen=True)
class CardinalClassDesc:
    """Symbolic fixpoint class.

    shape "powers-beyond": all exponentials past some threshold (the
    accessible-functor guarantee).  shape "interval": the image-size
    functor family cut out by a named cardinal class; `complemented`
    distinguishes the class from its complement.
    """

    shape: str                   # "powers-beyond" | "interval"
    family: str = ""
    complemented: bool = False


@dataclass(frozen=True)
class FixpointProfile:
    kind: str
    klass: CardinalClassDesc | None = None
    substantially_constant: bool = False

    def __post_init__(self):
        if self.kind not in Kind.ALL:
            raise ContractViolation(f"unknown profile kind {self.kind}")
        if (self.kind == Kind.CARDINAL_CLASS) != (self.klass is not None):
            raise ContractViolation("cardinal-class payload mismatch")


INCONSISTENT = FixpointProfile(Kind.INCONSISTENT)
EXCEPTIONAL = FixpointProfile(Kind.EXCEPTIONAL)
NO_FIXPOINTS = FixpointProfile(Kind.NO_FIXPOINTS)
FINITARY = FixpointProfile(Kind.EVENTUALLY_ALL)


def powers_beyond() -> FixpointProfile:
    return FixpointProfile(Kind.CARDINAL_CLASS,
                           CardinalClassDesc("powers-beyond"))


def interval_class(family: str, complemented: bool = False) -> FixpointProfile:
    return FixpointProfile(Kind.CARDINAL_CLASS,
                           CardinalClassDesc("interval", family,
                                             complemented))


def joint_fixpoints_unbounded(p: FixpointProfile,
                              q: FixpointProfile) -> bool | None:
    """Pairwise table: True/False when joint unboundedness is decided by
    the declared shapes, None when the shapes cannot settle it."""
    kinds = {p.kind, q.kind}
    if Kind.NO_FIXPOINTS in kinds:
        return False
    if Kind.EVENTUALLY_ALL in kinds:
        # the other side is eventually-all or a class with unboundedly
        # many members; either way the intersection is unbounded
        return True
    # both are cardinal classes
    a, b = p.klass, q.klass
    if a.shape == "powers-beyond" or b.shape == "powers-beyond":
        # both classes contain exponential fixpoints beyond any threshold
        return True
    if a.family == b.family:
        # same interval family: complementary cuts miss each other
        return a.complemented == b.complemented
    return None


def coproduct_exists(p: FixpointProfile, q: FixpointProfile) -> str:
    """One inconsistent or exceptional summand settles it; otherwise
    joint fixpoints decide, with Unknown for undecidable class pairs."""
    if Kind.INCONSISTENT in (p.kind, q.kind):
        return EXISTS
    if Kind.EXCEPTIONAL in (p.kind, q.kind):
        return EXISTS
    joint = joint_fixpoints_unbounded(p, q)
    if joint is True:
        return EXISTS
    if joint is False:
        return NOT_EXISTS
    return UNKNOWN


def family_exists(profiles) -> str:
    """All the non-exceptional members must share unbounded joint
    fixpoints, unless at most one member is non-exceptional."""
    profiles = list(profiles)
    if len(profiles) < 2:
        raise ContractViolation("a family needs at least two profiles")
    if any(p.kind == Kind.INCONSISTENT for p in profiles):
        return EXISTS
    hard = [p for p in profiles if p.kind != Kind.EXCEPTIONAL]
    if len(hard) <= 1:
        return EXISTS
    verdicts = [joint_fixpoints_unbounded(a, b)
                for i, a in enumerate(hard) for b in hard[i + 1:]]
    if all(v is True for v in verdicts):
        return EXISTS
    if any(v is False for v in verdicts):
        return NOT_EXISTS
    return UNKNOWN


def generates_free_monad(functor_profile: FixpointProfile) -> str:
    """A set functor generates a free monad iff its fixpoints are
    unbounded or it is substantially constant."""
    if functor_profile.substantially_constant:
        return EXISTS
    if functor_profile.kind == Kind.NO_FIXPOINTS:
        return NOT_EXISTS
    if functor_profile.kind in (Kind.EVENTUALLY_ALL, Kind.CARDINAL_CLASS):
        return EXISTS
    if functor_profile.kind == Kind.EXCEPTIONAL:
        return EXISTS
    return UNKNOWN


def free_monad_profile(functor_profile: FixpointProfile) -> FixpointProfile:
    """Transfer a functor's profile to its free monad: beyond some
    cardinal the two share fixpoints, and a substantially constant
    functor frees into an exception-like monad."""
    if generates_free_monad(functor_profile) == NOT_EXISTS:
        raise ContractViolation("no free monad exists on this profile")
    if functor_profile.substantially_constant:
        return EXCEPTIONAL
    return FixpointProfile(functor_profile.kind, functor_profile.klass)


def free_monad_rules(functor_profile: FixpointProfile,
                     monad_profile: FixpointProfile) -> str:
    """Verdict for (free monad on H) (+) S given both profiles."""
    exists_free = generates_free_monad(functor_profile)
    if exists_free == NOT_EXISTS:
        return NOT_EXISTS
    if exists_free == UNKNOWN:
        return UNKNOWN
    return coproduct_exists(free_monad_profile(functor_profile),
                            monad_profile)


def coproducts_with_all_finitary(monad_profile: FixpointProfile,
                                 as_functor: FixpointProfile | None = None
                                 ) -> str:
    """A monad has coproducts with every finitary monad iff a free monad
    on its underlying functor exists."""
    return generates_free_monad(as_functor or monad_profile)


_BUILTIN_PROFILES = {
    "maybe": EXCEPTIONAL,
    "terminal": INCONSISTENT,
    "terminal0": INCONSISTENT,
    "powerset": NO_FIXPOINTS,
}


def builtin_profile(monad) -> FixpointProfile | None:
    """Declared profile of a builtin; None for user monads."""
    name = monad if isinstance(monad, str) else monad.name
    got = _BUILTIN_PROFILES.get(name)
    if got is not None:
        return got
    if name.startswith("exception"):
        return EXCEPTIONAL
    if name.startswith(("reader", "state")):
        return FINITARY
    if name.startswith("closure(") or name.endswith("0"):
        inner = name.removeprefix("closure(").removesuffix(")")
        return builtin_profile(inner.rstrip("0")) if inner != name else None
    if "(-+" in name:
        base = name.split("(-+")[0]
        return builtin_profile(base)
    return None
