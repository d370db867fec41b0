"""Closure at the empty set, zero submonads, and their classification.

A set functor can be repaired at the empty set so that it preserves
finite intersections: the repaired value is the equalizer of the two
point inclusions applied at a singleton.  Every monad is, up to
isomorphism, either already repaired or the empty-set-preserving
submonad of its repair; `classify` checks which and treats any third
outcome as a broken input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation, LawViolation
from .finset import (EMPTY, Atom, FinMap, FinSet, Label, equalizer, fset,
                     identity)
from .monad import FunctorSpec, MonadSpec


class ClosureClass:
    ALREADY_CLOSED = "AlreadyClosed"
    ZERO_OF_CLOSURE = "ZeroOfClosure"
    IRREGULAR = "Irregular"          # possible for bare functors only


_ONE = fset(Atom("pt"))
_TWO = FinSet((Atom("ff"), Atom("tt")))
_T_MAP = FinMap(_ONE, _TWO, {Atom("pt"): Atom("tt")}, _trusted=True)
_F_MAP = FinMap(_ONE, _TWO, {Atom("pt"): Atom("ff")}, _trusted=True)


@dataclass
class ClosureResult:
    value_at_empty: FinSet          # subset of H(1)
    reflection_at_empty: FinMap     # H(0) -> value_at_empty
    classification: str


def closure_at_empty(H) -> ClosureResult:
    """Equalize the two point inclusions at a singleton; the result is
    the repaired value at the empty set, received by H(0) through the
    empty map."""
    E, _incl = equalizer(H.action(_T_MAP), H.action(_F_MAP))
    H0 = H.carrier(EMPTY)
    empty_arrow = FinMap(EMPTY, _ONE, {}, _trusted=True)
    he = H.action(empty_arrow)
    table = {}
    for x in H0:
        y = he(x)
        if y not in E:
            raise LawViolation(
                "image of the empty map does not equalize the point "
                "inclusions; the functor action is broken")
        table[x] = y
    refl = FinMap(H0, E, table, _trusted=True)
    if H0.size == 0 and E.size == 0:
        cls = ClosureClass.ALREADY_CLOSED
    elif H0.size == 0:
        cls = ClosureClass.ZERO_OF_CLOSURE
    elif refl.is_bijective():
        cls = ClosureClass.ALREADY_CLOSED
    else:
        cls = ClosureClass.IRREGULAR
    return ClosureResult(E, refl, cls)


def _closed_action_from_empty(S, E: FinSet, Y: FinSet,
                              check: bool = True) -> FinMap:
    """The repaired functor on the unique map 0 -> Y: factor through any
    point of Y; the equalizer property makes the choice immaterial, which
    is re-verified on a second point when one exists."""
    if Y.size == 0:
        return identity(E)
    u = FinMap(_ONE, Y, {Atom("pt"): Y.elements[0]}, _trusted=True)
    su = S.action(u)
    table = {z: su(z) for z in E}
    if check and Y.size >= 2:
        u2 = FinMap(_ONE, Y, {Atom("pt"): Y.elements[1]}, _trusted=True)
        su2 = S.action(u2)
        for z in E:
            if su2(z) != table[z]:
                raise LawViolation("closure value depends on the chosen "
                                   "point; input is not a functor")
    return FinMap(E, S.carrier(Y), table, _trusted=True)


def monad_closure(S: MonadSpec) -> MonadSpec:
    """The intersection-preserving repair, with the unique monad
    structure making the reflection a monad morphism.

    Already-closed monads are returned as they are; otherwise only the
    empty set changes, and the new multiplication there is obtained by
    restricting along the equalizer embedding.
    """
    res = closure_at_empty(S)
    if res.classification == ClosureClass.ALREADY_CLOSED:
        return S
    if res.classification == ClosureClass.IRREGULAR:
        raise LawViolation("monad reflection at the empty set is neither "
                           "bijective nor zero; the input is broken")
    E = res.value_at_empty
    if E.size == 0:
        return S

    incl_e = FinMap(E, S.carrier(_ONE), {z: z for z in E}, _trusted=True)

    def obj(X: FinSet) -> FinSet:
        return E if X.size == 0 else S.carrier(X)

    def el_map(f: FinMap, s: Label) -> Label:
        if f.dom.size > 0:
            return S.el_map(f, s)
        if f.cod.size == 0:
            return s
        u = FinMap(_ONE, f.cod, {Atom("pt"): f.cod.elements[0]},
                   _trusted=True)
        return S.el_map(u, s)

    def el_unit(X: FinSet, x: Label) -> Label:
        return S.el_unit(X, x)

    def el_mult(X: FinSet, w: Label) -> Label:
        if X.size > 0:
            return S.el_mult(X, w)
        # w is an S-element over E; push into S(S 1) and multiply there
        out = S.el_mult(_ONE, S.el_map(incl_e, w))
        if out not in E:
            raise LawViolation("closed multiplication left the equalizer")
        return out

    def size_fn(n: int) -> int:
        if n == 0:
            return E.size
        return S.size_fn(n) if S.size_fn else None

    spec = MonadSpec(f"closure({S.name})", obj, el_map, el_unit, el_mult,
                     size_fn=size_fn if S.size_fn else None,
                     el_random=S.el_random)
    return spec


def zero_submonad(S: MonadSpec) -> MonadSpec:
    """The submonad agreeing with S on nonempty sets and empty at 0."""
    if S.carrier(EMPTY).size == 0:
        return S

    def obj(X: FinSet) -> FinSet:
        return EMPTY if X.size == 0 else S.carrier(X)

    def el_map(f: FinMap, s: Label) -> Label:
        return S.el_map(f, s)

    def size_fn(n: int) -> int:
        if n == 0:
            return 0
        return S.size_fn(n) if S.size_fn else None

    spec = MonadSpec(f"{S.name}0", obj, el_map, S.el_unit, S.el_mult,
                     size_fn=size_fn if S.size_fn else None,
                     el_random=S.el_random)
    zero = S.cache.get("exception_set")
    if zero is not None:
        spec.cache["exception_set"] = zero
        spec.cache["zero_at_empty"] = True
    return spec


def classify(S: MonadSpec) -> str:
    """ZeroOfClosure iff the monad kills the empty set; otherwise the
    reflection must be a bijection, and anything else is a broken input."""
    if S.carrier(EMPTY).size == 0:
        return ClosureClass.ZERO_OF_CLOSURE
    res = closure_at_empty(S)
    if not res.reflection_at_empty.is_bijective():
        raise LawViolation(
            f"{S.name}: nonempty value at 0 with a non-bijective "
            f"reflection; no lawful monad does this")
    return ClosureClass.ALREADY_CLOSED


def reflection_factorization(H, K, s_at_one: FinMap) -> FinMap:
    """Given a transformation component s_1 : H1 -> K1 toward an
    intersection-preserving K, the unique factorizing component at the
    empty set, induced by the equalizer property."""
    res_h = closure_at_empty(H)
    res_k = closure_at_empty(K)
    if not res_k.reflection_at_empty.is_bijective():
        raise ContractViolation("target does not preserve the equalizer")
    table = {}
    k_refl_inv = res_k.reflection_at_empty.inverse()
    for z in res_h.value_at_empty:
        y = s_at_one(z)
        if y not in res_k.value_at_empty:
            raise ContractViolation("component does not respect the "
                                    "equalizers; not natural")
        table[z] = k_refl_inv(y)
    return FinMap(res_h.value_at_empty, K.carrier(EMPTY), table,
                  _trusted=True)


def substantially_exceptional_evidence(S: MonadSpec,
                                       probes=None) -> FinSet | None:
    """Probe-level detection: the closure looks like an exception monad
    with constants E = S1 minus the unit when, on every probe, each
    constant is fixed by all maps.  Evidence only, not a proof."""
    from .monad import probe_sets

    if probes is None:
        probes = [p for p in probe_sets(3) if p.size >= 1]
    one = probes[0] if probes[0].size == 1 else _ONE
    S1 = S.carrier(one)
    unit_range = {S.el_unit(one, x) for x in one}
    constants = [z for z in S1 if z not in unit_range]
    for X in probes:
        if X.size == 0:
            continue
        u = FinMap(one, X, {one.elements[0]: X.elements[0]}, _trusted=True)
        su = S.action(u)
        carried = [su(z) for z in constants]
        expected = S.carrier(X).size - X.size
        if len(set(carried)) != len(carried) or len(carried) != expected:
            return None
        for x in X.elements:
            v = FinMap(one, X, {one.elements[0]: x}, _trusted=True)
            for z in constants:
                if S.el_map(v, z) != S.el_map(u, z):
                    return None
    return FinSet(constants)
