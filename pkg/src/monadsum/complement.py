"""Unit complements: the nontrivial part of a consistent monad.

For a consistent monad the elements outside the unit's range form a
functor on injections only; trying to push them along a non-injective
map can leave the complement (finite powerset is the standard failure),
so that direction is rejected rather than guessed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (AmbiguousSupport, ContractViolation, InconsistentMonad,
                     LawViolation, NotInjective)
from .finset import FinMap, FinSet, Label, identity, inclusion, show_label
from .monad import ConsistencyClass, MonadSpec, classify_consistency


@dataclass(eq=False)
class ComplementView:
    """S X minus the unit's range, with its action on injections."""

    base: MonadSpec
    _carriers: dict = field(default_factory=dict, repr=False)
    _unit_ranges: dict = field(default_factory=dict, repr=False)

    def unit_range(self, X: FinSet) -> dict[Label, Label]:
        got = self._unit_ranges.get(X)
        if got is None:
            got = {self.base.el_unit(X, x): x for x in X}
            self._unit_ranges[X] = got
        return got

    def carrier_at(self, X: FinSet) -> FinSet:
        got = self._carriers.get(X)
        if got is None:
            units = self.unit_range(X)
            got = FinSet(tuple(s for s in self.base.carrier(X)
                               if s not in units), _sorted=True)
            self._carriers[X] = got
        return got

    def size_at(self, n: int) -> int | None:
        if self.base.size_fn is None:
            return None
        return self.base.size_fn(n) - n

    def act_el(self, m: FinMap, s: Label) -> Label:
        out = self.base.el_map(m, s)
        if out in self.unit_range(m.cod):
            raise LawViolation(
                f"complement element {show_label(s)} landed on a unit; "
                f"the underlying monad is broken")
        return out

    def action_on_injection(self, m: FinMap) -> FinMap:
        if not m.is_injective():
            raise NotInjective("complement only acts on injections")
        dom = self.carrier_at(m.dom)
        cod = self.carrier_at(m.cod)
        if m.is_identity:
            return identity(dom)
        return FinMap(dom, cod, {s: self.act_el(m, s) for s in dom},
                      _trusted=True)


def complement(S: MonadSpec) -> ComplementView:
    if classify_consistency(S) != ConsistencyClass.CONSISTENT:
        raise InconsistentMonad(
            f"{S.name} is inconsistent; coproducts with it are handled "
            f"by the special-case table")
    return ComplementView(S)


def complement_action(view: ComplementView, m: FinMap, s: Label) -> Label:
    if not m.is_injective():
        raise NotInjective("complement only acts on injections")
    if s not in view.carrier_at(m.dom):
        raise ContractViolation(f"{show_label(s)} is not a complement element")
    return view.act_el(m, s)


def _subsets_ascending(n: FinSet):
    for r in range(n.size + 1):
        yield from itertools.combinations(n.elements, r)


def minimal_support(S: MonadSpec, n: FinSet, s: Label,
                    check_unique: bool = True) -> FinSet:
    """Least U with s in the range of S(U into n), by exhaustive search.

    Subsets are scanned in size-then-label order.  When another subset of
    the minimal size also supports s, the minimum is not unique and
    AmbiguousSupport is raised (callers special-case; this happens e.g.
    for constants of empty-set-preserving monads).
    """
    key = ("support", n, s)
    cached = S.cache.get(key)
    if cached is not None:
        return cached
    found = None
    for combo in _subsets_ascending(n):
        if found is not None and len(combo) > found.size:
            break
        U = FinSet(combo, _sorted=True)
        incl = inclusion(U, n)
        if any(S.el_map(incl, t) == s for t in S.carrier(U)):
            if found is None:
                found = U
                if not check_unique:
                    break
            elif U != found:
                raise AmbiguousSupport(
                    f"supports {found} and {U} both minimal for "
                    f"{show_label(s)}")
    if found is None:
        raise ContractViolation(f"{show_label(s)} not an element of the "
                                f"carrier over {n}")
    S.cache[key] = found
    return found


def restrict_to_support(S: MonadSpec, n: FinSet, s: Label,
                        U: FinSet) -> Label:
    """The unique preimage of s under S(U into n); unique because every
    monad acts injectively on injections."""
    incl = inclusion(U, n)
    for t in S.carrier(U):
        if S.el_map(incl, t) == s:
            return t
    raise ContractViolation(f"{U} does not support {show_label(s)}")
