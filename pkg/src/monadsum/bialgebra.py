"""Eilenberg-Moore algebras, bialgebras, transport and freeness checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceeded, InvalidAlgebra, NotBijective
from .finset import FinMap, FinSet, compose, identity
from .monad import MonadSpec, em_violation


@dataclass(eq=False)
class EMAlgebra:
    monad: MonadSpec
    carrier: FinSet
    structure: FinMap

    def __post_init__(self):
        if self.structure.cod != self.carrier:
            raise InvalidAlgebra("structure must land in the carrier")

    def check(self, cap: int = 200_000) -> None:
        bad = em_violation(self.monad, self.carrier, self.structure, cap)
        if bad is not None:
            raise InvalidAlgebra(f"{self.monad.name} on {self.carrier}: {bad}")


@dataclass(eq=False)
class Bialgebra:
    """One carrier with an EM structure for each participating monad."""

    carrier: FinSet
    parts: tuple[EMAlgebra, ...]

    def __post_init__(self):
        for p in self.parts:
            if p.carrier != self.carrier:
                raise InvalidAlgebra("bialgebra parts must share the carrier")

    def check(self) -> None:
        for p in self.parts:
            p.check()


def transport(alg: EMAlgebra, i: FinMap, check: bool = True) -> EMAlgebra:
    """Move an algebra along a bijection: i . structure . S(i^{-1})."""
    if not i.is_bijective():
        raise NotBijective("transport needs a bijection")
    S = alg.monad
    inv = i.inverse()
    new_structure = compose(i, compose(alg.structure, S.action(inv)))
    out = EMAlgebra(S, i.cod, new_structure)
    if check:
        out.check()
    return out


@dataclass(eq=False)
class FreeAlgebra:
    algebra: EMAlgebra
    unit_arrow: FinMap       # A -> S A


def free_algebra(S: MonadSpec, A: FinSet) -> FreeAlgebra:
    """The free algebra on A: carrier S A with the multiplication."""
    return FreeAlgebra(EMAlgebra(S, S.carrier(A), S.mult(A)), S.unit(A))


def enumerate_em_algebras(S: MonadSpec, carrier: FinSet,
                          cap: int = 10 ** 6) -> list[EMAlgebra]:
    """All EM structures on the carrier, in deterministic order.

    The unit law pins the table on unit elements, so only assignments of
    the complement positions are enumerated.
    """
    SA = S.carrier(carrier)
    forced = {}
    for x in carrier:
        forced[S.el_unit(carrier, x)] = x
    free_positions = [s for s in SA if s not in forced]
    count = carrier.size ** len(free_positions)
    if count > cap:
        raise BudgetExceeded(
            f"{count} candidate structures exceed cap {cap}")
    if carrier.size == 0 and free_positions:
        return []
    SSA = S.carrier(SA)
    out = []
    for values in itertools.product(carrier.elements,
                                    repeat=len(free_positions)):
        table = dict(forced)
        table.update(zip(free_positions, values))
        structure = FinMap(SA, carrier, table, _trusted=True)
        ok = True
        for w in SSA:
            if structure(S.el_mult(carrier, w)) != structure(
                    S.el_map(structure, w)):
                ok = False
                break
        if ok:
            out.append(EMAlgebra(S, carrier, structure))
    return out


def enumerate_bialgebras(monads, carrier: FinSet,
                         cap: int = 10 ** 6) -> list[Bialgebra]:
    per_monad = [enumerate_em_algebras(S, carrier, cap) for S in monads]
    return [Bialgebra(carrier, combo)
            for combo in itertools.product(*per_monad)]


def is_em_morphism(f: FinMap, a: EMAlgebra, b: EMAlgebra) -> bool:
    """f . structure_a = structure_b . S f on every element."""
    S = a.monad
    for s in S.carrier(a.carrier):
        if f(a.structure(s)) != b.structure(S.el_map(f, s)):
            return False
    return True


def is_bialgebra_morphism(f: FinMap, a: Bialgebra, b: Bialgebra) -> bool:
    return all(is_em_morphism(f, pa, pb)
               for pa, pb in zip(a.parts, b.parts))


def bialgebra_morphisms(a: Bialgebra, b: Bialgebra,
                        cap: int = 10 ** 6) -> list[FinMap]:
    """Exhaustive search over all maps between the carriers."""
    from .finset import all_maps

    return [f for f in all_maps(a.carrier, b.carrier, cap)
            if is_bialgebra_morphism(f, a, b)]


def freeness_violation(free: FreeAlgebra, targets: list[EMAlgebra],
                       cap: int = 10 ** 6) -> str | None:
    """Every map from the generators into a target algebra must extend
    uniquely to an algebra morphism; None when that holds for all the
    targets, else a description of the failure."""
    from .finset import all_maps

    A = free.unit_arrow.dom
    for tgt in targets:
        for h in all_maps(A, tgt.carrier, cap):
            extensions = [
                f for f in all_maps(free.algebra.carrier, tgt.carrier, cap)
                if is_em_morphism(f, free.algebra, tgt)
                and compose(f, free.unit_arrow) == h]
            if len(extensions) != 1:
                return (f"{len(extensions)} extensions of a generator map "
                        f"into {tgt.carrier}")
    return None
