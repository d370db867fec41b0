from __future__ import annotations

import pytest

from monadsum.bialgebra import (Bialgebra, EMAlgebra, bialgebra_morphisms,
                                enumerate_bialgebras, enumerate_em_algebras,
                                free_algebra, freeness_violation,
                                is_bialgebra_morphism, transport)
from monadsum.errors import InvalidAlgebra, NotBijective
from monadsum.finset import (Atom, FinMap, FinSet, LabelSet, atom_set,
                             compose, identity, nat_set, search_bijection)
from monadsum.monad import builtin


def test_transport_identity_fixes(maybe, two):
    alg = free_algebra(maybe, two).algebra
    assert transport(alg, identity(alg.carrier)).structure == alg.structure


def test_transport_roundtrip(maybe, two):
    alg = free_algebra(maybe, two).algebra
    Y = nat_set(alg.carrier.size)
    i = FinMap(alg.carrier, Y, dict(zip(alg.carrier.elements, Y.elements)))
    there = transport(alg, i)
    back = transport(there, i.inverse())
    assert back.structure == alg.structure


def test_transport_requires_bijection(maybe, two, three):
    alg = free_algebra(maybe, two).algebra
    bad = FinMap(alg.carrier, two,
                 {x: two.elements[0] for x in alg.carrier})
    with pytest.raises(NotBijective):
        transport(alg, bad)


def test_transport_of_relabeled_free_algebra_lawful(powerset, one):
    alg = free_algebra(powerset, one).algebra
    Y = atom_set("p", "q")
    i = FinMap(alg.carrier, Y, dict(zip(alg.carrier.elements, Y.elements)))
    transport(alg, i).check()      # raises on any law failure


def test_free_algebra_carriers(one, two):
    E = atom_set("e")
    assert free_algebra(builtin("exception", E), two).algebra.carrier.size == 3
    assert free_algebra(builtin("powerset"), one).algebra.carrier.size == 2
    assert free_algebra(builtin("maybe"), two).algebra.carrier.size == 3


@pytest.mark.parametrize("name", ["maybe", "powerset"])
@pytest.mark.parametrize("asize", [0, 1, 2])
def test_free_algebra_universal_property(name, asize):
    S = builtin(name)
    A = nat_set(asize)
    free = free_algebra(S, A)
    targets = []
    for bsize in range(1, 4):
        targets.extend(enumerate_em_algebras(S, nat_set(bsize)))
    assert freeness_violation(free, targets) is None


def test_enumerate_terminal_algebras():
    T = builtin("terminal")
    assert len(enumerate_em_algebras(T, nat_set(1))) == 1


def test_enumerate_maybe_on_point():
    assert len(enumerate_em_algebras(builtin("maybe"), nat_set(1))) == 1


def test_enumerate_powerset_on_two(powerset):
    # sup-semilattice structures on a 2-element set: one per linear order
    algs = enumerate_em_algebras(powerset, nat_set(2))
    assert len(algs) == 2
    tops = {alg.structure(LabelSet((Atom(0), Atom(1)))) for alg in algs}
    assert tops == {Atom(0), Atom(1)}


def test_enumerate_counts_match_bialgebras(maybe, powerset):
    B = nat_set(2)
    lone = enumerate_em_algebras(maybe, B)
    other = enumerate_em_algebras(powerset, B)
    assert len(enumerate_bialgebras([maybe, powerset], B)) == \
        len(lone) * len(other)


# -- initial bialgebras ----------------------------------------------------------


def _initial_bialgebra(S, T):
    from monadsum.coproduct import build

    bld = build(S, T, FinSet())
    return bld


def test_initial_bialgebra_maybe_maybe_unique_morphisms(maybe):
    bld = _initial_bialgebra(maybe, maybe)
    assert bld.carrier.size == 2
    candidate = bld.as_bialgebra()
    candidate.check()
    from monadsum.coproduct import extend_into_bialgebra
    from monadsum.finset import all_maps, empty_map

    for bsize in range(1, 4):
        B = nat_set(bsize)
        for bi in enumerate_bialgebras([maybe, maybe], B):
            morphisms = bialgebra_morphisms(candidate, bi)
            assert len(morphisms) == 1
            expected = extend_into_bialgebra(bld, bi, empty_map(B))
            assert morphisms[0] == expected


def test_initial_bialgebra_exception_pair():
    E = atom_set("e")
    S = builtin("exception", E)
    bld = _initial_bialgebra(S, S)
    assert bld.carrier.size == 2


def test_morphisms_are_homomorphisms_for_both(maybe):
    bld = _initial_bialgebra(maybe, maybe)
    candidate = bld.as_bialgebra()
    B = nat_set(3)
    for bi in enumerate_bialgebras([maybe, maybe], B)[:4]:
        for f in bialgebra_morphisms(candidate, bi):
            assert is_bialgebra_morphism(f, candidate, bi)


def test_initial_injectivity_along_submonads(maybe):
    # injective monad morphisms on both sides induce an injective map of
    # initial bialgebras
    from monadsum.coproduct import injective_morphism_transfer
    from monadsum.monad import MonadMorphism

    E2 = atom_set("e1", "e2")
    big = builtin("exception", E2)

    def comp(X, s):
        if s.side == "L":
            return s
        return type(s)("R", Atom("e1"))

    i = MonadMorphism(maybe, big, comp, "maybe->exc2")
    f = injective_morphism_transfer(i, i, FinSet())
    assert f.is_injective()
    assert f.dom.size == 2 and f.cod.size == 4
