from __future__ import annotations

import pytest

from monadsum import advisor
from monadsum.bialgebra import enumerate_bialgebras
from monadsum.coproduct import (CoproductMonad, build, canonical_compare,
                                coproduct_law_suite, embeddings,
                                embedding_monad_morphism_ok, exception_oracle,
                                extend_into_bialgebra, family_build,
                                injective_morphism_transfer,
                                oracle_bialgebra_parts,
                                smallest_bialgebra_size_at_empty,
                                special_cases)
from monadsum.errors import InconsistentMonad, NoConvergence, NotInjective
from monadsum.finset import (EMPTY, Atom, FinMap, FinSet, Tagged, all_maps,
                             atom_set, compose, fset, nat_set)
from monadsum.monad import (MonadMorphism, builtin, check_laws,
                            default_exceptions, probe_sets)


def test_maybe_maybe_carrier_sizes(maybe):
    cm = CoproductMonad(maybe, maybe)
    for n in range(4):
        assert cm.at(nat_set(n)).carrier.size == n + 2


def test_powerset_exception_carrier(powerset, one):
    cm = CoproductMonad(powerset, builtin("exception", 1))
    assert cm.at(one).carrier.size == 4


def test_powerset_powerset_no_convergence(powerset, one):
    with pytest.raises(NoConvergence) as exc:
        build(powerset, powerset, one, budget=8)
    assert exc.value.verdict == advisor.NOT_EXISTS
    sizes = [t[0] for t in exc.value.trace]
    assert sizes == sorted(sizes)


def test_inconsistent_summand_dispatches(maybe):
    with pytest.raises(InconsistentMonad):
        build(builtin("terminal"), maybe, nat_set(1))


def test_unit_is_right_inclusion(maybe, two):
    bld = build(maybe, maybe, two)
    for a in two:
        assert bld.unit(a) == Tagged("R", a)


# -- multiplication -------------------------------------------------------------


def test_mult_unit_law(maybe, one):
    cm = CoproductMonad(maybe, maybe)
    mu = cm.mult(one)
    Z = cm.at(one).carrier
    for z in Z:
        assert mu(Tagged("R", z)) == z


def test_mult_outer_error_layer(maybe, one):
    # flattening a term whose outer layer is the left error keeps it
    cm = CoproductMonad(maybe, maybe)
    bld = cm.at(one)
    outer = cm.at(bld.carrier)
    mu = cm.mult(one)
    err_layer = outer.in_s(outer.s_star.elements[0])
    inner_err = bld.in_s(bld.s_star.elements[0])
    assert mu(err_layer) == inner_err


def test_mult_agrees_with_oracle_route(powerset, one):
    # compare through the canonical comparison: mu on the built side
    # equals the oracle's multiplication transported back
    E = default_exceptions(1)
    T = builtin("exception", E)
    cm = CoproductMonad(powerset, T)
    rep = canonical_compare(cm, powerset, E, one)
    assert rep.ok


def test_coproduct_spec_passes_generic_laws(maybe):
    cm = CoproductMonad(maybe, maybe)
    spec = cm.as_spec()
    rep = check_laws(spec, probe_sets(2), samples=60)
    assert rep.ok, rep.failures()


def test_coproduct_law_suite(powerset, maybe):
    cm = CoproductMonad(powerset, maybe)
    rep = coproduct_law_suite(cm, probe_sets(2), samples=100)
    assert rep.ok, rep.failures()


# -- embeddings -----------------------------------------------------------------


def test_embedding_images(maybe, one):
    bld = build(maybe, maybe, one)
    emb = embeddings(bld)
    err = Tagged("R", Atom("err"))
    a = one.elements[0]
    assert emb.inl(maybe.el_unit(one, a)) == Tagged("R", a)
    assert emb.inl(Tagged("R", Atom("err"))) == \
        bld.in_s(bld.s_star.elements[0])
    assert emb.inr(err) == bld.in_t(bld.t_star.elements[0])


def test_embedding_unit_square(maybe, one):
    cm = CoproductMonad(maybe, maybe)
    bld = cm.at(one)
    emb = embeddings(bld)
    assert compose(emb.inl, maybe.unit(one)) == bld.unit


def test_embeddings_injective_roster():
    roster = [
        (builtin("maybe"), builtin("maybe")),
        (builtin("powerset"), builtin("maybe")),
        (builtin("maybe"), builtin("powerset")),
        (builtin("reader", 2), builtin("exception", 1)),
        (builtin("state", 2), builtin("maybe")),
    ]
    for S, T in roster:
        for n in (0, 1, 2):
            bld = build(S, T, nat_set(n))
            emb = embeddings(bld)
            assert emb.inl.is_injective() and emb.inr.is_injective()


def test_embeddings_are_monad_morphisms(maybe, powerset):
    for S, T in [(maybe, maybe), (powerset, maybe)]:
        cm = CoproductMonad(S, T)
        for n in (0, 1, 2):
            assert embedding_monad_morphism_ok(cm, nat_set(n))


# -- oracle ---------------------------------------------------------------------


def test_exception_oracle_is_lawful(maybe, powerset):
    for T in (maybe, powerset, builtin("terminal")):
        O = exception_oracle(T, default_exceptions(1))
        rep = check_laws(O, probe_sets(2), samples=60)
        assert rep.ok, (T.name, rep.failures())


def test_exception_oracle_sizes(maybe, powerset, one):
    assert exception_oracle(maybe, default_exceptions(1)).carrier(one).size == 3
    assert exception_oracle(powerset,
                            default_exceptions(1)).carrier(one).size == 4
    assert exception_oracle(builtin("terminal"),
                            default_exceptions(1)).carrier(one).size == 1


def test_canonical_compare_rejects_wrong_oracle(powerset, one):
    # T(X) + E is not the coproduct: already its cardinality is off
    E = default_exceptions(1)
    T = builtin("exception", E)
    cm = CoproductMonad(powerset, T)
    bld = cm.at(one)
    wrong_size = powerset.carrier(one).size + 1      # |P(X)+E| at |X|=1
    assert bld.carrier.size != wrong_size


def test_canonical_compare_mismatch_report(powerset, one):
    # the wrong closed form P(X) + E disagrees in cardinality with the
    # built coproduct already at |X| = 1, while the right form matches
    E = default_exceptions(1)
    T = builtin("exception", E)
    cm = CoproductMonad(powerset, T)
    built = cm.at(one).carrier.size
    wrong = powerset.carrier(one).size + E.size
    assert built != wrong
    O = exception_oracle(powerset, E)
    assert built == O.carrier(one).size


# -- universal property -----------------------------------------------------------


@pytest.mark.parametrize("lname", ["maybe", "powerset"])
def test_free_bialgebra_universal_property(lname, maybe, one):
    S = builtin(lname)
    bld = build(S, maybe, one)
    candidate = bld.as_bialgebra()
    candidate.check()
    from monadsum.bialgebra import bialgebra_morphisms

    for bsize in range(1, 4):
        B = nat_set(bsize)
        for bi in enumerate_bialgebras([S, maybe], B):
            for h in all_maps(one, B):
                extensions = [
                    f for f in bialgebra_morphisms(candidate, bi)
                    if compose(f, bld.unit) == h]
                assert len(extensions) == 1
                assert extensions[0] == extend_into_bialgebra(bld, bi, h)


# -- special cases ----------------------------------------------------------------


def test_terminal_absorbs_each_builtin():
    one_m = builtin("terminal")
    roster = ["maybe", "powerset", "terminal", "terminal0"]
    for name in roster:
        out = special_cases(one_m, builtin(name))
        assert out is not None
        for n in range(3):
            assert out.carrier(nat_set(n)).size == 1


def test_terminal0_cases_by_bialgebra_search(maybe, powerset):
    z = builtin("terminal0")
    # partner preserving the empty set: the empty bialgebra exists
    assert smallest_bialgebra_size_at_empty(z, z) == 0
    out = special_cases(z, z)
    assert out.carrier(EMPTY).size == 0
    assert out.carrier(nat_set(2)).size == 1
    # partner with a nonempty value at 0: only singletons remain
    assert smallest_bialgebra_size_at_empty(z, powerset) == 1
    out2 = special_cases(z, powerset)
    assert out2.carrier(EMPTY).size == 1


def test_exception_exception_special_case():
    E, F = atom_set("e1"), atom_set("f1", "f2")
    S, T = builtin("exception", E), builtin("exception", F)
    out = special_cases(S, T)
    for n in range(3):
        assert out.carrier(nat_set(n)).size == n + 3
    rep = check_laws(out, probe_sets(2), samples=60)
    assert rep.ok
    # the chain-built coproduct agrees elementwise with the closed form
    cm = CoproductMonad(S, T)
    rep2 = canonical_compare(cm, S, F, nat_set(1))
    assert rep2.ok


def test_exception0_special_case(powerset, maybe):
    E = atom_set("e")
    z = builtin("exception0", E)
    out = special_cases(powerset, z)
    # powerset has a nonempty value at 0, so no zero modification
    assert out.carrier(EMPTY).size == 2 ** 1     # P(0 + E)
    r = builtin("reader", 2)
    out2 = special_cases(r, z)
    assert out2.carrier(EMPTY).size == 0         # reader kills 0
    assert out2.carrier(nat_set(1)).size == r.carrier(nat_set(2)).size


def test_special_case_none_for_plain_pairs(maybe, powerset):
    assert special_cases(powerset, builtin("reader", 2)) is None


# -- families ---------------------------------------------------------------------


def test_family_three_maybes(one):
    M = builtin("maybe")
    fb = family_build([M, M, M], one)
    assert fb.carrier.size == 4
    multi = fb.as_multialgebra()
    multi.check()
    for inj in fb.injections:
        assert inj.is_injective()


def test_family_binary_agrees_with_build(maybe, one):
    fb = family_build([maybe, maybe], one)
    bld = build(maybe, maybe, one)
    assert fb.carrier == bld.carrier
    assert fb.unit == bld.unit


def test_family_with_two_powersets_diverges(powerset, maybe, one):
    with pytest.raises(NoConvergence):
        family_build([powerset, maybe, powerset], one, budget=8)


# -- injective transfer ------------------------------------------------------------


def _maybe_into_exc2():
    big = builtin("exception", atom_set("e1", "e2"))

    def comp(X, s):
        if s.side == "L":
            return s
        return Tagged("R", Atom("e1"))

    return MonadMorphism(builtin("maybe"), big, comp, "maybe->exc2")


@pytest.mark.parametrize("n", [0, 1, 2])
def test_transfer_injective(n):
    i = _maybe_into_exc2()
    f = injective_morphism_transfer(i, i, nat_set(n))
    assert f.is_injective()
    assert f.dom.size == n + 2 and f.cod.size == n + 4


def test_transfer_identity_morphisms(maybe, one):
    ident = MonadMorphism(maybe, maybe, lambda X, s: s, "id")
    f = injective_morphism_transfer(ident, ident, one)
    assert f.is_identity


def test_transfer_rejects_noninjective(maybe, one):
    collapse = MonadMorphism(
        maybe, builtin("terminal"),
        lambda X, s: Atom("*"), "collapse")
    with pytest.raises(NotInjective):
        injective_morphism_transfer(collapse, collapse, one)
