from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from monadsum.finset import Atom, FinSet, atom_set, nat_set
from monadsum.freemonad import (FreeSystem, TOp, TVar, catalan_counts,
                                coproduct_with_free, free_pair_algebra,
                                graft, layered_to_plain, op_nodes,
                                plain_to_layered, relabel, signature,
                                term_monad, term_variables, verify_barr)
from monadsum.layered import Layer, Var
from monadsum.monad import builtin

BIN = signature(("f", 2))
UN = signature(("g", 1))
CONST = signature(("c", 0))


def test_signature_dup_names_rejected():
    from monadsum.errors import ContractViolation

    with pytest.raises(ContractViolation):
        signature(("f", 1), ("f", 2))


def test_empty_signature_terms_are_variables(one):
    fm = term_monad(signature())
    assert fm.enumerate_by_height(one, 4) == [TVar(a) for a in one]


def test_single_constant_counts(one):
    fm = term_monad(CONST)
    assert len(fm.enumerate_by_height(one, 3)) == 2     # the var and c


def test_grafting_var_rooted_is_substitution(one):
    fm = term_monad(BIN)
    a = one.elements[0]
    t = TVar(a)
    target = TOp("f", (TVar(a), TVar(a)))
    assert graft(t, {a: target}) == target


@given(st.integers(0, 10 ** 6))
def test_grafting_associative_sampled(seed):
    fm = term_monad(BIN + CONST)
    A = atom_set("x", "y")
    rng = random.Random(seed)
    t = fm.sample(A, rng, height=4)
    f = {a: fm.sample(A, rng, height=3) for a in A}
    g = {a: fm.sample(A, rng, height=2) for a in A}
    lhs = graft(graft(t, f), g)
    rhs = graft(t, {a: graft(f[a], g) for a in A})
    assert lhs == rhs


def test_relabel_functorial(one):
    fm = term_monad(BIN)
    A = atom_set("x", "y")
    B = atom_set("u")
    t = TOp("f", (TVar(Atom("x")), TVar(Atom("y"))))
    out = relabel(t, {Atom("x"): Atom("u"), Atom("y"): Atom("u")})
    assert term_variables(out) == {Atom("u")}


# -- the carrier recursion F A = H F A + A ---------------------------------------


@pytest.mark.parametrize("sig,depth", [(BIN, 3), (UN, 4), (CONST, 4),
                                       (BIN + UN, 2)])
def test_barr_recursion_exact(sig, depth, one):
    rep = verify_barr(sig, one, depth)
    assert rep.ok


def test_catalan_counts(one):
    assert catalan_counts(BIN, one, 4) == [1, 1, 2, 5, 14]


def test_unary_chain_counts(one):
    fm = term_monad(UN)
    assert len(fm.enumerate_by_height(one, 3)) == 4


# -- coproduct with a free monad --------------------------------------------------


def test_constant_signature_with_maybe(one):
    # F_c is the one-exception monad, so the coproduct stabilizes at
    # A + 2 already at depth 2
    ta = coproduct_with_free(builtin("maybe"), CONST)
    assert len(ta.enumerate(one, 1)) == 3
    assert len(ta.enumerate(one, 3)) == 3


def test_empty_signature_coproduct_is_other_summand(one):
    ta = coproduct_with_free(builtin("maybe"), signature())
    terms = ta.enumerate(one, 3)
    # only variables and the lone error layer survive
    assert len(terms) == 2


def test_free_layer_laws(one):
    ta = coproduct_with_free(builtin("maybe"), BIN, ops_budget=2)
    terms = ta.enumerate(one, 2)
    assign = {a: Var(a) for a in one}
    for t in terms:
        assert ta.subst(t, assign) == t
        assert ta.is_canonical(t)


def test_two_free_monads_translate_to_sum_signature():
    s1, s2 = signature(("f", 2)), signature(("u", 1))
    ta = free_pair_algebra(s1, s2)
    both = term_monad(s1 + s2)
    A = atom_set("a")
    for nodes, bucket in enumerate(both.enumerate_by_size(A, 3)):
        images = [plain_to_layered(ta, s1, s2, t) for t in bucket]
        assert len(set(images)) == len(bucket)
        for t, img in zip(bucket, images):
            assert layered_to_plain(img) == t
            assert ta.is_canonical(img)


def test_layered_depth_counts_free_pair():
    # layered terms of each total node count biject with plain terms
    s1, s2 = signature(("f", 2), ("c", 0)), signature(("u", 1))
    ta = free_pair_algebra(s1, s2)
    both = term_monad(s1 + s2)
    A = atom_set("a", "b")
    seen = set()
    for bucket in both.enumerate_by_size(A, 3):
        for t in bucket:
            img = plain_to_layered(ta, s1, s2, t)
            assert img not in seen
            seen.add(img)


def test_free_system_enum_full_support():
    fs = FreeSystem(BIN)
    ops1 = fs.enum_ops(1, 2)
    # nonvariable terms over exactly one variable with <= 2 nodes:
    # f(0,0), f(f(0,0),0) and f(0,f(0,0))
    assert len(ops1) == 3
    for op in ops1:
        assert fs.support(op, 1) == (0,)
