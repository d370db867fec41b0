from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from monadsum.coproduct import CoproductMonad, build, embeddings
from monadsum.errors import AmbiguousSupport, BudgetExceeded
from monadsum.finset import (Atom, FinSet, LabelSet, Tagged, atom_set,
                             nat_set)
from monadsum.layered import (Layer, MaterializedSystem, TermAlgebra, Var,
                              kleisli_assoc_samples, pretty, term_algebra,
                              term_depth, term_key, terms_of_solution)
from monadsum.monad import builtin


@pytest.fixture
def pm():
    return term_algebra(builtin("powerset"), builtin("maybe"))


@pytest.fixture
def mm():
    return term_algebra(builtin("maybe"), builtin("maybe"))


ERR = Tagged("R", Atom("err"))


def test_unit_layer_collapses(pm):
    v = Var(Atom("a"))
    unit_op = builtin("powerset").el_unit(nat_set(1), Atom(0))
    assert pm.normalize(Layer("L", unit_op, (v,))) == v


def test_duplicate_children_merge_to_unit(pm):
    v = Var(Atom("a"))
    op = LabelSet((Atom(0), Atom(1)))
    assert pm.normalize(Layer("L", op, (v, v))) == v


def test_normalize_idempotent(pm):
    v = Var(Atom("a"))
    op = LabelSet((Atom(0), Atom(1)))
    err = Layer("R", ERR, ())
    t = pm.normalize(Layer("L", op, (v, err)))
    assert pm.normalize(t) == t
    assert pm.is_canonical(t)


def test_normalize_order_independent(pm):
    v, w = Var(Atom("a")), Var(Atom("b"))
    op = LabelSet((Atom(0), Atom(1)))
    t1 = pm.normalize(Layer("L", op, (v, w)))
    swapped = LabelSet((Atom(0), Atom(1)))
    t2 = pm.normalize(Layer("L", swapped, (w, v)))
    assert t1 == t2


def test_support_minimized(pm):
    # an op ignoring its second index drops that child
    v, w = Var(Atom("a")), Var(Atom("b"))
    op = LabelSet((Atom(0),))      # only index 0 used, not a unit over 2
    t = pm.normalize(Layer("L", op, (v, w)))
    assert t == v                  # {0} over two indices is the unit on 0


def test_powerset_pair_support(pm):
    v, w, u = Var(Atom("a")), Var(Atom("b")), Var(Atom("c"))
    op = LabelSet((Atom(0), Atom(2)))
    t = pm.normalize(Layer("L", op, (v, w, u)))
    assert isinstance(t, Layer) and t.arity == 2
    assert t.children == (v, u)


def test_alternation_enforced(pm):
    # left over left flattens through the powerset multiplication
    v, w = Var(Atom("a")), Var(Atom("b"))
    op2 = LabelSet((Atom(0), Atom(1)))
    inner = pm.normalize(Layer("L", op2, (v, w)))
    outer = pm.normalize(Layer("L", op2, (inner, Var(Atom("c")))))
    assert isinstance(outer, Layer)
    assert outer.arity == 3        # union pooled the children
    assert pm.is_canonical(outer)


def test_left_over_right_stays(pm):
    err = Layer("R", ERR, ())
    op = LabelSet((Atom(0), Atom(1)))
    t = pm.normalize(Layer("L", op, (Var(Atom("a")), err)))
    assert isinstance(t, Layer) and t.side == "L"
    assert any(isinstance(c, Layer) and c.side == "R" for c in t.children)


# -- embed ---------------------------------------------------------------------


def test_embed_unit_is_var(pm):
    A = atom_set("a", "b")
    P = builtin("powerset")
    assert pm.embed_left(A, P.el_unit(A, Atom("a"))) == Var(Atom("a"))


def test_embed_powerset_pair(pm):
    A = atom_set("a", "b")
    t = pm.embed_left(A, LabelSet((Atom("a"), Atom("b"))))
    assert isinstance(t, Layer) and t.arity == 2 and t.side == "L"


def test_embed_constant_nullary(pm):
    A = atom_set("a")
    t = pm.embed_right(A, ERR)
    assert isinstance(t, Layer) and t.arity == 0


# -- subst ----------------------------------------------------------------------


def test_subst_with_vars_is_identity(pm):
    A = atom_set("a", "b")
    terms = pm.enumerate(A, 2)
    assign = {a: Var(a) for a in A}
    for t in terms:
        assert pm.subst(t, assign) == t


def test_subst_flattens_same_side(pm):
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    op = LabelSet((Atom(0), Atom(1)))
    t = pm.normalize(Layer("L", op, (Var(a), Layer("R", ERR, ()))))
    assign = {a: pm.normalize(Layer("L", op, (Var(b), Var(c))))}
    out = pm.subst(t, assign)
    assert isinstance(out, Layer) and out.side == "L" and out.arity == 3
    assert pm.is_canonical(out)


def test_subst_missing_variable_errors(pm):
    from monadsum.errors import ContractViolation

    with pytest.raises(ContractViolation):
        pm.subst(Var(Atom("a")), {})


@pytest.mark.parametrize("lname,rname", [
    ("maybe", "maybe"), ("powerset", "maybe"), ("reader", "maybe")])
def test_symbolic_monad_laws(lname, rname):
    L = builtin(lname, 2 if lname == "reader" else None)
    ta = term_algebra(L, builtin(rname))
    for asize in (1, 2):
        A = nat_set(asize)
        checked, ok = kleisli_assoc_samples(L, builtin(rname), A,
                                            samples=120, seed=7)
        assert ok and checked >= 100
        # unit laws
        terms = ta.enumerate(A, 2)
        vars_assign = {a: Var(a) for a in A}
        for t in terms:
            assert ta.subst(t, vars_assign) == t
        for a in A:
            assert ta.subst(Var(a), vars_assign) == Var(a)


# -- enumeration -----------------------------------------------------------------


def test_enumerate_depth_zero(mm):
    A = atom_set("a", "b")
    assert mm.enumerate(A, 0) == [Var(Atom("a")), Var(Atom("b"))]


def test_enumerate_maybe_maybe(mm, one):
    assert len(mm.enumerate(one, 2)) == 3


def test_enumerate_counts_match_chain_stages(pm, one):
    # depth-d enumeration sizes equal the chain stage carrier sizes
    P, M = builtin("powerset"), builtin("maybe")
    bld = build(P, M, one)
    for depth in range(1, bld.sol.converged_at + 1):
        terms = pm.enumerate(one, depth)
        lefts = sum(1 for t in terms
                    if isinstance(t, Layer) and t.side == "L"
                    and term_depth(t) <= depth)
        stage = bld.sol.stages[depth][0].size
        assert lefts == stage


def test_canonical_order_var_before_layers(mm, one):
    terms = mm.enumerate(one, 2)
    kinds = [0 if isinstance(t, Var) else (1 if t.side == "L" else 2)
             for t in terms]
    assert kinds == sorted(kinds)


# -- mode agreement ----------------------------------------------------------------


@pytest.mark.parametrize("lname,rname,asize", [
    ("maybe", "maybe", 1), ("maybe", "maybe", 2),
    ("powerset", "maybe", 1), ("powerset", "exception", 1),
    ("reader", "maybe", 1),
])
def test_terms_bijection_with_materialized(lname, rname, asize):
    lparam = 2 if lname == "reader" else None
    rparam = 1 if rname == "exception" else None
    S, T = builtin(lname, lparam), builtin(rname, rparam)
    A = nat_set(asize)
    bld = build(S, T, A)
    ta, tx, ty = terms_of_solution(bld.sol, S, T, A)
    image = set(tx.values()) | set(ty.values()) | {Var(a) for a in A}
    assert len(image) == bld.carrier.size
    enum = set(ta.enumerate(A, bld.sol.converged_at))
    assert image == enum


def test_terms_commute_with_embeddings(one):
    P, M = builtin("powerset"), builtin("maybe")
    bld = build(P, M, one)
    ta, tx, ty = terms_of_solution(bld.sol, P, M, one)
    emb = embeddings(bld)

    def term_of(z):
        if z.side == "R":
            return Var(z.inner)
        if z.inner.side == "L":
            return tx[z.inner.inner]
        return ty[z.inner.inner]

    for s in P.carrier(one):
        assert term_of(emb.inl(s)) == ta.embed_left(one, s)
    for t in M.carrier(one):
        assert term_of(emb.inr(t)) == ta.embed_right(one, t)


def test_terms_commute_with_mult(one):
    M = builtin("maybe")
    cm = CoproductMonad(M, M)
    bld = cm.at(one)
    outer = cm.at(bld.carrier)
    mu = cm.mult(one)
    ta, tx, ty = terms_of_solution(bld.sol, M, M, one)
    ta2, tx2, ty2 = terms_of_solution(outer.sol, M, M, bld.carrier)

    def inner_term(z):
        if z.side == "R":
            return Var(z.inner)
        return (tx if z.inner.side == "L" else ty)[z.inner.inner]

    def outer_term(z):
        if z.side == "R":
            return Var(z.inner)
        return (tx2 if z.inner.side == "L" else ty2)[z.inner.inner]

    assign = {z: inner_term(z) for z in bld.carrier}
    for w in outer.carrier:
        flattened = ta.subst(outer_term(w), assign)
        assert flattened == inner_term(mu(w))


def test_pretty_output(mm, one):
    terms = mm.enumerate(one, 2)
    text = "\n".join(pretty(t) for t in terms)
    assert "var" in text and "R" in text


def test_pool_budget(pm):
    tight = TermAlgebra(MaterializedSystem(builtin("powerset")),
                        MaterializedSystem(builtin("maybe")), pool_cap=1)
    op = LabelSet((Atom(0), Atom(1)))
    with pytest.raises(BudgetExceeded):
        tight.normalize(Layer("L", op, (Var(Atom("a")), Var(Atom("b")))))
