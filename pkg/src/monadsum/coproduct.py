"""The coproduct of two (or a family of) computable monads.

A converged build at a base set A carries (S*A + T*A) + A together with
the two transported free-algebra structures; the unit is the right
inclusion and every further operation (multiplication, functor action,
embeddings, comparisons) arises from one primitive: the unique extension
of a generator map into an arbitrary bialgebra, computed by the chain
recursion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bialgebra import Bialgebra, EMAlgebra
from .chains import (Diverged, GTarget, SolutionPair, eval_obj, family_system,
                     recurse, run_chain, two_sort_system)
from .complement import ComplementView, complement
from .errors import (BudgetExceeded, ContractViolation, InconsistentMonad,
                     NoConvergence, NotInjective)
from .finset import (EMPTY, FinMap, FinSet, Label, Tagged, compose,
                     coproduct as finset_coproduct, identity, ncase, nsum,
                     show_label)
from .monad import (ConsistencyClass, LawReport, MonadMorphism, MonadSpec,
                    classify_consistency, probe_sets)

DEFAULT_BUDGET = 24
DEFAULT_MAX_CARRIER = 300_000
TABLE_CAP = 200_000


# ---------------------------------------------------------------------------
# Converged builds


@dataclass(eq=False)
class CoproductBuild:
    left: MonadSpec
    right: MonadSpec
    base: FinSet
    sol: SolutionPair
    left_view: ComplementView
    right_view: ComplementView
    _tables: dict = field(default_factory=dict, repr=False)

    # -- carrier layout: ((S* + T*) + A)

    @property
    def s_star(self) -> FinSet:
        return self.sol.carriers[0]

    @property
    def t_star(self) -> FinSet:
        return self.sol.carriers[1]

    @property
    def carrier(self) -> FinSet:
        got = self._tables.get("carrier")
        if got is None:
            inner = finset_coproduct(self.s_star, self.t_star)
            outer = finset_coproduct(inner.set, self.base)
            got = outer.set
            self._tables["carrier"] = got
        return got

    def in_s(self, x: Label) -> Label:
        return Tagged("L", Tagged("L", x))

    def in_t(self, y: Label) -> Label:
        return Tagged("L", Tagged("R", y))

    def in_base(self, a: Label) -> Label:
        return Tagged("R", a)

    @property
    def unit(self) -> FinMap:
        got = self._tables.get("unit")
        if got is None:
            got = FinMap(self.base, self.carrier,
                         {a: Tagged("R", a) for a in self.base},
                         _trusted=True)
            self._tables["unit"] = got
        return got

    # -- inner sums W_s = T* + A and W_t = S* + A (labels as evaluated
    #    by the chain, so the structure maps line up exactly)

    def w_s(self) -> FinSet:
        got = self._tables.get("w_s")
        if got is None:
            got = eval_obj(self.sol.system.rhs[0].inner, self.sol.carriers)
            self._tables["w_s"] = got
        return got

    def w_t(self) -> FinSet:
        got = self._tables.get("w_t")
        if got is None:
            got = eval_obj(self.sol.system.rhs[1].inner, self.sol.carriers)
            self._tables["w_t"] = got
        return got

    def emb_w(self, side: str, w: Label) -> Label:
        """(T* + A) or (S* + A) into the carrier."""
        if w.side == "L":
            return self.in_t(w.inner) if side == "s" else self.in_s(w.inner)
        return Tagged("R", w.inner)

    # -- transported free-algebra structures, elementwise

    def _psi(self, side: str):
        """S(W) -> carrier: units embed, the complement goes through the
        structure isomorphism."""
        key = f"psi_{side}"
        got = self._tables.get(key)
        if got is not None:
            return got
        monad = self.left if side == "s" else self.right
        W = self.w_s() if side == "s" else self.w_t()
        struct = self.sol.structures[0 if side == "s" else 1]
        into = self.in_s if side == "s" else self.in_t
        table = {}
        for u in monad.carrier(W):
            table[u] = None
        for w in W:
            table[monad.el_unit(W, w)] = self.emb_w(side, w)
        for u, v in table.items():
            if v is None:
                table[u] = into(struct(u))
        got = FinMap(monad.carrier(W), self.carrier, table, _trusted=True)
        self._tables[key] = got
        return got

    def p_el(self, side: str, v: Label) -> Label:
        """The bialgebra structure on the carrier, one element at a time:
        v is an S-element (resp. T-element) over the carrier."""
        monad = self.left if side == "s" else self.right
        W = self.w_s() if side == "s" else self.w_t()
        psi_inv = self._psi_inv(side)
        return self._psi(side)(monad.el_mult(W, monad.el_map(psi_inv, v)))

    def _psi_inv(self, side: str) -> FinMap:
        key = f"psi_inv_{side}"
        got = self._tables.get(key)
        if got is None:
            got = self._psi(side).inverse()
            self._tables[key] = got
        return got

    def p_s_el(self, v: Label) -> Label:
        return self.p_el("s", v)

    def p_t_el(self, v: Label) -> Label:
        return self.p_el("t", v)

    def p_s(self, cap: int = TABLE_CAP) -> FinMap:
        return self._p_table("s", cap)

    def p_t(self, cap: int = TABLE_CAP) -> FinMap:
        return self._p_table("t", cap)

    def _p_table(self, side: str, cap: int) -> FinMap:
        key = f"p_{side}"
        got = self._tables.get(key)
        if got is None:
            monad = self.left if side == "s" else self.right
            if monad.size_fn is not None and \
                    monad.size_fn(self.carrier.size) > cap:
                raise BudgetExceeded(
                    f"{monad.name} over a {self.carrier.size}-element "
                    f"carrier is too large to tabulate")
            SZ = monad.carrier(self.carrier)
            got = FinMap(SZ, self.carrier,
                         {v: self.p_el(side, v) for v in SZ}, _trusted=True)
            self._tables[key] = got
        return got

    def as_bialgebra(self, cap: int = TABLE_CAP) -> Bialgebra:
        return Bialgebra(self.carrier, (
            EMAlgebra(self.left, self.carrier, self.p_s(cap)),
            EMAlgebra(self.right, self.carrier, self.p_t(cap))))


def build(S: MonadSpec, T: MonadSpec, A: FinSet,
          budget: int = DEFAULT_BUDGET,
          max_carrier: int = DEFAULT_MAX_CARRIER) -> CoproductBuild:
    """Materialize (S (+) T) at A via the two-sort chain.

    Raises InconsistentMonad for summands the special-case table owns and
    NoConvergence (with trace and advisor verdict) when the chain does
    not settle within budget.
    """
    cs = classify_consistency(S)
    ct = classify_consistency(T)
    if cs != ConsistencyClass.CONSISTENT or ct != ConsistencyClass.CONSISTENT:
        raise InconsistentMonad(
            "an inconsistent summand; use special_cases")
    sv, tv = complement(S), complement(T)
    system = two_sort_system(sv, tv, A)
    out = run_chain(system, budget=budget, max_carrier=max_carrier)
    if isinstance(out, Diverged):
        raise NoConvergence(
            f"{S.name} (+) {T.name} did not converge at |A|={A.size} "
            f"within budget {budget}",
            trace=out.trace, verdict=_advisor_verdict(S, T))
    return CoproductBuild(S, T, A, out, sv, tv)


def _advisor_verdict(S: MonadSpec, T: MonadSpec) -> str | None:
    from . import advisor

    ps = advisor.builtin_profile(S)
    pt = advisor.builtin_profile(T)
    if ps is None or pt is None:
        return advisor.UNKNOWN
    return advisor.coproduct_exists(ps, pt)


# ---------------------------------------------------------------------------
# The one primitive: extension of a generator map into a bialgebra


def extend(bld: CoproductBuild, sigma: Callable[[Label], Label],
           tau: Callable[[Label], Label], B: FinSet,
           h: FinMap) -> FinMap:
    """[f^S, f^T, h]: the unique bialgebra morphism from the free build
    into (B, sigma, tau) extending h.  sigma/tau act elementwise on
    S-elements (T-elements) over B."""
    target = GTarget(carriers=(B, B), algebras=(sigma, tau), point=h)
    f_s, f_t = recurse(bld.sol, target)
    table = {}
    for z in bld.carrier:
        if z.side == "R":
            table[z] = h(z.inner)
        elif z.inner.side == "L":
            table[z] = f_s(z.inner.inner)
        else:
            table[z] = f_t(z.inner.inner)
    return FinMap(bld.carrier, B, table, _trusted=True)


def extend_into_bialgebra(bld: CoproductBuild, target: Bialgebra,
                          h: FinMap) -> FinMap:
    sigma, tau = target.parts
    return extend(bld, sigma.structure, tau.structure, target.carrier, h)


# ---------------------------------------------------------------------------
# The coproduct as a monad


@dataclass(eq=False)
class CoproductMonad:
    """Lazily materialized coproduct: one converged build per base set."""

    left: MonadSpec
    right: MonadSpec
    budget: int = DEFAULT_BUDGET
    max_carrier: int = DEFAULT_MAX_CARRIER
    _builds: dict = field(default_factory=dict, repr=False)
    _actions: dict = field(default_factory=dict, repr=False)
    _mults: dict = field(default_factory=dict, repr=False)

    @property
    def name(self) -> str:
        return f"{self.left.name}(+){self.right.name}"

    def at(self, A: FinSet) -> CoproductBuild:
        got = self._builds.get(A)
        if got is None:
            got = build(self.left, self.right, A,
                        budget=self.budget, max_carrier=self.max_carrier)
            self._builds[A] = got
        return got

    def carrier(self, A: FinSet) -> FinSet:
        return self.at(A).carrier

    def unit(self, A: FinSet) -> FinMap:
        return self.at(A).unit

    def action(self, m: FinMap) -> FinMap:
        """Functor action via freeness: extend unit . m; total on all
        maps, injective on injections."""
        got = self._actions.get(m)
        if got is None:
            src = self.at(m.dom)
            dst = self.at(m.cod)
            got = extend(src, dst.p_s_el, dst.p_t_el, dst.carrier,
                         compose(dst.unit, m))
            self._actions[m] = got
        return got

    def mult(self, A: FinSet) -> FinMap:
        """(S(+)T)(S(+)T)A -> (S(+)T)A, extending the identity."""
        got = self._mults.get(A)
        if got is None:
            inner = self.at(A)
            outer = self.at(inner.carrier)
            got = extend(outer, inner.p_s_el, inner.p_t_el, inner.carrier,
                         identity(inner.carrier))
            self._mults[A] = got
        return got

    def as_spec(self) -> MonadSpec:
        cm = self

        def obj(X: FinSet) -> FinSet:
            return cm.at(X).carrier

        def el_map(f: FinMap, z: Label) -> Label:
            return cm.action(f)(z)

        def el_unit(X: FinSet, x: Label) -> Label:
            return Tagged("R", x)

        def el_mult(X: FinSet, w: Label) -> Label:
            return cm.mult(X)(w)

        return MonadSpec(cm.name, obj, el_map, el_unit, el_mult)


# ---------------------------------------------------------------------------
# Embeddings


@dataclass(eq=False)
class EmbeddingPair:
    build: CoproductBuild
    inl: FinMap        # S A -> (S(+)T) A
    inr: FinMap        # T A -> (S(+)T) A


def embeddings(bld: CoproductBuild) -> EmbeddingPair:
    """Summand inclusions: units go to generators, complement elements
    are pushed along the right inclusion and then through the structure
    isomorphism."""
    out = []
    for side in ("s", "t"):
        monad = bld.left if side == "s" else bld.right
        view = bld.left_view if side == "s" else bld.right_view
        W = bld.w_s() if side == "s" else bld.w_t()
        struct = bld.sol.structures[0 if side == "s" else 1]
        into = bld.in_s if side == "s" else bld.in_t
        inr_map = FinMap(bld.base, W,
                         {a: Tagged("R", a) for a in bld.base}, _trusted=True)
        units = {monad.el_unit(bld.base, a): a for a in bld.base}
        table = {}
        for s in monad.carrier(bld.base):
            a = units.get(s)
            if a is not None:
                table[s] = Tagged("R", a)
            else:
                table[s] = into(struct(view.act_el(inr_map, s)))
        out.append(FinMap(monad.carrier(bld.base), bld.carrier, table,
                          _trusted=True))
    return EmbeddingPair(bld, out[0], out[1])


def embedding_monad_morphism_ok(cm: CoproductMonad, A: FinSet) -> bool:
    """Unit and multiplication squares for both embeddings at base A."""
    bld = cm.at(A)
    emb = embeddings(bld)
    for side, monad, comp in (("s", cm.left, emb.inl),
                              ("t", cm.right, emb.inr)):
        if compose(comp, monad.unit(A)) != bld.unit:
            return False
        # comp_A . mult = cop-mult . emb-at-carrier . S(comp_A)
        emb2 = embeddings(cm.at(bld.carrier))
        comp2 = emb2.inl if side == "s" else emb2.inr
        lhs = compose(comp, monad.mult(A))
        rhs = compose(cm.mult(A), compose(comp2, monad.action(comp)))
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Exception-monad oracle


def exception_oracle(T: MonadSpec, E: FinSet) -> MonadSpec:
    """The monad X |-> T(X + E): the known closed form for coproducts
    with an exception summand."""
    plus_cache: dict = {}
    collapse_cache: dict = {}
    lift_cache: dict = {}

    def plus_e(X: FinSet) -> FinSet:
        got = plus_cache.get(X)
        if got is None:
            got = plus_cache[X] = finset_coproduct(X, E).set
        return got

    def obj(X: FinSet) -> FinSet:
        return T.carrier(plus_e(X))

    def lift(f: FinMap) -> FinMap:
        got = lift_cache.get(f)
        if got is None:
            src, dst = plus_e(f.dom), plus_e(f.cod)
            tab = f.table
            got = FinMap(src, dst,
                         {z: Tagged("L", tab[z.inner]) if z.side == "L"
                          else z for z in src}, _trusted=True)
            lift_cache[f] = got
        return got

    def el_map(f: FinMap, s: Label) -> Label:
        return T.el_map(lift(f), s)

    def el_unit(X: FinSet, x: Label) -> Label:
        return T.el_unit(plus_e(X), Tagged("L", x))

    def el_mult(X: FinSet, w: Label) -> Label:
        W = plus_e(X)
        collapse = collapse_cache.get(X)
        if collapse is None:
            OX = T.carrier(W)
            src = finset_coproduct(OX, E).set
            collapse = FinMap(
                src, OX,
                {z: (z.inner if z.side == "L"
                     else T.el_unit(W, Tagged("R", z.inner)))
                 for z in src}, _trusted=True)
            collapse_cache[X] = collapse
        return T.el_mult(W, T.el_map(collapse, w))

    size_fn = None
    if T.size_fn is not None:
        size_fn = lambda n: T.size_fn(n + E.size)

    el_random = None
    if T.el_random is not None:
        el_random = lambda Y, rng: T.el_random(plus_e(Y), rng)

    spec = MonadSpec(f"{T.name}(-+{E.size})", obj, el_map, el_unit, el_mult,
                     size_fn=size_fn, el_random=el_random)
    spec.cache["oracle_of"] = (T, E)
    return spec


def oracle_bialgebra_parts(T: MonadSpec, E: FinSet, A: FinSet):
    """(carrier, sigma, tau, unit) of T(A+E) seen as a (T, M_E)-bialgebra:
    sigma is T's multiplication, tau folds raised exceptions in."""
    W = finset_coproduct(A, E).set
    OA = T.carrier(W)

    def sigma(v: Label) -> Label:          # T(OA) -> OA
        return T.el_mult(W, v)

    def tau(v: Label) -> Label:            # OA + E -> OA
        if v.side == "L":
            return v.inner
        return T.el_unit(W, Tagged("R", v.inner))

    h = FinMap(A, OA, {a: T.el_unit(W, Tagged("L", a)) for a in A},
               _trusted=True)
    return OA, sigma, tau, h


@dataclass
class CompareReport:
    morphism: FinMap
    bijective: bool
    unit_ok: bool
    mult_checked: int
    mult_ok: bool
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.bijective and self.unit_ok and self.mult_ok


def canonical_compare(cm: CoproductMonad, T: MonadSpec, E: FinSet,
                      A: FinSet, oracle: MonadSpec | None = None,
                      check_mult: bool = True) -> CompareReport:
    """Compare a chain-built (T (+) M_E) A against the closed form T(A+E).

    The comparison is the unique bialgebra morphism extending the
    oracle's unit; the report checks bijectivity and the unit and
    multiplication squares elementwise.
    """
    if oracle is None:
        oracle = exception_oracle(T, E)
    bld = cm.at(A)
    OA, sigma, tau, h = oracle_bialgebra_parts(T, E, A)
    phi = extend(bld, sigma, tau, OA, h)
    bijective = phi.is_bijective()
    unit_ok = compose(phi, bld.unit) == h
    notes = []
    mult_checked, mult_ok = 0, True
    if check_mult:
        inner = bld
        outer = cm.at(inner.carrier)
        mu_u = cm.mult(A)
        OZ, sigma_z, tau_z, h_z = oracle_bialgebra_parts(T, E, inner.carrier)
        phi_level2 = extend(outer, sigma_z, tau_z, OZ, h_z)
        # g : Z_A + E -> O A + E, inner map of O(phi)
        src = finset_coproduct(inner.carrier, E).set
        dst = finset_coproduct(OA, E).set
        g = FinMap(src, dst,
                   {z: (Tagged("L", phi(z.inner)) if z.side == "L" else z)
                    for z in src}, _trusted=True)
        for w in outer.carrier:
            lhs = phi(mu_u(w))
            rhs = oracle.el_mult(A, T.el_map(g, phi_level2(w)))
            mult_checked += 1
            if lhs != rhs:
                mult_ok = False
                notes.append(f"mult square fails at {show_label(w)}")
                break
    return CompareReport(phi, bijective, unit_ok, mult_checked, mult_ok,
                         notes)


# ---------------------------------------------------------------------------
# Special cases: inconsistent or exception-family summands


def smallest_bialgebra_size_at_empty(S: MonadSpec, T: MonadSpec) -> int:
    """0 when the empty set carries a bialgebra (both monads preserve it),
    else 1; a singleton always carries exactly one structure per monad."""
    if S.carrier(EMPTY).size == 0 and T.carrier(EMPTY).size == 0:
        return 0
    return 1


def special_cases(S: MonadSpec, T: MonadSpec) -> MonadSpec | None:
    """Closed forms for coproducts with inconsistent or exception-family
    summands; None means the chain engine must run."""
    from .monad import builtin
    from .trnkova import zero_submonad

    cs = classify_consistency(S)
    ct = classify_consistency(T)
    if ConsistencyClass.ISO_TERMINAL in (cs, ct):
        return builtin("terminal")
    if ConsistencyClass.ISO_TERMINAL_ZERO in (cs, ct):
        other = T if cs == ConsistencyClass.ISO_TERMINAL_ZERO else S
        if smallest_bialgebra_size_at_empty(S, T) == 0:
            return builtin("terminal0")
        return builtin("terminal")
    for first, second in ((T, S), (S, T)):
        E = first.cache.get("exception_set")
        if E is not None:
            out = exception_oracle(second, E)
            if first.cache.get("zero_at_empty") and \
                    second.carrier(EMPTY).size == 0:
                return zero_submonad(out)
            return out
    return None


# ---------------------------------------------------------------------------
# Families


@dataclass(eq=False)
class FamilyBuild:
    monads: tuple[MonadSpec, ...]
    base: FinSet
    sol: SolutionPair
    carrier: FinSet
    injections: tuple[FinMap, ...]     # S*_p -> carrier
    unit: FinMap

    def part_order(self, p: int) -> list[int]:
        return [q for q in range(len(self.monads)) if q != p]

    def psi(self, p: int) -> FinMap:
        """S_p(W_p) -> carrier where W_p is sort p's inner sum."""
        monad = self.monads[p]
        rhs = self.sol.system.rhs[p]
        W = eval_obj(rhs.inner, self.sol.carriers)
        struct = self.sol.structures[p]
        order = self.part_order(p)
        arity = len(order) + (1 if self.base.size > 0 else 0)

        def route(w: Label) -> Label:
            ix, inner = ncase(w, arity) if arity > 1 else (0, w)
            if ix < len(order):
                return self.injections[order[ix]].table[inner]
            return self.unit(inner)

        table = {}
        for u in monad.carrier(W):
            table[u] = None
        for w in W:
            table[monad.el_unit(W, w)] = route(w)
        for u, v in table.items():
            if v is None:
                table[u] = self.injections[p].table[struct(u)]
        return FinMap(monad.carrier(W), self.carrier, table, _trusted=True)

    def structure_el(self, p: int, v: Label) -> Label:
        monad = self.monads[p]
        rhs = self.sol.system.rhs[p]
        W = eval_obj(rhs.inner, self.sol.carriers)
        psi = self.psi(p)
        return psi(monad.el_mult(W, monad.el_map(psi.inverse(), v)))

    def as_multialgebra(self, cap: int = TABLE_CAP) -> Bialgebra:
        parts = []
        for p, monad in enumerate(self.monads):
            SZ = monad.carrier(self.carrier)
            if SZ.size > cap:
                raise BudgetExceeded("family structure table too large")
            psi = self.psi(p)
            psi_inv = psi.inverse()
            W = eval_obj(self.sol.system.rhs[p].inner, self.sol.carriers)
            table = {v: psi(monad.el_mult(W, monad.el_map(psi_inv, v)))
                     for v in SZ}
            parts.append(EMAlgebra(monad, self.carrier,
                                   FinMap(SZ, self.carrier, table,
                                          _trusted=True)))
        return Bialgebra(self.carrier, tuple(parts))


def family_build(monads: Sequence[MonadSpec], A: FinSet,
                 budget: int = DEFAULT_BUDGET,
                 max_carrier: int = DEFAULT_MAX_CARRIER) -> FamilyBuild:
    """Coproduct of a family: one sort per monad, carrier sum of all the
    solution sorts plus the base."""
    if len(monads) < 2:
        raise ContractViolation("a family needs at least two monads")
    for S in monads:
        if classify_consistency(S) != ConsistencyClass.CONSISTENT:
            raise InconsistentMonad("family members must be consistent")
    views = [complement(S) for S in monads]
    system = family_system(views, A)
    out = run_chain(system, budget=budget, max_carrier=max_carrier)
    if isinstance(out, Diverged):
        raise NoConvergence("family chain did not converge",
                            trace=out.trace)
    total, injs = nsum(list(out.carriers))
    outer = finset_coproduct(total, A)
    injections = tuple(compose(outer.inl, j) for j in injs)
    return FamilyBuild(tuple(monads), A, out, outer.set, injections,
                       outer.inr)


# ---------------------------------------------------------------------------
# Injective-morphism transfer


def injective_morphism_transfer(i: MonadMorphism, j: MonadMorphism,
                                A: FinSet, budget: int = DEFAULT_BUDGET,
                                probes: Sequence[FinSet] | None = None
                                ) -> FinMap:
    """(i (+) j) at A: the unique bialgebra morphism into the primed
    coproduct seen as a bialgebra along i and j; injective whenever i
    and j are."""
    if probes is None:
        probes = probe_sets(2)
    if not i.is_injective_on(probes) or not j.is_injective_on(probes):
        raise NotInjective("transfer requires injective monad morphisms")
    src = build(i.source, j.source, A, budget=budget)
    dst = build(i.target, j.target, A, budget=budget)
    Z = dst.carrier

    def sigma(v: Label) -> Label:
        return dst.p_s_el(i.el_component(Z, v))

    def tau(v: Label) -> Label:
        return dst.p_t_el(j.el_component(Z, v))

    out = extend(src, sigma, tau, Z, dst.unit)
    if not out.is_injective():
        raise NotInjective(
            "transfer of injective morphisms produced a non-injective map; "
            "the inputs are not lawful monad morphisms")
    return out


# ---------------------------------------------------------------------------
# Law suite for converged coproducts


def coproduct_law_suite(cm: CoproductMonad,
                        probes: Sequence[FinSet] | None = None,
                        samples: int = 120, seed: int = 0,
                        assoc_cap: int = 4000) -> LawReport:
    """Unit laws tablewise, associativity tablewise when the triple
    carrier fits and otherwise via the symbolic layered route (whose
    agreement with the materialized carriers is a separate check)."""
    from . import layered

    if probes is None:
        probes = probe_sets(2)
    rng = random.Random(seed)
    rep = LawReport(cm.name)
    for A in probes:
        pn = f"|A|={A.size}"
        bld = cm.at(A)
        Z = bld.carrier
        outer = cm.at(Z)
        mu = cm.mult(A)

        bad = next((z for z in Z if mu(Tagged("R", z)) != z), None)
        rep.add("unit-right", pn, Z.size, bad is None,
                None if bad is None else show_label(bad))

        u_eta = cm.action(bld.unit)
        bad = next((z for z in Z if mu(u_eta(z)) != z), None)
        rep.add("unit-left", pn, Z.size, bad is None,
                None if bad is None else show_label(bad))

        triple_size = None
        try:
            triple = cm.at(outer.carrier)
            triple_size = triple.carrier.size
        except (NoConvergence, BudgetExceeded):
            triple = None
        if triple is not None and triple_size <= assoc_cap:
            mu_outer = cm.mult(Z)
            u_mu = cm.action(mu)
            bad = None
            for w in triple.carrier:
                if mu(mu_outer(w)) != mu(u_mu(w)):
                    bad = w
                    break
            rep.add("mult-associative", pn, triple.carrier.size,
                    bad is None, None if bad is None else show_label(bad))
        else:
            checked, ok = layered.kleisli_assoc_samples(
                cm.left, cm.right, A, samples=samples, seed=seed)
            rep.add("mult-associative(symbolic)", pn, checked, ok)
    return rep
