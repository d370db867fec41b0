"""Computable monads on finite sets.

A MonadSpec packages a carrier assignment together with *elementwise*
unit, multiplication and functor action.  Table-level maps (FinMap) are
materialized on demand and cached; law checking works elementwise so
that large iterated carriers never have to be built.

Laws are checked on probe sets, never assumed: functoriality and
naturality quantify over all sets in principle, so probe-level passes
are evidence for the checkable fragment only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import (BudgetExceeded, ContractViolation, InvalidAlgebra,
                     UnknownMonad)
from .finset import (EMPTY, Atom, Coproduct, FinMap, FinSet, Label, LabelSet,
                     Opaque, Tagged, all_maps, compose, coproduct, fset,
                     identity, show_label)

ElementMap = Callable[[FinMap, Label], Label]


@dataclass(eq=False)
class FunctorSpec:
    """Object map plus elementwise action; no unit or multiplication."""

    name: str
    obj: Callable[[FinSet], FinSet]
    el_map: ElementMap
    size_fn: Callable[[int], int] | None = None
    _carriers: dict = field(default_factory=dict, repr=False)

    def carrier(self, X: FinSet) -> FinSet:
        got = self._carriers.get(X)
        if got is None:
            got = self._carriers[X] = self.obj(X)
        return got

    def map_el(self, f: FinMap, s: Label) -> Label:
        return self.el_map(f, s)

    def action(self, f: FinMap) -> FinMap:
        SX, SY = self.carrier(f.dom), self.carrier(f.cod)
        if f.is_identity:
            return identity(SX)
        return FinMap(SX, SY, {s: self.el_map(f, s) for s in SX},
                      _trusted=True)

    @property
    def is_monad(self) -> bool:
        return False


@dataclass(eq=False)
class MonadSpec:
    """A monad given by carrier, action, unit and multiplication.

    All four are elementwise; `el_mult(X, w)` flattens an element
    w of S(S X) to S X.  Law conformance is established by
    `check_laws`, not by construction.
    """

    name: str
    obj: Callable[[FinSet], FinSet]
    el_map: ElementMap
    el_unit: Callable[[FinSet, Label], Label]
    el_mult: Callable[[FinSet, Label], Label]
    finite_valued: bool = True
    size_fn: Callable[[int], int] | None = None
    el_random: Callable[[FinSet, random.Random], Label] | None = None
    cache: dict = field(default_factory=dict, repr=False)
    _carriers: dict = field(default_factory=dict, repr=False)
    _units: dict = field(default_factory=dict, repr=False)
    _mults: dict = field(default_factory=dict, repr=False)
    _actions: dict = field(default_factory=dict, repr=False)

    # -- carriers and tables

    def carrier(self, X: FinSet) -> FinSet:
        got = self._carriers.get(X)
        if got is None:
            got = self._carriers[X] = self.obj(X)
        return got

    def unit(self, X: FinSet) -> FinMap:
        got = self._units.get(X)
        if got is None:
            SX = self.carrier(X)
            got = FinMap(X, SX, {x: self.el_unit(X, x) for x in X})
            self._units[X] = got
        return got

    def mult(self, X: FinSet) -> FinMap:
        got = self._mults.get(X)
        if got is None:
            SX = self.carrier(X)
            SSX = self.carrier(SX)
            got = FinMap(SSX, SX, {w: self.el_mult(X, w) for w in SSX})
            self._mults[X] = got
        return got

    def action(self, f: FinMap) -> FinMap:
        got = self._actions.get(f)
        if got is None:
            SX, SY = self.carrier(f.dom), self.carrier(f.cod)
            if f.is_identity:
                got = identity(SX)
            else:
                got = FinMap(SX, SY, {s: self.el_map(f, s) for s in SX},
                              _trusted=True)
            self._actions[f] = got
        return got

    # -- elementwise

    def map_el(self, f: FinMap, s: Label) -> Label:
        return self.el_map(f, s)

    def unit_el(self, X: FinSet, x: Label) -> Label:
        return self.el_unit(X, x)

    def mult_el(self, X: FinSet, w: Label) -> Label:
        return self.el_mult(X, w)

    def kleisli_el(self, k: FinMap, Y: FinSet, s: Label) -> Label:
        """mult_Y(S k (s)) for k : X -> S Y."""
        return self.el_mult(Y, self.el_map(k, s))

    def random_el(self, Y: FinSet, rng: random.Random,
                  cap: int = 200_000) -> Label:
        if self.el_random is not None:
            return self.el_random(Y, rng)
        if self.size_fn is not None and self.size_fn(Y.size) > cap:
            raise BudgetExceeded("carrier too large to sample by enumeration")
        SY = self.carrier(Y)
        if SY.size == 0:
            raise ContractViolation("cannot sample from an empty carrier")
        if SY.size > cap:
            raise BudgetExceeded("carrier too large to sample by enumeration")
        return SY.elements[rng.randrange(SY.size)]

    @property
    def is_monad(self) -> bool:
        return True

    @property
    def functor(self) -> FunctorSpec:
        return FunctorSpec(self.name, self.obj, self.el_map, self.size_fn)

    def __repr__(self) -> str:
        return f"MonadSpec({self.name})"


def kleisli_ext(S: MonadSpec, k: FinMap) -> FinMap:
    """Kleisli extension of k : X -> S Y to S X -> S Y."""
    Y = _base_of(S, k.cod)
    return compose(S.mult(Y), S.action(k))


def _base_of(S: MonadSpec, SY: FinSet) -> FinSet:
    for X, C in S._carriers.items():
        if C == SY:
            return X
    raise ContractViolation("codomain is not a known carrier of the monad")


# ---------------------------------------------------------------------------
# Builtins


def _exception_monad(name: str, E: FinSet, at_empty_empty: bool) -> MonadSpec:
    right = tuple(Tagged("R", e) for e in E.elements)

    def obj(X: FinSet) -> FinSet:
        if at_empty_empty and X.size == 0:
            return EMPTY
        return FinSet(tuple(Tagged("L", x) for x in X.elements) + right,
                      _sorted=True)

    def el_map(f: FinMap, s: Label) -> Label:
        if s.side == "L":
            return Tagged("L", f.table[s.inner])
        return s

    def el_unit(X: FinSet, x: Label) -> Label:
        return Tagged("L", x)

    def el_mult(X: FinSet, w: Label) -> Label:
        return w.inner if w.side == "L" else w

    def size_fn(n: int) -> int:
        if at_empty_empty and n == 0:
            return 0
        return n + E.size

    spec = MonadSpec(name, obj, el_map, el_unit, el_mult, size_fn=size_fn)
    spec.cache["exception_set"] = E
    spec.cache["zero_at_empty"] = at_empty_empty
    return spec


def _powerset_monad() -> MonadSpec:
    def obj(X: FinSet) -> FinSet:
        # depth-first over the sorted base emits subsets in key order
        elems = X.elements
        n = len(elems)
        out = [LabelSet(())]

        def rec(prefix: tuple, start: int) -> None:
            for j in range(start, n):
                ext = prefix + (elems[j],)
                out.append(LabelSet(ext))
                rec(ext, j + 1)

        rec((), 0)
        return FinSet(out, _sorted=True)

    def el_map(f: FinMap, s: Label) -> Label:
        t = f.table
        return LabelSet([t[m] for m in s.members])

    def el_unit(X: FinSet, x: Label) -> Label:
        return LabelSet((x,))

    def el_mult(X: FinSet, w: Label) -> Label:
        return LabelSet(frozenset().union(*[m.members for m in w.members])
                        if w.members else ())

    def el_random(Y: FinSet, rng: random.Random) -> Label:
        return LabelSet(y for y in Y if rng.random() < 0.5)

    return MonadSpec("powerset", obj, el_map, el_unit, el_mult,
                     size_fn=lambda n: 2 ** n, el_random=el_random)


def _terminal_monad(name: str, at_empty_empty: bool) -> MonadSpec:
    star = Atom("*")
    one = fset(star)

    def obj(X: FinSet) -> FinSet:
        if at_empty_empty and X.size == 0:
            return EMPTY
        return one

    return MonadSpec(name, obj,
                     lambda f, s: star,
                     lambda X, x: star,
                     lambda X, w: star,
                     size_fn=lambda n: 0 if (at_empty_empty and n == 0) else 1)


def _reader_monad(E: FinSet) -> MonadSpec:
    k = E.size
    idx = E.index

    def obj(X: FinSet) -> FinSet:
        return FinSet(Opaque("rd", parts)
                      for parts in itertools.product(X.elements, repeat=k))

    def el_map(f: FinMap, s: Label) -> Label:
        t = f.table
        return Opaque("rd", tuple(t[p] for p in s.parts))

    def el_unit(X: FinSet, x: Label) -> Label:
        return Opaque("rd", (x,) * k)

    def el_mult(X: FinSet, w: Label) -> Label:
        # w(e)(e): read the environment once, feed it to both layers
        return Opaque("rd", tuple(w.parts[i].parts[i] for i in range(k)))

    def el_random(Y: FinSet, rng: random.Random) -> Label:
        return Opaque("rd", tuple(Y.elements[rng.randrange(Y.size)]
                                  for _ in range(k)))

    del idx
    return MonadSpec(f"reader{k}", obj, el_map, el_unit, el_mult,
                     size_fn=lambda n: n ** k, el_random=el_random)


def _state_monad(St: FinSet) -> MonadSpec:
    k = St.size
    sidx = St.index
    states = St.elements

    def obj(X: FinSet) -> FinSet:
        pairs = tuple(Opaque("pr", (x, s))
                      for x in X.elements for s in states)
        return FinSet(Opaque("st", parts)
                      for parts in itertools.product(pairs, repeat=k))

    def el_map(f: FinMap, s: Label) -> Label:
        t = f.table
        return Opaque("st", tuple(Opaque("pr", (t[p.parts[0]], p.parts[1]))
                                  for p in s.parts))

    def el_unit(X: FinSet, x: Label) -> Label:
        return Opaque("st", tuple(Opaque("pr", (x, s)) for s in states))

    def el_mult(X: FinSet, w: Label) -> Label:
        parts = []
        for p in w.parts:
            t, s1 = p.parts
            parts.append(t.parts[sidx[s1]])
        return Opaque("st", tuple(parts))

    def el_random(Y: FinSet, rng: random.Random) -> Label:
        return Opaque("st", tuple(
            Opaque("pr", (Y.elements[rng.randrange(Y.size)],
                          states[rng.randrange(k)]))
            for _ in range(k)))

    return MonadSpec(f"state{k}", obj, el_map, el_unit, el_mult,
                     size_fn=lambda n: (n * k) ** k, el_random=el_random)


def pa_functor(cards: Sequence[int]) -> FunctorSpec:
    """Subsets whose cardinality lies in a fixed class (empty set always
    allowed); the action takes images along injective restrictions and
    collapses to the empty set otherwise.  Functor only."""
    allowed = frozenset(cards)

    def obj(X: FinSet) -> FinSet:
        out = [LabelSet(())]
        for r in sorted(allowed):
            if 0 < r <= X.size:
                out.extend(LabelSet(c)
                           for c in itertools.combinations(X.elements, r))
        return FinSet(set(out))

    def el_map(f: FinMap, s: Label) -> Label:
        image = {f(m) for m in s.members}
        if len(image) != len(s.members):
            return LabelSet(())
        return LabelSet(image)

    name = "pA{" + ",".join(str(c) for c in sorted(allowed)) + "}"
    return FunctorSpec(name, obj, el_map)


def const_functor(M: FinSet, preserve_empty: bool = False) -> FunctorSpec:
    """Constant functor at M; optionally sent to the empty set at 0."""

    def obj(X: FinSet) -> FinSet:
        if preserve_empty and X.size == 0:
            return EMPTY
        return M

    def el_map(f: FinMap, s: Label) -> Label:
        return s

    name = ("const0" if preserve_empty else "const") + f"[{M.size}]"
    return FunctorSpec(name, obj, el_map,
                       size_fn=lambda n: 0 if (preserve_empty and n == 0)
                       else M.size)


_BUILTIN_CACHE: dict = {}


def default_exceptions(n: int) -> FinSet:
    if n == 1:
        return fset(Atom("err"))
    return FinSet(Atom(f"e{i}") for i in range(n))


def builtin(name: str, param=None):
    """Construct a builtin monad (or, for "pA", a bare functor).

    Names: exception(E), exception0(E), maybe, terminal, terminal0,
    powerset, reader(E), state(St), pA(cardinal list).  `param` is a
    FinSet where a set is expected, or an int n for the canonical
    n-element set.
    """
    if isinstance(param, int):
        param = default_exceptions(param)
    key = (name, param)
    got = _BUILTIN_CACHE.get(key)
    if got is not None:
        return got

    if name == "maybe":
        spec = _exception_monad("maybe", fset(Atom("err")), False)
    elif name == "exception":
        if param is None:
            raise ContractViolation("exception needs its set of exceptions")
        spec = _exception_monad(f"exception[{param.size}]", param, False)
    elif name == "exception0":
        if param is None:
            raise ContractViolation("exception0 needs its set of exceptions")
        spec = _exception_monad(f"exception0[{param.size}]", param, True)
    elif name == "terminal":
        spec = _terminal_monad("terminal", False)
    elif name == "terminal0":
        spec = _terminal_monad("terminal0", True)
    elif name == "powerset":
        spec = _powerset_monad()
    elif name == "reader":
        if param is None:
            raise ContractViolation("reader needs its environment set")
        spec = _reader_monad(param)
    elif name == "state":
        if param is None:
            raise ContractViolation("state needs its state set")
        spec = _state_monad(param)
    elif name == "pA":
        if param is None:
            raise ContractViolation("pA needs a list of cardinals")
        spec = pa_functor(tuple(param))
    else:
        raise UnknownMonad(name)
    _BUILTIN_CACHE[key] = spec
    return spec


BUILTIN_MONAD_NAMES = ("maybe", "exception", "exception0", "terminal",
                       "terminal0", "powerset", "reader", "state")


# ---------------------------------------------------------------------------
# Probes, law checking


def probe_sets(max_size: int = 3, prefix: str = "x") -> list[FinSet]:
    return [FinSet(Atom(f"{prefix}{i}") for i in range(n))
            for n in range(max_size + 1)]


def random_map(rng: random.Random, X: FinSet, Y: FinSet) -> FinMap | None:
    if Y.size == 0 and X.size > 0:
        return None
    return FinMap(X, Y, {x: Y.elements[rng.randrange(Y.size)] for x in X},
                  _trusted=True)


@dataclass
class LawCheck:
    law: str
    probe: str
    checked: int
    ok: bool
    witness: str | None = None


@dataclass
class LawReport:
    subject: str
    checks: list[LawCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[LawCheck]:
        return [c for c in self.checks if not c.ok]

    def add(self, law: str, probe: str, checked: int, ok: bool,
            witness: str | None = None) -> None:
        self.checks.append(LawCheck(law, probe, checked, ok, witness))


def _sample_carrier(S: MonadSpec, Y: FinSet, rng: random.Random,
                    samples: int, cap: int) -> list[Label]:
    """Elements of S Y: all of them when small, otherwise a random draw."""
    size = S.size_fn(Y.size) if S.size_fn else None
    if size is not None and size > cap:
        if S.el_random is None:
            return []
        return [S.el_random(Y, rng) for _ in range(samples)]
    SY = S.carrier(Y)
    if SY.size <= samples:
        return list(SY.elements)
    return [SY.elements[rng.randrange(SY.size)] for _ in range(samples)]


def check_laws(S: MonadSpec, probes: Sequence[FinSet] | None = None,
               samples: int = 100, seed: int = 0,
               materialize_cap: int = 6000) -> LawReport:
    """Functoriality, naturality and the monad axioms on probe sets.

    Reports one entry per (law, probe) with a counterexample witness on
    failure.  Large iterated carriers are sampled elementwise.
    """
    if probes is None:
        probes = probe_sets()
    rng = random.Random(seed)
    rep = LawReport(S.name)
    monadic = S.is_monad

    for X in probes:
        pn = f"|X|={X.size}"
        SX = S.carrier(X)

        # functor identity
        idx = identity(X)
        bad = next((s for s in SX if S.el_map(idx, s) != s), None)
        rep.add("functor-identity", pn, SX.size, bad is None,
                None if bad is None else show_label(bad))

        if monadic:
            # right unit: mult . unit_{SX} = id
            bad = None
            for s in SX:
                if S.el_mult(X, S.el_unit(SX, s)) != s:
                    bad = s
                    break
            rep.add("unit-right", pn, SX.size, bad is None,
                    None if bad is None else show_label(bad))

            # left unit: mult . S unit = id
            unit_map = S.unit(X)
            bad = None
            for s in SX:
                if S.el_mult(X, S.el_map(unit_map, s)) != s:
                    bad = s
                    break
            rep.add("unit-left", pn, SX.size, bad is None,
                    None if bad is None else show_label(bad))

            # associativity on sampled elements of S S S X; the two
            # lower carriers must fit, and the top one must be samplable
            sizes_ok = S.size_fn is None or (
                S.size_fn(X.size) <= materialize_cap
                and S.size_fn(S.size_fn(X.size)) <= materialize_cap)
            can_sample = S.el_random is not None or S.size_fn is None or \
                S.size_fn(S.size_fn(S.size_fn(X.size))) <= 200_000
            if sizes_ok and can_sample:
                SSX = S.carrier(S.carrier(X))
                mult_x = None
                count, bad = 0, None
                for _ in range(samples):
                    if SSX.size == 0:
                        break
                    w = S.random_el(SSX, rng)
                    if mult_x is None:
                        mult_x = S.mult(X)
                    lhs = S.el_mult(X, S.el_mult(SX, w))
                    rhs = S.el_mult(X, S.el_map(mult_x, w))
                    count += 1
                    if lhs != rhs:
                        bad = w
                        break
                rep.add("mult-associative", pn, count, bad is None,
                        None if bad is None else show_label(bad))

    # naturality and composition need pairs of probes
    nonempty = [X for X in probes]
    comp_count, comp_bad = 0, None
    unat_count, unat_bad = 0, None
    mnat_count, mnat_bad = 0, None
    for _ in range(samples):
        X = nonempty[rng.randrange(len(nonempty))]
        Y = nonempty[rng.randrange(len(nonempty))]
        Z = nonempty[rng.randrange(len(nonempty))]
        f = random_map(rng, X, Y)
        g = random_map(rng, Y, Z)
        if f is None or g is None:
            continue
        gf = compose(g, f)
        for s in _sample_carrier(S, X, rng, 2, materialize_cap):
            comp_count += 1
            if S.el_map(gf, s) != S.el_map(g, S.el_map(f, s)):
                comp_bad = s
        if monadic:
            for x in X:
                unat_count += 1
                if S.el_map(f, S.el_unit(X, x)) != S.el_unit(Y, f(x)):
                    unat_bad = x
            Sf = S.action(f)
            for w in _sample_carrier(S, S.carrier(X), rng, 2,
                                     materialize_cap):
                mnat_count += 1
                if (S.el_mult(Y, S.el_map(Sf, w))
                        != S.el_map(f, S.el_mult(X, w))):
                    mnat_bad = w
    rep.add("functor-composition", "sampled", comp_count, comp_bad is None,
            None if comp_bad is None else show_label(comp_bad))
    if monadic:
        rep.add("unit-natural", "sampled", unat_count, unat_bad is None,
                None if unat_bad is None else show_label(unat_bad))
        rep.add("mult-natural", "sampled", mnat_count, mnat_bad is None,
                None if mnat_bad is None else show_label(mnat_bad))
    return rep


def preserves_injections(S, probes: Sequence[FinSet] | None = None,
                         seed: int = 0, samples: int = 40) -> bool:
    """True iff the action of every sampled injection is injective.

    Holds for every lawful monad; a False here means the spec is broken.
    """
    if probes is None:
        probes = probe_sets()
    rng = random.Random(seed)
    pairs = [(X, Y) for X in probes for Y in probes if X.size <= Y.size]
    for X, Y in pairs:
        for _ in range(samples):
            picked = rng.sample(Y.elements, X.size)
            m = FinMap(X, Y, dict(zip(X.elements, picked)), _trusted=True)
            seen = {}
            for s in S.carrier(X):
                out = S.el_map(m, s)
                if out in seen and seen[out] != s:
                    return False
                seen[out] = s
    return True


class ConsistencyClass:
    CONSISTENT = "Consistent"
    ISO_TERMINAL = "IsoTerminal"
    ISO_TERMINAL_ZERO = "IsoTerminalZero"


def classify_consistency(S: MonadSpec,
                         probes: Sequence[FinSet] | None = None) -> str:
    """Consistent iff the unit is injective on all probes; otherwise the
    monad collapses to the terminal monad or its empty-set-preserving
    submonad, told apart by the value at the empty set."""
    if probes is None:
        probes = probe_sets()
    for X in probes:
        seen = {}
        for x in X:
            u = S.el_unit(X, x)
            if u in seen:
                return (ConsistencyClass.ISO_TERMINAL
                        if S.carrier(EMPTY).size == 1
                        else ConsistencyClass.ISO_TERMINAL_ZERO)
            seen[u] = x
    return ConsistencyClass.CONSISTENT


def is_consistent(S: MonadSpec) -> bool:
    return classify_consistency(S) == ConsistencyClass.CONSISTENT


# ---------------------------------------------------------------------------
# Eilenberg-Moore algebra axioms (shared helper)


def em_violation(S: MonadSpec, carrier: FinSet, structure: FinMap,
                 cap: int = 200_000) -> str | None:
    """None if (carrier, structure) satisfies the EM axioms, else a witness
    description.  The associativity square is checked over S S carrier."""
    for x in carrier:
        if structure(S.el_unit(carrier, x)) != x:
            return f"unit law fails at {show_label(x)}"
    SA = S.carrier(carrier)
    if S.size_fn is not None and S.size_fn(SA.size) > cap:
        raise BudgetExceeded("S S carrier too large for the EM check")
    SSA = S.carrier(SA)
    for w in SSA:
        lhs = structure(S.el_mult(carrier, w))
        rhs = structure(S.el_map(structure, w))
        if lhs != rhs:
            return f"associativity fails at {show_label(w)}"
    return None


# ---------------------------------------------------------------------------
# Function spaces and the continuation bijection


def function_space(A: FinSet, B: FinSet) -> FinSet:
    """B^A with graph labels ordered by A's canonical enumeration."""
    return FinSet(Opaque("fn", parts)
                  for parts in itertools.product(B.elements, repeat=A.size))


def fn_of_map(f: FinMap) -> Label:
    return Opaque("fn", tuple(f(x) for x in f.dom.elements))


def fn_apply(fl: Label, A: FinSet, x: Label) -> Label:
    return fl.parts[A.index[x]]


def map_of_fn(fl: Label, A: FinSet, B: FinSet) -> FinMap:
    return FinMap(A, B, dict(zip(A.elements, fl.parts)), _trusted=True)


@dataclass(eq=False)
class ContinuationFamily:
    """The natural family X |-> (S X -> R^(R^X)) induced by an algebra.

    Component at X sends s to the function k |-> alg(S k (s)); the
    algebra is recovered by evaluating the component at R on the
    identity.  Naturality is verifiable on probes only.
    """

    S: MonadSpec
    R: FinSet
    alg: FinMap

    def component(self, X: FinSet) -> FinMap:
        RX = function_space(X, self.R)
        cont = function_space(RX, self.R)
        SX = self.S.carrier(X)
        table = {}
        for s in SX:
            outs = []
            for kl in RX.elements:
                k = map_of_fn(kl, X, self.R)
                outs.append(self.alg(self.S.el_map(k, s)))
            table[s] = Opaque("fn", tuple(outs))
        return FinMap(SX, cont, table)

    def recover(self) -> FinMap:
        """Reconstruct the algebra from the component at R."""
        comp = self.component(self.R)
        RR = function_space(self.R, self.R)
        idl = fn_of_map(identity(self.R))
        SR = self.S.carrier(self.R)
        return FinMap(SR, self.R,
                      {s: fn_apply(comp(s), RR, idl) for s in SR})


def gamma(S: MonadSpec, R: FinSet, alg: FinMap) -> ContinuationFamily:
    bad = em_violation(S, R, alg)
    if bad is not None:
        raise InvalidAlgebra(bad)
    return ContinuationFamily(S, R, alg)


# ---------------------------------------------------------------------------
# Monad morphisms


@dataclass(eq=False)
class MonadMorphism:
    source: MonadSpec
    target: MonadSpec
    el_component: Callable[[FinSet, Label], Label]
    name: str = ""
    _components: dict = field(default_factory=dict, repr=False)

    def at(self, X: FinSet) -> FinMap:
        got = self._components.get(X)
        if got is None:
            got = FinMap(self.source.carrier(X), self.target.carrier(X),
                         {s: self.el_component(X, s)
                          for s in self.source.carrier(X)})
            self._components[X] = got
        return got

    def is_injective_on(self, probes: Sequence[FinSet]) -> bool:
        return all(self.at(X).is_injective() for X in probes)


def check_monad_morphism(m: MonadMorphism,
                         probes: Sequence[FinSet] | None = None,
                         samples: int = 40, seed: int = 0) -> LawReport:
    """Unit, multiplication and naturality squares on probes."""
    if probes is None:
        probes = probe_sets(2)
    rng = random.Random(seed)
    S, T = m.source, m.target
    rep = LawReport(m.name or f"{S.name}->{T.name}")
    for X in probes:
        ok = all(m.el_component(X, S.el_unit(X, x)) == T.el_unit(X, x)
                 for x in X)
        rep.add("morphism-unit", f"|X|={X.size}", X.size, ok)

        comp = m.at(X)
        SSX = S.carrier(S.carrier(X))
        bad = None
        for w in SSX:
            lhs = m.el_component(X, S.el_mult(X, w))
            inner = S.el_map(comp, w)           # S t_X : S S X -> S T X
            inner = m.el_component(T.carrier(X), inner)   # t at T X
            rhs = T.el_mult(X, inner)
            if lhs != rhs:
                bad = w
                break
        rep.add("morphism-mult", f"|X|={X.size}", SSX.size, bad is None,
                None if bad is None else show_label(bad))
    for _ in range(samples):
        X = probes[rng.randrange(len(probes))]
        Y = probes[rng.randrange(len(probes))]
        f = random_map(rng, X, Y)
        if f is None:
            continue
        bad = None
        for s in S.carrier(X):
            if (m.el_component(Y, S.el_map(f, s))
                    != T.el_map(f, m.el_component(X, s))):
                bad = s
                break
        if bad is not None:
            rep.add("morphism-natural", "sampled", 1, False, show_label(bad))
            return rep
    rep.add("morphism-natural", "sampled", samples, True)
    return rep
