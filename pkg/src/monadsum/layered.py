"""Canonical alternating-layer terms: symbolic coproduct elements.

A term is a variable or a layer: a nontrivial monad element over a
canonical index set, one child per index.  Canonical terms alternate
sides, never carry a unit as the layer operation, keep children sorted
and distinct, and use every index (full minimal support).  Canonical
form stands in for colimit-element equality, so the representation
works even where the materialized carriers would be infinite.

The layer operations come from either side through a small adapter
(LayerSystem); materialized monads and symbolic free monads plug into
the same term engine.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Protocol, Sequence

from .complement import minimal_support, restrict_to_support
from .errors import BudgetExceeded, ContractViolation
from .finset import (Atom, FinMap, FinSet, Label, fset, nat_set, show_label)
from .monad import MonadSpec


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    label: Label


@dataclass(frozen=True)
class Layer:
    side: str                 # "L" | "R"
    op: Label                 # element over the canonical index set
    children: tuple

    @property
    def arity(self) -> int:
        return len(self.children)


Term = "Var | Layer"

_KEY_CACHE: dict = {}


def term_key(t) -> tuple:
    got = _KEY_CACHE.get(t)
    if got is None:
        if isinstance(t, Var):
            got = (0, t.label.key)
        else:
            rank = 1 if t.side == "L" else 2
            got = (rank, len(t.children), t.op.key,
                   tuple(term_key(c) for c in t.children))
        _KEY_CACHE[t] = got
    return got


def term_depth(t) -> int:
    if isinstance(t, Var):
        return 0
    if not t.children:
        return 1
    return 1 + max(term_depth(c) for c in t.children)


def term_vars(t) -> set[Label]:
    if isinstance(t, Var):
        return {t.label}
    out: set[Label] = set()
    for c in t.children:
        out |= term_vars(c)
    return out


def pretty(t, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(t, Var):
        return f"{pad}var {show_label(t.label)}"
    head = f"{pad}{t.side} {show_label(t.op)}"
    lines = [head] + [pretty(c, indent + 1) for c in t.children]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Layer systems


class LayerSystem(Protocol):
    name: str

    def is_unit(self, op: Label, k: int) -> int | None: ...

    def act(self, op: Label, k: int, mapping: Sequence[int],
            m: int) -> Label: ...

    def support(self, op: Label, k: int) -> tuple[int, ...]: ...

    def restrict(self, op: Label, k: int,
                 keep: Sequence[int]) -> Label: ...

    def flatten(self, op: Label, k: int, args: list, pool: int): ...

    def enum_ops(self, k: int, budget: int) -> list[Label]: ...


@dataclass(eq=False)
class MaterializedSystem:
    """Layer operations drawn from a finite-valued monad's complement."""

    monad: MonadSpec
    carrier_cap: int = 70_000
    _units: dict = field(default_factory=dict, repr=False)
    _ops: dict = field(default_factory=dict, repr=False)

    @property
    def name(self) -> str:
        return self.monad.name

    def _index_set(self, k: int) -> FinSet:
        return nat_set(k)

    def _carrier(self, k: int) -> FinSet:
        if self.monad.size_fn is not None and \
                self.monad.size_fn(k) > self.carrier_cap:
            raise BudgetExceeded(
                f"{self.monad.name} carrier over {k} indices is too large")
        return self.monad.carrier(self._index_set(k))

    def _unit_table(self, k: int) -> dict[Label, int]:
        got = self._units.get(k)
        if got is None:
            n = self._index_set(k)
            got = {self.monad.el_unit(n, Atom(i)): i for i in range(k)}
            self._units[k] = got
        return got

    def is_unit(self, op: Label, k: int) -> int | None:
        return self._unit_table(k).get(op)

    def act(self, op: Label, k: int, mapping: Sequence[int],
            m: int) -> Label:
        f = FinMap(self._index_set(k), self._index_set(m),
                   {Atom(i): Atom(mapping[i]) for i in range(k)},
                   _trusted=True)
        return self.monad.el_map(f, op)

    def support(self, op: Label, k: int) -> tuple[int, ...]:
        U = minimal_support(self.monad, self._index_set(k), op)
        return tuple(u.value for u in U)

    def restrict(self, op: Label, k: int, keep: Sequence[int]) -> Label:
        U = FinSet(Atom(i) for i in keep)
        elem = restrict_to_support(self.monad, self._index_set(k), op, U)
        ren = FinMap(U, self._index_set(len(keep)),
                     {Atom(v): Atom(j) for j, v in enumerate(keep)},
                     _trusted=True)
        return self.monad.el_map(ren, elem)

    def flatten(self, op: Label, k: int, args: list, pool: int):
        """Kleisli-extend the per-index arguments through the operation."""
        P = self._index_set(pool)
        SP = self._carrier(pool)
        table = {}
        for i, arg in enumerate(args):
            kind, payload = arg
            if kind == "var":
                table[Atom(i)] = self.monad.el_unit(P, Atom(payload))
            else:
                table[Atom(i)] = payload
        kmap = FinMap(self._index_set(k), SP, table, _trusted=True)
        res = self.monad.el_mult(P, self.monad.el_map(kmap, op))
        unit_ix = self.is_unit(res, pool)
        if unit_ix is not None:
            return ("var", unit_ix)
        return ("op", res)

    def enum_ops(self, k: int, budget: int = 0) -> list[Label]:
        got = self._ops.get(k)
        if got is None:
            n = self._index_set(k)
            units = self._unit_table(k)
            full = tuple(range(k))
            got = [op for op in self._carrier(k)
                   if op not in units and self.support(op, k) == full]
            self._ops[k] = got
        return got

    def embed(self, A: FinSet, s: Label):
        """Element of S A as ("var", a) or (op over [k], support tuple)."""
        units = {self.monad.el_unit(A, a): a for a in A}
        a = units.get(s)
        if a is not None:
            return ("var", a)
        U = minimal_support(self.monad, A, s)
        elem = restrict_to_support(self.monad, A, s, U)
        ren = FinMap(U, self._index_set(U.size),
                     {u: Atom(j) for j, u in enumerate(U.elements)},
                     _trusted=True)
        return ("op", self.monad.el_map(ren, elem), U.elements)


# ---------------------------------------------------------------------------
# The term engine


@dataclass(eq=False)
class TermAlgebra:
    left: LayerSystem
    right: LayerSystem
    pool_cap: int = 24
    ops_budget: int = 3

    def sys(self, side: str) -> LayerSystem:
        return self.left if side == "L" else self.right

    def make_layer(self, side: str, op: Label, children: Sequence) -> Term:
        """Build the canonical term for a layer over already-canonical
        children: collapse unit operations, dissolve same-side children
        into the operation, merge duplicates, minimize support, and keep
        children sorted."""
        sysm = self.sys(side)
        k = len(children)
        unit_ix = sysm.is_unit(op, k)
        if unit_ix is not None:
            return children[unit_ix]

        pool: list = []
        seen: dict = {}
        for c in children:
            if isinstance(c, Layer) and c.side == side:
                for gc in c.children:
                    if gc not in seen:
                        seen[gc] = True
                        pool.append(gc)
            elif c not in seen:
                seen[c] = True
                pool.append(c)
        pool.sort(key=term_key)
        if len(pool) > self.pool_cap:
            raise BudgetExceeded(f"child pool {len(pool)} > {self.pool_cap}")
        pos = {c: i for i, c in enumerate(pool)}

        args = []
        for c in children:
            if isinstance(c, Layer) and c.side == side:
                mapping = [pos[gc] for gc in c.children]
                args.append(("op", sysm.act(c.op, len(c.children),
                                            mapping, len(pool))))
            else:
                args.append(("var", pos[c]))

        kind, payload = sysm.flatten(op, k, args, len(pool))
        if kind == "var":
            return pool[payload]
        newop = payload
        supp = sysm.support(newop, len(pool))
        if len(supp) < len(pool):
            newop = sysm.restrict(newop, len(pool), supp)
            pool = [pool[i] for i in supp]
        return Layer(side, newop, tuple(pool))

    def normalize(self, t) -> Term:
        """Canonicalize a raw layered tree bottom-up; idempotent."""
        if isinstance(t, Var):
            return t
        kids = [self.normalize(c) for c in t.children]
        return self.make_layer(t.side, t.op, kids)

    def subst(self, t, assign: Mapping[Label, "Term"]) -> Term:
        """Replace variables and re-canonicalize every layer on the way
        up; with an identity-shaped assignment this is the coproduct's
        multiplication, elementwise."""
        if isinstance(t, Var):
            if t.label not in assign:
                raise ContractViolation(
                    f"assignment misses variable {show_label(t.label)}")
            return assign[t.label]
        kids = [self.subst(c, assign) for c in t.children]
        return self.make_layer(t.side, t.op, kids)

    def is_canonical(self, t) -> bool:
        if isinstance(t, Var):
            return True
        sysm = self.sys(t.side)
        k = len(t.children)
        if sysm.is_unit(t.op, k) is not None:
            return False
        if sysm.support(t.op, k) != tuple(range(k)):
            return False
        keys = [term_key(c) for c in t.children]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            return False
        for c in t.children:
            if isinstance(c, Layer) and c.side == t.side:
                return False
            if not self.is_canonical(c):
                return False
        return True

    # -- embedding of one-monad elements

    def embed(self, side: str, A: FinSet, s: Label) -> Term:
        sysm = self.sys(side)
        if not isinstance(sysm, MaterializedSystem):
            raise ContractViolation("embed needs a materialized side")
        got = sysm.embed(A, s)
        if got[0] == "var":
            return Var(got[1])
        _, op, supp = got
        return Layer(side, op, tuple(Var(u) for u in supp))

    def embed_left(self, A: FinSet, s: Label) -> Term:
        return self.embed("L", A, s)

    def embed_right(self, A: FinSet, s: Label) -> Term:
        return self.embed("R", A, s)

    # -- enumeration by layer depth

    def enumerate(self, A: FinSet, depth: int) -> list:
        """All canonical terms of layer depth <= depth over variables A,
        sorted; layer operations on a free side are cut off at the
        configured per-layer budget."""
        variables = [Var(a) for a in A.elements]
        exact: dict[tuple[str, int], list] = {}
        for d in range(1, depth + 1):
            for side in ("L", "R"):
                other = "R" if side == "L" else "L"
                cands = list(variables)
                for dd in range(1, d):
                    cands.extend(exact.get((other, dd), []))
                cands.sort(key=term_key)
                found = []
                max_k = min(len(cands), self.pool_cap)
                for k in range(0, max_k + 1):
                    ops = self.sys(side).enum_ops(k, self.ops_budget)
                    if not ops:
                        continue
                    for combo in itertools.combinations(cands, k):
                        mx = max((term_depth(c) for c in combo), default=0)
                        if mx != d - 1:
                            continue
                        for op in ops:
                            found.append(Layer(side, op, combo))
                exact[(side, d)] = found
        out = list(variables)
        for d in range(1, depth + 1):
            out.extend(exact[("L", d)])
            out.extend(exact[("R", d)])
        out.sort(key=term_key)
        return out


def term_algebra(S: MonadSpec, T: MonadSpec, **kw) -> TermAlgebra:
    return TermAlgebra(MaterializedSystem(S), MaterializedSystem(T), **kw)


# ---------------------------------------------------------------------------
# Bridges and sampled laws


def terms_of_solution(sol, S: MonadSpec, T: MonadSpec, A: FinSet,
                      ta: TermAlgebra | None = None):
    """Translate a converged two-sort solution into canonical terms,
    stage by stage; returns (term algebra, dict for the X sort, dict for
    the Y sort) at the convergence stage."""
    if ta is None:
        ta = term_algebra(S, T)
    from .chains import eval_obj

    tx: dict[Label, "Term"] = {}
    ty: dict[Label, "Term"] = {}
    for i in range(sol.converged_at):
        new_tx, new_ty = {}, {}
        for side, monad, tab_prev_other, new_tab in (
                ("L", S, ty, new_tx), ("R", T, tx, new_ty)):
            sort = 0 if side == "L" else 1
            W = eval_obj(sol.system.rhs[sort].inner, sol.stages[i])
            dom = sol.stages[i + 1][sort]
            sysm = ta.sys(side)
            for z in dom:
                U = minimal_support(monad, W, z)
                elem = restrict_to_support(monad, W, z, U)
                ren = FinMap(U, nat_set(U.size),
                             {u: Atom(j) for j, u in enumerate(U.elements)},
                             _trusted=True)
                op = monad.el_map(ren, elem)
                kids = []
                for u in U.elements:
                    if u.side == "L":
                        kids.append(tab_prev_other[u.inner])
                    else:
                        kids.append(Var(u.inner))
                new_tab[z] = ta.make_layer(side, op, kids)
        tx, ty = new_tx, new_ty
    # the solution carriers are the convergence-stage carriers, so the
    # last translation tables cover them exactly
    if set(tx) != set(sol.carriers[0].elements) or \
            set(ty) != set(sol.carriers[1].elements):
        raise ContractViolation("stage labels did not stabilize")
    return ta, tx, ty


def kleisli_assoc_samples(S: MonadSpec, T: MonadSpec, A: FinSet,
                          samples: int = 120, seed: int = 0,
                          depth: int = 2) -> tuple[int, bool]:
    """Symbolic associativity: substituting then substituting equals
    substituting the composite, on random terms and assignments."""
    ta = term_algebra(S, T)
    if A.size == 0:
        terms = ta.enumerate(A, depth)
        # no variables: substitution is trivially the identity
        return len(terms), all(ta.subst(t, {}) == t for t in terms)
    terms = ta.enumerate(A, depth)
    if not terms:
        return 0, True
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        t = terms[rng.randrange(len(terms))]
        f = {a: terms[rng.randrange(len(terms))] for a in A}
        g = {a: terms[rng.randrange(len(terms))] for a in A}
        lhs = ta.subst(ta.subst(t, f), g)
        comp = {a: ta.subst(f[a], g) for a in A}
        rhs = ta.subst(t, comp)
        checked += 1
        if lhs != rhs:
            return checked, False
    return checked, True
