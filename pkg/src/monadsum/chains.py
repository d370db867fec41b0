"""Initial chains for systems of functor equations over injections.

A system assigns each sort a right-hand side built from sort variables,
fixed finite sets, binary/n-ary sums and complement applications.  The
chain starts at the empty tuple and iterates the system; it converges
once every connecting injection is a bijection, and the solution's
structure maps are the inverted connectors.

Stage sizes are predicted arithmetically before materializing, so chains
that explode (powerset against powerset) report divergence with the
predicted size instead of attempting to build an astronomical carrier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .complement import ComplementView
from .errors import ContractViolation, LawViolation, SubfunctorViolation
from .finset import (EMPTY, FinMap, FinSet, Label, Tagged, compose, coproduct,
                     empty_map, identity)

# -- Functor expressions ----------------------------------------------------


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class SortVar(Expr):
    index: int


@dataclass(frozen=True)
class ConstSet(Expr):
    value: FinSet


@dataclass(frozen=True)
class Sum(Expr):
    parts: tuple[Expr, ...]

    def __init__(self, parts):
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True, eq=False)
class Bar(Expr):
    view: ComplementView
    inner: Expr


def eval_obj(expr: Expr, carriers: Sequence[FinSet]) -> FinSet:
    """Value of the (barred) expression on a tuple of sort carriers."""
    if isinstance(expr, SortVar):
        return carriers[expr.index]
    if isinstance(expr, ConstSet):
        return expr.value
    if isinstance(expr, Sum):
        acc = eval_obj(expr.parts[0], carriers)
        for part in expr.parts[1:]:
            acc = coproduct(acc, eval_obj(part, carriers)).set
        return acc
    if isinstance(expr, Bar):
        return expr.view.carrier_at(eval_obj(expr.inner, carriers))
    raise ContractViolation(f"unknown expression {expr!r}")


def eval_inj(expr: Expr, maps: Sequence[FinMap],
             src: Sequence[FinSet], dst: Sequence[FinSet]) -> FinMap:
    """Induced injection between evaluations, given per-sort injections."""
    if isinstance(expr, SortVar):
        return maps[expr.index]
    if isinstance(expr, ConstSet):
        return identity(expr.value)
    if isinstance(expr, Sum):
        parts = [eval_inj(p, maps, src, dst) for p in expr.parts]
        acc = parts[0]
        acc_src = eval_obj(expr.parts[0], src)
        acc_dst = eval_obj(expr.parts[0], dst)
        for p, pm in zip(expr.parts[1:], parts[1:]):
            p_src, p_dst = eval_obj(p, src), eval_obj(p, dst)
            new_src = coproduct(acc_src, p_src).set
            new_dst = coproduct(acc_dst, p_dst).set
            table = {}
            for z in new_src:
                if z.side == "L":
                    table[z] = Tagged("L", acc.table[z.inner])
                else:
                    table[z] = Tagged("R", pm.table[z.inner])
            acc = FinMap(new_src, new_dst, table, _trusted=True)
            acc_src, acc_dst = new_src, new_dst
        return acc
    if isinstance(expr, Bar):
        inner = eval_inj(expr.inner, maps, src, dst)
        if not inner.is_injective():
            raise SubfunctorViolation(
                "induced map on an inner expression is not injective")
        return expr.view.action_on_injection(inner)
    raise ContractViolation(f"unknown expression {expr!r}")


def eval_incl(expr: Expr, carriers: Sequence[FinSet]) -> FinMap:
    """Inclusion of the barred value into the unbarred (full monad) value."""
    if isinstance(expr, (SortVar, ConstSet)):
        return identity(eval_obj(expr, carriers))
    if isinstance(expr, Sum):
        parts = [eval_incl(p, carriers) for p in expr.parts]
        acc = parts[0]
        for pm in parts[1:]:
            new_dom = coproduct(acc.dom, pm.dom).set
            new_cod = coproduct(acc.cod, pm.cod).set
            table = {}
            for z in new_dom:
                if z.side == "L":
                    table[z] = Tagged("L", acc.table[z.inner])
                else:
                    table[z] = Tagged("R", pm.table[z.inner])
            acc = FinMap(new_dom, new_cod, table, _trusted=True)
        return acc
    if isinstance(expr, Bar):
        inner = eval_incl(expr.inner, carriers)
        bar_dom = expr.view.carrier_at(inner.dom)
        full_cod = expr.view.base.carrier(inner.cod)
        table = {s: expr.view.base.el_map(inner, s) for s in bar_dom}
        return FinMap(bar_dom, full_cod, table, _trusted=True)
    raise ContractViolation(f"unknown expression {expr!r}")


def predicted_size(expr: Expr, sizes: Sequence[int]) -> int | None:
    if isinstance(expr, SortVar):
        return sizes[expr.index]
    if isinstance(expr, ConstSet):
        return expr.value.size
    if isinstance(expr, Sum):
        total = 0
        for p in expr.parts:
            s = predicted_size(p, sizes)
            if s is None:
                return None
            total += s
        return total
    if isinstance(expr, Bar):
        inner = predicted_size(expr.inner, sizes)
        if inner is None:
            return None
        hint = expr.view.size_at(inner)
        return hint
    raise ContractViolation(f"unknown expression {expr!r}")


# -- Systems and chains -----------------------------------------------------


@dataclass(eq=False)
class EquationSystem:
    rhs: tuple[Expr, ...]

    @property
    def sorts(self) -> int:
        return len(self.rhs)

    def step_obj(self, carriers: Sequence[FinSet]) -> tuple[FinSet, ...]:
        return tuple(eval_obj(r, carriers) for r in self.rhs)

    def step_inj(self, maps: Sequence[FinMap], src, dst) -> tuple[FinMap, ...]:
        return tuple(eval_inj(r, maps, src, dst) for r in self.rhs)

    def predicted(self, sizes: Sequence[int]) -> list[int | None]:
        return [predicted_size(r, sizes) for r in self.rhs]


def two_sort_system(s_view: ComplementView, t_view: ComplementView,
                    A: FinSet) -> EquationSystem:
    """X = S-bar(Y + A), Y = T-bar(X + A), the free-solution shape.

    The constant summand is kept even when A is empty so downstream code
    sees one uniform label layout.
    """
    return EquationSystem((
        Bar(s_view, Sum((SortVar(1), ConstSet(A)))),
        Bar(t_view, Sum((SortVar(0), ConstSet(A)))),
    ))


def family_system(views: Sequence[ComplementView],
                  A: FinSet) -> EquationSystem:
    """One sort per monad; each sees the sum of all the others plus A."""
    rhs = []
    for p, view in enumerate(views):
        parts = [SortVar(q) for q in range(len(views)) if q != p]
        if A.size > 0:
            parts.append(ConstSet(A))
        if not parts:
            raise ContractViolation("family system needs >= 2 sorts or a base")
        inner = parts[0] if len(parts) == 1 else Sum(tuple(parts))
        rhs.append(Bar(view, inner))
    return EquationSystem(tuple(rhs))


@dataclass
class SolutionPair:
    """Converged chain: carriers, invertible structure maps, and the
    full stage history needed by the recursion principle."""

    system: EquationSystem
    carriers: tuple[FinSet, ...]
    structures: tuple[FinMap, ...]          # rhs(solution) -> solution
    converged_at: int
    stages: list[tuple[FinSet, ...]]
    connectors: list[tuple[FinMap, ...]]


@dataclass
class Diverged:
    trace: list[tuple[int | None, ...]]
    reason: str


ChainOutcome = "SolutionPair | Diverged"


def run_chain(system: EquationSystem, budget: int = 24,
              max_carrier: int = 200_000) -> SolutionPair | Diverged:
    """Iterate from the empty tuple until the connectors invert.

    Divergence is reported when the budget runs out or a predicted next
    stage would exceed `max_carrier`; a finite budget can only ever
    witness non-convergence-so-far, never nonexistence.
    """
    if budget < 1:
        raise ContractViolation("budget must be >= 1")
    k = system.sorts
    stages: list[tuple[FinSet, ...]] = [tuple(EMPTY for _ in range(k))]
    connectors: list[tuple[FinMap, ...]] = []
    trace: list[tuple[int | None, ...]] = [tuple(0 for _ in range(k))]

    for stage in range(budget + 1):
        cur_sizes = [c.size for c in stages[-1]]
        nxt_sizes = system.predicted(cur_sizes)
        if any(s is not None and s > max_carrier for s in nxt_sizes):
            trace.append(tuple(nxt_sizes))
            return Diverged(trace, "predicted stage exceeds carrier budget")
        nxt = system.step_obj(stages[-1])
        if any(c.size > max_carrier for c in nxt):
            trace.append(tuple(c.size for c in nxt))
            return Diverged(trace, "stage exceeds carrier budget")
        trace.append(tuple(c.size for c in nxt))
        if not connectors:
            conn = tuple(empty_map(c) for c in nxt)
        else:
            conn = system.step_inj(connectors[-1], stages[-2], stages[-1])
        for m in conn:
            if not m.is_injective():
                raise SubfunctorViolation("connector is not injective")
        stages.append(nxt)
        connectors.append(conn)
        if all(m.is_bijective() for m in conn):
            i = len(connectors) - 1
            return SolutionPair(
                system=system,
                carriers=stages[i],
                structures=tuple(m.inverse() for m in conn),
                converged_at=i,
                stages=stages,
                connectors=connectors,
            )
    return Diverged(trace, "budget exhausted")


# -- Cocones and the recursion principle -------------------------------------


@dataclass(eq=False)
class GTarget:
    """An algebra for the unbarred system, in fused elementwise form.

    `algebras[k]` evaluates the k-th monad's structure on elements of
    S_k(carrier_k); `sort_maps[k][q]` carries sort q's target into sort
    k's inner sum, and `point` interprets the constant base set.  For
    bialgebra targets all carriers coincide and the sort maps are
    identities.
    """

    carriers: tuple[FinSet, ...]
    algebras: tuple[Callable[[Label], Label], ...]
    point: Callable[[Label], Label] | None = None
    sort_maps: tuple[tuple[Callable[[Label], Label] | None, ...], ...] | None = None

    def sort_into(self, k: int, q: int) -> Callable[[Label], Label]:
        if self.sort_maps is None:
            return lambda z: z
        fn = self.sort_maps[k][q]
        return (lambda z: z) if fn is None else fn


def _inner_of(rhs: Expr) -> tuple:
    if not isinstance(rhs, Bar):
        raise ContractViolation(
            "recursion requires each right-hand side to be a complement "
            "applied to a sum of sorts and constants")
    inner = rhs.inner
    parts = inner.parts if isinstance(inner, Sum) else (inner,)
    for p in parts:
        if not isinstance(p, (SortVar, ConstSet)):
            raise ContractViolation("inner expression must be flat")
    return parts


class _LazyTable(dict):
    """Dict resolving missing entries through a closure; lets cocone
    stages materialize only what later stages actually look up."""

    __slots__ = ("resolve",)

    def __init__(self, resolve):
        super().__init__()
        self.resolve = resolve

    def __missing__(self, key):
        val = self.resolve(key)
        self[key] = val
        return val


def _assignment_map(parts: tuple, inner_carrier: FinSet,
                    cocone: list, target: GTarget, k: int,
                    cod: FinSet) -> FinMap:
    """Map (sum of stage sorts and constants) -> target carrier of sort k,
    resolved lazily."""
    handlers = []
    for p in parts:
        if isinstance(p, SortVar):
            comp = cocone[p.index]
            into = target.sort_into(k, p.index)
            handlers.append(lambda z, comp=comp, into=into: into(comp[z]))
        else:
            if target.point is None:
                raise ContractViolation("system has a constant but the "
                                        "target provides no point map")
            handlers.append(target.point)
    nparts = len(parts)
    if nparts == 1:
        table = _LazyTable(handlers[0])
    else:
        def resolve(z):
            depth = 0
            w = z
            while depth < nparts - 1 and w.side == "L":
                w = w.inner
                depth += 1
            part_ix = nparts - 1 - depth
            if part_ix != 0:
                w = w.inner
            return handlers[part_ix](w)

        table = _LazyTable(resolve)
    return FinMap(inner_carrier, cod, table, _trusted=True)


def g_cocone(system: EquationSystem, stages: list[tuple[FinSet, ...]],
             target: GTarget, upto: int) -> list[tuple[FinMap, ...]]:
    """Canonical cocone from the initial chain to an unbarred-system
    algebra: each next component applies the monad action along the
    previous components and then the target's structure.

    Intermediate stages resolve lazily; only the final stage is forced
    in full.
    """
    cocone_tabs: list = [dict() for _ in range(system.sorts)]
    out: list[tuple[FinMap, ...]] = [
        tuple(empty_map(target.carriers[kk]) for kk in range(system.sorts))]
    for i in range(upto):
        new_tabs = []
        for k, rhs in enumerate(system.rhs):
            parts = _inner_of(rhs)
            inner_carrier = eval_obj(rhs.inner, stages[i])
            u = _assignment_map(parts, inner_carrier, cocone_tabs,
                                target, k, target.carriers[k])
            S = rhs.view.base
            alg = target.algebras[k]
            el_map = S.el_map
            new_tabs.append(_LazyTable(
                lambda x, alg=alg, el_map=el_map, u=u: alg(el_map(u, x))))
        cocone_tabs = new_tabs
        out.append(tuple(
            FinMap(stages[i + 1][k], target.carriers[k], cocone_tabs[k],
                   _trusted=True)
            for k in range(system.sorts)))
    for k in range(system.sorts):
        tab = out[upto][k].table
        for x in stages[upto][k]:
            tab[x]
    return out


def h_cocone(sol: SolutionPair) -> list[tuple[FinMap, ...]]:
    """Cocone from the chain to the solution as an algebra of the barred
    system itself; its components are exactly the stage-to-solution
    connectors."""
    sys_ = sol.system
    out = [tuple(empty_map(c) for c in sol.carriers)]
    for i in range(sol.converged_at):
        maps = sys_.step_inj(out[-1], sol.stages[i], sol.carriers)
        out.append(tuple(compose(sol.structures[k], maps[k])
                         for k in range(sys_.sorts)))
    return out


VERIFY_CAP = 20_000


def recurse(sol: SolutionPair, target: GTarget,
            verify: bool | None = None) -> tuple[FinMap, ...]:
    """The unique morphism from the solution to an unbarred-system algebra.

    Returned as the canonical cocone component at the convergence stage;
    `verify` re-checks the defining square on every element (by default
    only when the carriers are small; result-level checks cover the big
    builds).
    """
    if verify is None:
        verify = all(c.size <= VERIFY_CAP for c in sol.carriers)
    upto = sol.converged_at + (1 if verify else 0)
    cocone = g_cocone(sol.system, sol.stages, target, upto)
    f = cocone[sol.converged_at]
    if verify:
        nxt = cocone[sol.converged_at + 1]
        for k in range(sol.system.sorts):
            h = sol.connectors[sol.converged_at][k]
            for x, y in f[k].table.items():
                if nxt[k].table[h(x)] != y:
                    raise LawViolation(f"cocone does not commute at sort {k}")
    if verify:
        for k, rhs in enumerate(sol.system.rhs):
            parts = _inner_of(rhs)
            inner_carrier = eval_obj(rhs.inner, sol.carriers)
            tabs = [f[q].table for q in range(sol.system.sorts)]
            u = _assignment_map(parts, inner_carrier, tabs,
                                target, k, target.carriers[k])
            S = rhs.view.base
            alg = target.algebras[k]
            struct = sol.structures[k]
            for x in struct.dom:
                if f[k](struct(x)) != alg(S.el_map(u, x)):
                    raise ContractViolation(
                        "recursion square failed; target is not an algebra "
                        "of the unbarred system")
    return f
