"""Symbolic free monads on finite signatures.

Terms are trees over named operations with fixed arities; the monad
structure is variable grafting.  Carriers are never materialized as
finite sets (they are infinite for any signature with a positive-arity
operation); everything runs on enumerated or sampled terms, and the
coproduct with a materialized monad goes through the shared layered-term
engine with operation-rooted term contexts as the free side's layers.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import BudgetExceeded, ContractViolation
from .finset import Atom, FinSet, Label, Opaque, show_label
from .layered import Layer, MaterializedSystem, TermAlgebra, Var
from .monad import MonadSpec


@dataclass(frozen=True)
class Signature:
    operations: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.operations]
        if len(set(names)) != len(names):
            raise ContractViolation("operation names must be distinct")

    def arity(self, name: str) -> int:
        for n, a in self.operations:
            if n == name:
                return a
        raise ContractViolation(f"unknown operation {name}")

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(self.operations + other.operations)


def signature(*ops: tuple[str, int]) -> Signature:
    return Signature(tuple(ops))


@dataclass(frozen=True)
class TVar:
    label: Label


@dataclass(frozen=True)
class TOp:
    name: str
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


FTerm = "TVar | TOp"


def graft(t, assign: Mapping[Label, "FTerm"]):
    """Substitute terms for variables: the free-monad multiplication."""
    if isinstance(t, TVar):
        if t.label not in assign:
            raise ContractViolation(f"unbound variable {t.label!r}")
        return assign[t.label]
    return TOp(t.name, tuple(graft(c, assign) for c in t.children))


def relabel(t, f) -> "FTerm":
    """Functor action: rename variables along a map (f or its table)."""
    table = f.table if hasattr(f, "table") else f
    if isinstance(t, TVar):
        return TVar(table[t.label])
    return TOp(t.name, tuple(relabel(c, table) for c in t.children))


def term_variables(t) -> set[Label]:
    if isinstance(t, TVar):
        return {t.label}
    out: set[Label] = set()
    for c in t.children:
        out |= term_variables(c)
    return out


def op_nodes(t) -> int:
    if isinstance(t, TVar):
        return 0
    return 1 + sum(op_nodes(c) for c in t.children)


def term_height(t) -> int:
    if isinstance(t, TVar):
        return 0
    return 1 + max((term_height(c) for c in t.children), default=0)


def show_term(t) -> str:
    if isinstance(t, TVar):
        return show_label(t.label)
    if not t.children:
        return t.name
    return f"{t.name}({','.join(show_term(c) for c in t.children)})"


@dataclass(eq=False)
class FreeMonad:
    """Terms over a signature with unit TVar and multiplication graft."""

    sig: Signature

    def unit(self, a: Label):
        return TVar(a)

    def mult(self, t):
        """Flatten a term over terms: graft with the identity reading."""
        if isinstance(t, TVar):
            return t.label
        return TOp(t.name, tuple(self.mult(c) for c in t.children))

    def enumerate_by_height(self, A: FinSet, height: int) -> list:
        """All terms of height <= height over variables A."""
        levels = [[TVar(a) for a in A.elements]]
        seen = list(levels[0])
        for _ in range(height):
            prev = seen[:]
            new = []
            for name, ar in self.sig.operations:
                for combo in itertools.product(prev, repeat=ar):
                    cand = TOp(name, combo)
                    if cand not in seen and cand not in new:
                        new.append(cand)
            seen.extend(new)
        return seen

    def enumerate_by_size(self, A: FinSet, max_nodes: int,
                          cap: int = 500_000) -> list[list]:
        """Terms grouped by operation-node count, 0..max_nodes."""
        by_size: list[list] = [[TVar(a) for a in A.elements]]
        for n in range(1, max_nodes + 1):
            bucket = []
            for name, ar in self.sig.operations:
                if ar == 0:
                    if n == 1:
                        bucket.append(TOp(name, ()))
                    continue
                for split in _compositions(n - 1, ar):
                    for combo in itertools.product(
                            *[by_size[m] for m in split]):
                        bucket.append(TOp(name, combo))
                        if len(bucket) > cap:
                            raise BudgetExceeded("term enumeration blew up")
            by_size.append(bucket)
        return by_size

    def sample(self, A: FinSet, rng: random.Random, height: int = 4):
        if height == 0 or not self.sig.operations or \
                (A.size > 0 and rng.random() < 0.35):
            if A.size == 0:
                consts = [(n, a) for n, a in self.sig.operations if a == 0]
                if not consts:
                    raise ContractViolation("no closed terms exist")
                return TOp(consts[0][0], ())
            return TVar(A.elements[rng.randrange(A.size)])
        name, ar = self.sig.operations[rng.randrange(len(self.sig.operations))]
        return TOp(name, tuple(self.sample(A, rng, height - 1)
                               for _ in range(ar)))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def term_monad(sig: Signature) -> FreeMonad:
    return FreeMonad(sig)


# ---------------------------------------------------------------------------
# The carrier recursion F A = H(F A) + A


@dataclass
class BarrReport:
    depths: list[tuple[int, int, int]]       # (depth, terms, ops+vars)
    ok: bool


def verify_barr(sig: Signature, A: FinSet, depth: int) -> BarrReport:
    """Terms of height <= d+1 correspond exactly to (an operation applied
    to height-<= d terms) plus a variable; checked by an explicit
    bijection at every depth."""
    fm = term_monad(sig)
    rows = []
    ok = True
    for d in range(depth + 1):
        lower = fm.enumerate_by_height(A, d)
        upper = fm.enumerate_by_height(A, d + 1)
        built = [TVar(a) for a in A.elements]
        for name, ar in sig.operations:
            for combo in itertools.product(lower, repeat=ar):
                built.append(TOp(name, combo))
        # decompose each upper term back; the two directions must invert
        decomposable = set(built)
        if len(decomposable) != len(built):
            ok = False
        if set(upper) != decomposable:
            ok = False
        rows.append((d, len(upper), len(built)))
    return BarrReport(rows, ok)


def catalan_counts(sig: Signature, A: FinSet, max_nodes: int) -> list[int]:
    fm = term_monad(sig)
    return [len(b) for b in fm.enumerate_by_size(A, max_nodes)]


# ---------------------------------------------------------------------------
# Free side of the layered-term engine


def _encode(t) -> Label:
    if isinstance(t, TVar):
        return Opaque("v", (t.label,))
    return Opaque("o:" + t.name, tuple(_encode(c) for c in t.children))


def _decode(lbl: Label):
    if lbl.tag == "v":
        return TVar(lbl.parts[0])
    return TOp(lbl.tag[2:], tuple(_decode(p) for p in lbl.parts))


@dataclass(eq=False)
class FreeSystem:
    """Layer operations are nonvariable term contexts over index atoms."""

    sig: Signature
    _ops: dict = field(default_factory=dict, repr=False)

    @property
    def name(self) -> str:
        return "free[" + ",".join(f"{n}/{a}"
                                  for n, a in self.sig.operations) + "]"

    def is_unit(self, op: Label, k: int) -> int | None:
        if op.tag == "v":
            return op.parts[0].value
        return None

    def act(self, op: Label, k: int, mapping: Sequence[int],
            m: int) -> Label:
        table = {Atom(i): Atom(mapping[i]) for i in range(k)}
        return _encode(relabel(_decode(op), table))

    def support(self, op: Label, k: int) -> tuple[int, ...]:
        used = {v.value for v in term_variables(_decode(op))}
        return tuple(sorted(used))

    def restrict(self, op: Label, k: int, keep: Sequence[int]) -> Label:
        table = {Atom(v): Atom(j) for j, v in enumerate(keep)}
        return _encode(relabel(_decode(op), table))

    def flatten(self, op: Label, k: int, args: list, pool: int):
        assign = {}
        for i, (kind, payload) in enumerate(args):
            if kind == "var":
                assign[Atom(i)] = TVar(Atom(payload))
            else:
                assign[Atom(i)] = _decode(payload)
        out = graft(_decode(op), assign)
        if isinstance(out, TVar):
            return ("var", out.label.value)
        return ("op", _encode(out))

    def enum_ops(self, k: int, budget: int) -> list[Label]:
        got = self._ops.get((k, budget))
        if got is None:
            fm = term_monad(self.sig)
            A = FinSet(Atom(i) for i in range(k))
            full = set(A.elements)
            got = []
            for bucket in fm.enumerate_by_size(A, budget)[1:]:
                for t in bucket:
                    if term_variables(t) == full:
                        got.append(_encode(t))
            got.sort(key=lambda l: l.key)
            self._ops[(k, budget)] = got
        return got


def coproduct_with_free(T: MonadSpec, sig: Signature,
                        ops_budget: int = 3, **kw) -> TermAlgebra:
    """Layered terms whose left layers are operation-rooted term contexts
    and whose right layers come from the materialized monad."""
    return TermAlgebra(FreeSystem(sig), MaterializedSystem(T),
                       ops_budget=ops_budget, **kw)


def free_pair_algebra(sig1: Signature, sig2: Signature,
                      ops_budget: int = 3, **kw) -> TermAlgebra:
    return TermAlgebra(FreeSystem(sig1), FreeSystem(sig2),
                       ops_budget=ops_budget, **kw)


# -- translation between plain sum-signature terms and layered terms


def plain_to_layered(ta: TermAlgebra, sig1: Signature, sig2: Signature,
                     t) -> "Var | Layer":
    """Cut a term over the disjoint-union signature into maximal
    same-signature layers; lands on a canonical layered term."""
    names1 = {n for n, _ in sig1.operations}

    def side_of(term) -> str | None:
        if isinstance(term, TVar):
            return None
        return "L" if term.name in names1 else "R"

    def convert(term):
        sd = side_of(term)
        if sd is None:
            return Var(term.label)
        frontier: list = []

        def strip(node):
            if side_of(node) == sd:
                return TOp(node.name, tuple(strip(c) for c in node.children))
            ix = len(frontier)
            frontier.append(node)
            return TVar(Atom(ix))

        ctx = TOp(term.name, tuple(strip(c) for c in term.children))
        kids = [convert(n) for n in frontier]
        return ta.make_layer(sd, _encode(ctx), kids)

    return convert(t)


def layered_to_plain(t) -> "FTerm":
    """Splice the layer contexts back into one term tree."""
    if isinstance(t, Var):
        return TVar(t.label)
    ctx = _decode(t.op)
    assign = {Atom(i): layered_to_plain(c) for i, c in enumerate(t.children)}
    return graft(ctx, assign)
