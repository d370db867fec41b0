"""Finite sets, total maps and injections: the ambient category.

Element labels form a small algebra closed under tagging (binary
coproducts), finite sets of labels (powerset-style carriers) and opaque
tuples (function-like carriers).  Every label carries a precomputed sort
key realizing one fixed total order, so any collection of labels
enumerates identically on every run.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import BudgetExceeded, ContractViolation, NotBijective


# ---------------------------------------------------------------------------
# Labels
#
# Labels are hash-consed: construction returns one canonical instance per
# value, so equality is pointer identity and dictionary lookups never walk
# the structure.  The deep ordering key is computed lazily, once per
# interned label; its subtuples are shared, so comparisons short-circuit
# on identical references.

_POOL: dict = {}


class Label:
    """Base of the label algebra; one interned instance per value."""

    __slots__ = ("_hash", "_key")

    @property
    def key(self) -> tuple:
        k = self._key
        if k is None:
            k = self._key = self._make_key()
        return k

    def __lt__(self, other: "Label") -> bool:
        return self.key < other.key

    def __le__(self, other: "Label") -> bool:
        return self is other or self.key <= other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return show_label(self)


class Atom(Label):
    """Named atom; integer atoms order numerically before string atoms."""

    __slots__ = ("value",)

    def __new__(cls, value):
        self = object.__new__(cls)
        self.value = value
        self._hash = hash((0, value))
        self._key = None
        return _POOL.setdefault(self, self)

    def _make_key(self) -> tuple:
        return (0, 0 if isinstance(self.value, int) else 1, self.value)

    def __eq__(self, other) -> bool:
        return self is other or (type(other) is Atom
                                 and self.value == other.value)

    __hash__ = Label.__hash__


class Tagged(Label):
    """Left/Right injection tag around an inner label."""

    __slots__ = ("side", "inner")

    def __new__(cls, side: str, inner: Label):
        self = object.__new__(cls)
        self.side = side
        self.inner = inner
        self._hash = hash((1, side, inner._hash))
        self._key = None
        return _POOL.setdefault(self, self)

    def _make_key(self) -> tuple:
        return (1, 0 if self.side == "L" else 1, self.inner.key)

    def __eq__(self, other) -> bool:
        return self is other or (type(other) is Tagged
                                 and self.side == other.side
                                 and self.inner is other.inner)

    __hash__ = Label.__hash__


class LabelSet(Label):
    """A finite set of labels, itself usable as a label."""

    __slots__ = ("members",)

    def __new__(cls, members: Iterable[Label]):
        self = object.__new__(cls)
        ms = members if type(members) is frozenset else frozenset(members)
        self.members = ms
        self._hash = hash(ms) ^ 0x9E3779B9
        self._key = None
        return _POOL.setdefault(self, self)

    def _make_key(self) -> tuple:
        return (2, tuple(sorted(m.key for m in self.members)))

    def __eq__(self, other) -> bool:
        return self is other or (type(other) is LabelSet
                                 and self.members == other.members)

    __hash__ = Label.__hash__


class Opaque(Label):
    """Tagged tuple of labels; used for function-like monad elements."""

    __slots__ = ("tag", "parts")

    def __new__(cls, tag: str, parts: Sequence[Label]):
        self = object.__new__(cls)
        self.tag = tag
        self.parts = tuple(parts)
        self._hash = hash((3, tag) + tuple(p._hash for p in self.parts))
        self._key = None
        return _POOL.setdefault(self, self)

    def _make_key(self) -> tuple:
        return (3, self.tag, tuple(p.key for p in self.parts))

    def __eq__(self, other) -> bool:
        return self is other or (type(other) is Opaque
                                 and self.tag == other.tag
                                 and self.parts == other.parts)

    __hash__ = Label.__hash__


def show_label(lbl: Label) -> str:
    if isinstance(lbl, Atom):
        return str(lbl.value)
    if isinstance(lbl, Tagged):
        return f"{lbl.side}({show_label(lbl.inner)})"
    if isinstance(lbl, LabelSet):
        inner = ",".join(show_label(m) for m in sorted(lbl.members))
        return "{" + inner + "}"
    if isinstance(lbl, Opaque):
        inner = ",".join(show_label(p) for p in lbl.parts)
        return f"{lbl.tag}<{inner}>"
    raise TypeError(f"not a label: {lbl!r}")


def atoms(*values) -> tuple[Label, ...]:
    return tuple(Atom(v) for v in values)


# ---------------------------------------------------------------------------
# FinSet


def _label_key(lbl: Label) -> tuple:
    return lbl.key


class FinSet:
    """Immutable finite set of labels in canonical order."""

    __slots__ = ("elements", "index", "_hash")

    def __init__(self, elements: Iterable[Label] = (), _sorted: bool = False):
        elems = (tuple(elements) if _sorted
                 else tuple(sorted(elements, key=_label_key)))
        index = {}
        for pos, e in enumerate(elems):
            if e in index:
                raise ContractViolation(f"duplicate element {e!r}")
            index[e] = pos
        self.elements = elems
        self.index = index
        self._hash = hash(elems)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __contains__(self, lbl: Label) -> bool:
        return lbl in self.index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "{" + ", ".join(show_label(e) for e in self.elements) + "}"


EMPTY = FinSet()


def fset(*labels: Label) -> FinSet:
    return FinSet(labels)


def atom_set(*values) -> FinSet:
    return FinSet(atoms(*values))


def nat_set(n: int) -> FinSet:
    """Canonical n-element set 0..n-1."""
    return FinSet(atoms(*range(n)), _sorted=True)


# ---------------------------------------------------------------------------
# FinMap


class FinMap:
    """Total map between FinSets, stored as an explicit table."""

    __slots__ = ("dom", "cod", "table", "_hash", "_identity")

    def __init__(self, dom: FinSet, cod: FinSet, table: Mapping[Label, Label],
                 _trusted: bool = False):
        if not _trusted:
            if len(table) != dom.size:
                raise ContractViolation("table must be total on dom")
            for x, y in table.items():
                if x not in dom:
                    raise ContractViolation(f"{x!r} not in dom")
                if y not in cod:
                    raise ContractViolation(f"{y!r} not in cod")
        self.dom = dom
        self.cod = cod
        # trusted callers may hand over the mapping itself (possibly a
        # lazily-resolving table); untrusted tables are copied
        self.table = table if _trusted else dict(table)
        self._hash = None
        self._identity = None

    def __call__(self, x: Label) -> Label:
        return self.table[x]

    @property
    def is_identity(self) -> bool:
        if self._identity is None:
            t = self.table
            self._identity = self.dom == self.cod and all(
                t[x] is x or t[x] == x for x in self.dom.elements)
        return self._identity

    def is_injective(self) -> bool:
        t = self.table
        return len({t[x] for x in self.dom.elements}) == self.dom.size

    def is_bijective(self) -> bool:
        return self.cod.size == self.dom.size and self.is_injective()

    def inverse(self) -> "FinMap":
        if self._identity:
            return self
        if not self.is_bijective():
            raise NotBijective(f"map {self.dom}->{self.cod} is not a bijection")
        t = self.table
        return FinMap(self.cod, self.dom,
                      {t[x]: x for x in self.dom.elements}, _trusted=True)

    def then(self, g: "FinMap") -> "FinMap":
        return compose(g, self)

    def image(self) -> set[Label]:
        return set(self.table.values())

    def restrict(self, sub: FinSet) -> "FinMap":
        return FinMap(sub, self.cod, {x: self.table[x] for x in sub})

    def _sig(self):
        return (self.dom, self.cod,
                tuple(self.table[x] for x in self.dom.elements))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinMap):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.table == other.table)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._sig())
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{show_label(x)}->{show_label(self.table[x])}"
                         for x in self.dom.elements)
        return f"FinMap[{body}]"


def identity(X: FinSet) -> FinMap:
    out = FinMap(X, X, dict(zip(X.elements, X.elements)), _trusted=True)
    out._identity = True
    return out


def compose(g: FinMap, f: FinMap) -> FinMap:
    """g after f."""
    if f.cod != g.dom:
        raise ContractViolation("compose: cod/dom mismatch")
    if f.is_identity:
        return g
    if g.is_identity:
        return f
    return FinMap(f.dom, g.cod,
                  {x: g.table[y] for x, y in f.table.items()}, _trusted=True)


def inclusion(sub: FinSet, sup: FinSet) -> FinMap:
    for x in sub:
        if x not in sup:
            raise ContractViolation(f"{x!r} not in superset")
    return FinMap(sub, sup, {x: x for x in sub}, _trusted=True)


def constant(X: FinSet, y: Label, Y: FinSet) -> FinMap:
    return FinMap(X, Y, {x: y for x in X})


def empty_map(cod: FinSet) -> FinMap:
    return FinMap(EMPTY, cod, {}, _trusted=True)


def is_injective(f: FinMap) -> bool:
    return f.is_injective()


# ---------------------------------------------------------------------------
# Coproducts


class Coproduct:
    """Binary coproduct X+Y with provenance-keeping injections."""

    __slots__ = ("set", "inl", "inr")

    def __init__(self, X: FinSet, Y: FinSet):
        left = tuple(Tagged("L", x) for x in X.elements)
        right = tuple(Tagged("R", y) for y in Y.elements)
        Z = FinSet(left + right, _sorted=True)
        self.set = Z
        self.inl = FinMap(X, Z, dict(zip(X.elements, left)), _trusted=True)
        self.inr = FinMap(Y, Z, dict(zip(Y.elements, right)), _trusted=True)


def coproduct(X: FinSet, Y: FinSet) -> Coproduct:
    return Coproduct(X, Y)


def copair(f: FinMap, g: FinMap, Z: FinSet) -> FinMap:
    """[f,g] out of a tagged coproduct carrier Z = dom(f)+dom(g)."""
    if f.cod != g.cod:
        raise ContractViolation("copair: codomains differ")
    table = {}
    for z in Z:
        if not isinstance(z, Tagged):
            raise ContractViolation("copair target is not a tagged sum")
        table[z] = f.table[z.inner] if z.side == "L" else g.table[z.inner]
    return FinMap(Z, f.cod, table, _trusted=True)


def sum_map(f: FinMap, g: FinMap, src: FinSet, dst: FinSet) -> FinMap:
    """f+g between tagged sums src = dom f + dom g, dst = cod f + cod g."""
    table = {}
    for z in src:
        if z.side == "L":
            table[z] = Tagged("L", f.table[z.inner])
        else:
            table[z] = Tagged("R", g.table[z.inner])
    return FinMap(src, dst, table, _trusted=True)


def nsum(parts: Sequence[FinSet]) -> tuple[FinSet, list[FinMap]]:
    """Left-nested n-ary sum with one injection per part."""
    if not parts:
        return EMPTY, []
    acc = parts[0]
    injections = [identity(parts[0])]
    for part in parts[1:]:
        cp = coproduct(acc, part)
        injections = [compose(cp.inl, j) for j in injections]
        injections.append(cp.inr)
        acc = cp.set
    return acc, injections


def ncase(z: Label, arity: int) -> tuple[int, Label]:
    """Which part of a left-nested n-ary sum a label belongs to."""
    hops = 0
    while hops < arity - 1 and isinstance(z, Tagged) and z.side == "L":
        z = z.inner
        hops += 1
    if hops == arity - 1:
        return 0, z
    if not (isinstance(z, Tagged) and z.side == "R"):
        raise ContractViolation("label is not a sum element")
    return arity - 1 - hops, z.inner


# ---------------------------------------------------------------------------
# Equalizers and search


def equalizer(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap]:
    if f.dom != g.dom or f.cod != g.cod:
        raise ContractViolation("equalizer needs a parallel pair")
    kept = tuple(x for x in f.dom.elements if f.table[x] == g.table[x])
    E = FinSet(kept, _sorted=True)
    return E, inclusion(E, f.dom)


def all_maps(X: FinSet, Y: FinSet, cap: int = 10 ** 6) -> Iterator[FinMap]:
    """Every map X -> Y in deterministic order; guards the count."""
    if X.size == 0:
        yield FinMap(X, Y, {}, _trusted=True)
        return
    total = Y.size ** X.size
    if total > cap:
        raise BudgetExceeded(f"{total} candidate maps exceed cap {cap}")
    for values in itertools.product(Y.elements, repeat=X.size):
        yield FinMap(X, Y, dict(zip(X.elements, values)), _trusted=True)


def search_bijection(X: FinSet, Y: FinSet,
                     constraint: Callable[[FinMap], bool] | None = None,
                     bound: int = 8) -> FinMap | None:
    """First constraint-satisfying bijection X -> Y, or None.

    Candidates are scanned in deterministic (permutation) order; carriers
    above `bound` raise BudgetExceeded instead of searching.
    """
    if X.size != Y.size:
        return None
    if X.size > bound:
        raise BudgetExceeded(f"bijection search over size {X.size} > {bound}")
    for perm in itertools.permutations(Y.elements):
        cand = FinMap(X, Y, dict(zip(X.elements, perm)), _trusted=True)
        if constraint is None or constraint(cand):
            return cand
    return None
