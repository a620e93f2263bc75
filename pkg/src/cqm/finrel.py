"""Finite sets, binary relations and set-valued spans.

Elements are ints, strings, or (nested) tuples of those.  Every set-like
value is kept sorted under :func:`elem_key` and deduplicated, so structural
equality is normal-form equality.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import kernels
from .errors import DomainMismatch, MembershipError, InvalidStructure


def elem_key(e):
    """Canonical total order on element identifiers."""
    if isinstance(e, bool):
        raise InvalidStructure(f"booleans are not element identifiers: {e!r}")
    if isinstance(e, (int, np.integer)):
        return (0, int(e))
    if isinstance(e, str):
        return (1, e)
    if isinstance(e, tuple):
        return (2, tuple(elem_key(x) for x in e))
    raise InvalidStructure(f"unsupported element identifier {e!r}")


def canon(elements):
    """Sorted, deduplicated tuple."""
    return tuple(sorted(set(elements), key=elem_key))


def subset_key(s):
    return (len(s), tuple(elem_key(x) for x in canon(s)))


def canon_family(family):
    """A family of subsets as a sorted tuple of sorted tuples."""
    return tuple(sorted({canon(s) for s in family}, key=subset_key))


@dataclass(frozen=True)
class FinSet:
    elements: tuple
    name: str = field(default="", compare=False)

    def __init__(self, elements=(), name=""):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise InvalidStructure(f"FinSet {name!r} has repeated elements")
        object.__setattr__(self, "elements", canon(elements))
        object.__setattr__(self, "name", name)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    @property
    def index(self):
        try:
            return self._index
        except AttributeError:
            idx = {e: i for i, e in enumerate(self.elements)}
            object.__setattr__(self, "_index", idx)
            return idx

    def label(self):
        return self.name or "{" + ",".join(map(str, self.elements)) + "}"

    def mask(self, subset):
        idx = self.index
        m = 0
        for x in subset:
            try:
                m |= 1 << idx[x]
            except KeyError:
                raise MembershipError(f"{x!r} is not an element of {self.label()}") from None
        return m

    def unmask(self, m):
        return frozenset(e for i, e in enumerate(self.elements) if (m >> i) & 1)

    def check_subset(self, subset):
        bad = [x for x in subset if x not in self]
        if bad:
            raise MembershipError(f"{bad[0]!r} is not an element of {self.label()}")


def product_set(a, b, name=None):
    return FinSet(product(a.elements, b.elements),
                  name=name or f"{a.label()}x{b.label()}")


UNIT = FinSet(["*"], name="1")


@dataclass(frozen=True)
class FinRel:
    dom: FinSet
    cod: FinSet
    pairs: frozenset

    def __init__(self, dom, cod, pairs):
        pairs = frozenset(tuple(p) for p in pairs)
        di, ci = dom.index, cod.index
        for x, y in pairs:
            if x not in di:
                raise MembershipError(f"{x!r} is not in the domain {dom.label()}")
            if y not in ci:
                raise MembershipError(f"{y!r} is not in the codomain {cod.label()}")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def trusted(cls, dom, cod, pairs):
        """Skip validation; for pairs built from already-valid relations."""
        r = object.__new__(cls)
        object.__setattr__(r, "dom", dom)
        object.__setattr__(r, "cod", cod)
        object.__setattr__(r, "pairs", frozenset(pairs))
        return r

    @property
    def rows(self):
        """Per domain element, the bitset of related codomain elements."""
        try:
            return self._rows
        except AttributeError:
            di, ci = self.dom.index, self.cod.index
            rows = [0] * len(self.dom)
            for x, y in self.pairs:
                rows[di[x]] |= 1 << ci[y]
            rows = tuple(rows)
            object.__setattr__(self, "_rows", rows)
            return rows

    def sorted_pairs(self):
        return sorted(self.pairs, key=lambda p: (elem_key(p[0]), elem_key(p[1])))

    def __repr__(self):
        return f"FinRel({self.dom.label()} -> {self.cod.label()}, {self.sorted_pairs()})"


def identity(x):
    return FinRel.trusted(x, x, ((e, e) for e in x))


def empty_rel(x, y):
    return FinRel(x, y, ())


def graph(dom, cod, fn):
    """Relation of a function given as a callable or a mapping."""
    f = fn if callable(fn) else fn.__getitem__
    return FinRel(dom, cod, ((x, f(x)) for x in dom))


def compose_rel(r, s):
    """Diagrammatic composite r;s."""
    if r.cod != s.dom:
        raise DomainMismatch(r.cod.label(), s.dom.label(), "compose_rel")
    succ = {}
    for y, z in s.pairs:
        succ.setdefault(y, []).append(z)
    return FinRel.trusted(r.dom, s.cod, ((x, z) for x, y in r.pairs for z in succ.get(y, ())))


def dagger_rel(r):
    return FinRel.trusted(r.cod, r.dom, ((y, x) for x, y in r.pairs))


def tensor_rel(r, s):
    """Cartesian product of relations, acting on paired elements."""
    return FinRel.trusted(product_set(r.dom, s.dom), product_set(r.cod, s.cod),
                  (((x, u), (y, v)) for x, y in r.pairs for u, v in s.pairs))


def associator(x, y, z):
    """(X*Y)*Z -> X*(Y*Z)."""
    return FinRel(product_set(product_set(x, y), z), product_set(x, product_set(y, z)),
                  ((((a, b), c), (a, (b, c))) for a in x for b in y for c in z))


def left_unitor(x):
    """1*X -> X."""
    return FinRel(product_set(UNIT, x), x, ((("*", a), a) for a in x))


def right_unitor(x):
    """X*1 -> X."""
    return FinRel(product_set(x, UNIT), x, (((a, "*"), a) for a in x))


def powerset_image(r, a):
    """Direct image {y | exists x in a. x r y}."""
    r.dom.check_subset(a)
    m = 0
    rows, idx = r.rows, r.dom.index
    for x in a:
        m |= rows[idx[x]]
    return r.cod.unmask(m)


BATCH_MIN = 32


def images_of(r, family):
    """Direct images of each member of ``family``, in the given order."""
    family = list(family)
    if not family:
        return []
    # array setup costs more than it saves on a handful of subsets
    if len(family) >= BATCH_MIN and len(r.dom) <= kernels.MAX_BITS \
            and len(r.cod) <= kernels.MAX_BITS:
        masks = np.array([r.dom.mask(a) for a in family], dtype=np.int64)
        out = kernels.images(np.array(r.rows, dtype=np.int64), masks)
        return [r.cod.unmask(int(m)) for m in out]
    return [powerset_image(r, a) for a in family]


def powerset2_image(r, family):
    """Set of direct images of the members of ``family``."""
    return frozenset(images_of(r, family))


# ------------------------------------------------------------------ spans

@dataclass(frozen=True)
class SetSpan:
    """A span presented as a matrix of finite sets of cell names."""

    dom: FinSet
    cod: FinSet
    entries: tuple  # ((a, b), frozenset(cells)) for nonempty entries, sorted

    def __init__(self, dom, cod, entries):
        items = dict(entries.items() if hasattr(entries, "items") else entries)
        seen = set()
        clean = {}
        for (a, b), cells in items.items():
            if a not in dom or b not in cod:
                raise MembershipError(f"span entry ({a!r}, {b!r}) outside "
                                      f"{dom.label()} x {cod.label()}")
            cells = frozenset(cells)
            if seen & cells:
                raise InvalidStructure(f"cell names {sorted(seen & cells, key=elem_key)} "
                                       "occur in more than one entry")
            seen |= cells
            if cells:
                clean[(a, b)] = cells
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "entries", tuple(
            sorted(clean.items(), key=lambda kv: (elem_key(kv[0][0]), elem_key(kv[0][1])))))

    @property
    def table(self):
        try:
            return self._table
        except AttributeError:
            t = dict(self.entries)
            object.__setattr__(self, "_table", t)
            return t

    def entry(self, a, b):
        return self.table.get((a, b), frozenset())

    def cells(self):
        return frozenset().union(*self.table.values()) if self.entries else frozenset()

    def locate(self):
        """Map from cell name to its (row, col)."""
        return {c: k for k, cells in self.entries for c in cells}


def identity_span(x, tag="id"):
    return SetSpan(x, x, {(e, e): {(tag, e)} for e in x})


def span_of_rel(r, tag="r"):
    return SetSpan(r.dom, r.cod, {(a, b): {(tag, a, b)} for a, b in r.pairs})


def compose_span(f, g):
    """Pullback composite: entry (a,c) is the disjoint union over b of F_ab x G_bc."""
    if f.cod != g.dom:
        raise DomainMismatch(f.cod.label(), g.dom.label(), "compose_span")
    by_row = {}
    for (b, c), cells in g.entries:
        by_row.setdefault(b, []).append((c, cells))
    out = {}
    for (a, b), fc in f.entries:
        for c, gc in by_row.get(b, ()):
            out.setdefault((a, c), set()).update((p, q) for p in fc for q in gc)
    return SetSpan(f.dom, g.cod, out)


def factorize_span(f):
    """Image factorization: the relation holding where an entry is nonempty."""
    return FinRel(f.dom, f.cod, (k for k, cells in f.entries if cells))
