"""Test spaces and testables over finite sets.

A test space is a covered, irredundant family of subsets ("tests").  Its
complement is the family of maximal subsets meeting every test in exactly
one element; a testable is a test space whose complement is again a test
space and whose double complement gives it back.

Testable objects, tensor and par, the morphism condition on relations,
vector enumeration and the complementary-basis combinatorics live here too.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import kernels
from .errors import (InvalidStructure, MembershipError, NotTestableError,
                     SizeGuardError)
from .finrel import (UNIT, FinRel, FinSet, canon, canon_family, dagger_rel, images_of,
                     product_set, subset_key)

MAX_ELEMENTS = 16
MAX_TESTS = 12


def _family(tests):
    return frozenset(frozenset(t) for t in tests)


@dataclass(frozen=True)
class TestSpace:
    universe: FinSet
    tests: frozenset

    __test__ = False  # not a pytest class

    def __init__(self, universe, tests, validate=True):
        if not isinstance(universe, FinSet):
            universe = FinSet(universe)
        tests = _family(tests)
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "tests", tests)
        if validate:
            problem = structure_problem(universe, tests)
            if problem:
                raise InvalidStructure(problem)

    def sorted_tests(self):
        return canon_family(self.tests)

    def __repr__(self):
        return f"TestSpace({list(self.universe)}, {[list(t) for t in self.sorted_tests()]})"


def structure_problem(universe, tests):
    """None if ``tests`` is a covered irredundant family over ``universe``."""
    for t in tests:
        bad = [x for x in t if x not in universe]
        if bad:
            return f"test {canon(t)} has element {bad[0]!r} outside the universe"
    covered = frozenset().union(*tests) if tests else frozenset()
    missing = [x for x in universe if x not in covered]
    if missing:
        return f"not covered: {missing[0]!r} lies in no test"
    ts = sorted(tests, key=subset_key)
    for i, a in enumerate(ts):
        for b in ts[i + 1:]:
            if a < b:
                return f"not irredundant: {canon(a)} is strictly contained in {canon(b)}"
    return None


def is_test_space(universe, tests):
    return structure_problem(universe, _family(tests)) is None


def complement(space, tests=None, max_elements=MAX_ELEMENTS, max_tests=MAX_TESTS):
    """Maximal subsets meeting every test in exactly one element.

    Accepts a :class:`TestSpace`, or a universe plus a family.  The empty
    family is self-complementary by convention.
    """
    if tests is None:
        universe, fam = space.universe, space.tests
    else:
        universe, fam = space, _family(tests)
    n = len(universe)
    if n > max_elements or len(fam) > max_tests:
        raise SizeGuardError(
            f"complement refused: {n} elements / {len(fam)} tests exceeds the "
            f"bound of {max_elements} elements / {max_tests} tests")
    if not fam:
        return frozenset()
    order = canon_family(fam)
    masks = np.array([universe.mask(t) for t in order], dtype=np.int64)
    found = kernels.exact_transversals(masks, n)
    # elements in no test can join any transversal, so maximal ones carry them
    free = ((1 << n) - 1) & ~int(np.bitwise_or.reduce(masks))
    result = [universe.unmask(int(m) | free) for m in found]
    result = [u for u in result
              if not any(u < v for v in result)]
    return frozenset(result)


@dataclass(frozen=True)
class Testable:
    """A testable: a test space together with its (cached) complement."""

    space: TestSpace
    complement: frozenset = field(compare=False)

    __test__ = False

    @property
    def universe(self):
        return self.space.universe

    @property
    def tests(self):
        return self.space.tests

    def star(self):
        return Testable(TestSpace(self.universe, self.complement, validate=False),
                        self.tests)

    def sorted_tests(self):
        return self.space.sorted_tests()

    def __repr__(self):
        return f"Testable({list(self.universe)}, {[list(t) for t in self.sorted_tests()]})"


@dataclass
class TestabilityCertificate:
    ok: bool
    reason: str
    complement: frozenset = None
    double_complement: frozenset = None

    __test__ = False

    def __bool__(self):
        return self.ok


def is_testable(space, max_elements=MAX_ELEMENTS, max_tests=MAX_TESTS):
    """Testability verdict with both complements as certificate."""
    if not isinstance(space, TestSpace):
        space = TestSpace(*space)
    comp = complement(space, max_elements=max_elements, max_tests=max_tests)
    problem = structure_problem(space.universe, comp)
    if problem:
        return TestabilityCertificate(False, "complement is not a test space: " + problem, comp)
    comp2 = complement(space.universe, comp, max_elements=max_elements, max_tests=max_tests)
    if comp2 != space.tests:
        return TestabilityCertificate(False, "double complement differs", comp, comp2)
    return TestabilityCertificate(True, "", comp, comp2)


def testable(universe, tests=None, **guard):
    """Build a :class:`Testable`, raising NotTestableError with a certificate."""
    space = universe if tests is None else TestSpace(universe, tests)
    cert = is_testable(space, **guard)
    if not cert:
        raise NotTestableError(cert.reason, family=space.tests,
                               certificate={"complement": cert.complement,
                                            "double_complement": cert.double_complement})
    return Testable(space, cert.complement)


def unit():
    return Testable(TestSpace(UNIT, [["*"]]), frozenset([frozenset(["*"])]))


def finest(universe):
    universe = universe if isinstance(universe, FinSet) else FinSet(universe)
    return testable(universe, [[x] for x in universe])


def crudest(universe):
    universe = universe if isinstance(universe, FinSet) else FinSet(universe)
    return testable(universe, [list(universe)] if len(universe) else [])


def clique_testable(rel, **guard):
    """Maximal cliques of a reflexive symmetric relation on one set."""
    if rel.dom != rel.cod:
        raise InvalidStructure("clique_testable needs an endo-relation")
    for x in rel.dom:
        if (x, x) not in rel.pairs:
            raise InvalidStructure(f"relation is not reflexive at {x!r}")
    for x, y in rel.pairs:
        if (y, x) not in rel.pairs:
            raise InvalidStructure(f"relation is not symmetric at ({x!r}, {y!r})")
    return testable(rel.dom, maximal_cliques(rel), **guard)


def maximal_cliques(rel):
    """Bron-Kerbosch with pivoting over the bitset adjacency of ``rel``."""
    n = len(rel.dom)
    adj = [row & ~(1 << i) for i, row in enumerate(rel.rows)]
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot = max(_bits(p | x), key=lambda u: bin(adj[u] & p).count("1"))
        for v in _bits(p & ~adj[pivot]):
            expand(r | (1 << v), p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if n:
        expand(0, (1 << n) - 1, 0)
    return [rel.dom.unmask(m) for m in out]


def _bits(m):
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


# ------------------------------------------------------------ tensor / par

def tensor_family(alpha, beta):
    return frozenset(frozenset(product(a, b)) for a in alpha for b in beta)


def tensor_space(a, b):
    return TestSpace(product_set(a.universe, b.universe), tensor_family(a.tests, b.tests),
                     validate=False)


def par_space(a, b, **guard):
    u = product_set(a.universe, b.universe)
    return TestSpace(u, complement(u, tensor_family(a.complement, b.complement), **guard),
                     validate=False)


def tensor(a, b, **guard):
    """<X,a> (x) <Y,b> = <XxY, {a x b}>, re-checked for testability."""
    return testable(tensor_space(a, b), **guard)


def par(a, b, **guard):
    """<X,a> par <Y,b> = <XxY, (a-comp (x) b-comp)-comp>, re-checked."""
    sp = par_space(a, b, **guard)
    problem = structure_problem(sp.universe, sp.tests)
    if problem:
        raise NotTestableError("par is not a test space: " + problem, family=sp.tests)
    return testable(sp, **guard)


def star(a):
    return a.star()


def same_object(a, b):
    return a.universe == b.universe and a.tests == b.tests


# ------------------------------------------------------------ morphisms

@dataclass
class MorphismCheck:
    ok: bool
    diagnostics: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def morphism_check(r, a, b):
    """r is an arrow <X,a> -> <Y,b> iff it maps a-tests to b-tests and its
    converse maps b-complement tests to a-complement tests."""
    if r.dom != a.universe or r.cod != b.universe:
        raise MembershipError(
            f"relation {r.dom.label()} -> {r.cod.label()} does not match objects "
            f"over {a.universe.label()} and {b.universe.label()}")
    diags = []
    tests = canon_family(a.tests)
    for t, im in zip(tests, images_of(r, tests)):
        if im not in b.tests:
            diags.append({"leg": "forward", "test": list(t), "image": list(canon(im))})
            break
    if not diags:
        tests = canon_family(b.complement)
        for t, im in zip(tests, images_of(dagger_rel(r), tests)):
            if im not in a.complement:
                diags.append({"leg": "converse", "test": list(t), "image": list(canon(im))})
                break
    return MorphismCheck(not diags, diags)


# ------------------------------------------------------------ vectors

@dataclass
class Vector:
    support: frozenset
    kind: str  # "vector", "separable" or "entangled"


def vector_relation(support, universe):
    return FinRel(UNIT, universe, (("*", x) for x in support))


def enumerate_vectors(a, factors=None, max_elements=MAX_ELEMENTS):
    """All relations 1 -> X that are arrows from the unit object into ``a``.

    With ``factors=(left, right)`` the universe must be their product, and
    each vector is labelled separable (a product of a left and a right test)
    or entangled.
    """
    n = len(a.universe)
    if n > max_elements:
        raise SizeGuardError(f"enumerate_vectors refused: {n} elements exceeds {max_elements}")
    one = unit()
    if a.universe == one.universe and a.tests == one.tests:
        return [Vector(frozenset(["*"]), "vector")]
    products = None
    if factors is not None:
        left, right = factors
        if product_set(left.universe, right.universe) != a.universe:
            raise MembershipError("declared factors do not multiply to the universe")
        products = tensor_family(left.tests, right.tests)
    found = []
    for m in range(1 << n):
        s = a.universe.unmask(m)
        if morphism_check(vector_relation(s, a.universe), one, a):
            if products is None:
                kind = "vector"
            else:
                kind = "separable" if s in products else "entangled"
            found.append(Vector(s, kind))
    found.sort(key=lambda v: subset_key(v.support))
    return found


# ------------------------------------------------------------ complementary bases

def is_partition(universe, blocks):
    seen = set()
    for b in blocks:
        if not b or seen & set(b):
            return False
        seen |= set(b)
    return seen == set(universe)


def exact_covers(universe, family, limit=None):
    """All partitions of ``universe`` whose blocks are members of ``family``."""
    fam = [frozenset(s) for s in canon_family(family) if s]
    elems = list(universe)
    out = []

    def go(covered, chosen):
        if limit is not None and len(out) >= limit:
            return
        rest = [x for x in elems if x not in covered]
        if not rest:
            out.append(frozenset(chosen))
            return
        x = rest[0]
        for s in fam:
            if x in s and not (s & covered):
                go(covered | s, chosen + [s])

    go(frozenset(), [])
    return out


@dataclass
class ComplementaryBasesReport:
    criterion: bool
    block_sizes: list
    bases: list
    shapes: list
    complementary_testable: frozenset

    @property
    def has_basis(self):
        return bool(self.bases)


def complementary_bases(universe, partition, max_elements=MAX_ELEMENTS, max_tests=MAX_TESTS):
    """Complementary bases of a partition: the partitions inside its complement."""
    universe = universe if isinstance(universe, FinSet) else FinSet(universe)
    blocks = _family(partition)
    if not is_partition(universe, blocks):
        raise InvalidStructure("complementary_bases needs a partition of the universe")
    sizes = sorted(len(b) for b in blocks)
    crit = (len(set(sizes)) <= 1 and
            (not sizes or len(universe) == sizes[0] * len(blocks)))
    comp = complement(universe, blocks, max_elements=max_elements, max_tests=max_tests)
    bases = exact_covers(universe, comp)
    shapes = [{"blocks": len(g), "block_sizes": sorted({len(c) for c in g})} for g in bases]
    bases_sorted = sorted((canon_family(g) for g in bases),
                          key=lambda g: [subset_key(c) for c in g])
    return ComplementaryBasesReport(crit, sizes, bases_sorted, shapes, comp)


# ------------------------------------------------------------ enumeration

def all_test_spaces(n):
    """Every test space over {0..n-1}, as frozensets of frozensets."""
    universe = FinSet(range(n))
    subsets = [frozenset(x for x in range(n) if (m >> x) & 1) for m in range(1, 1 << n)]
    full = frozenset(range(n))
    out = []

    def go(i, chosen, covered):
        if i == len(subsets):
            if covered == full:
                out.append(frozenset(chosen))
            return
        s = subsets[i]
        go(i + 1, chosen, covered)
        if all(not (s <= c or c <= s) for c in chosen):
            go(i + 1, chosen + [s], covered | s)

    if n == 0:
        return [TestSpace(universe, [])]
    go(0, [], frozenset())
    return [TestSpace(universe, f, validate=False) for f in
            sorted(out, key=lambda f: [subset_key(t) for t in canon_family(f)])]


def all_testables(n, **guard):
    out = []
    for sp in all_test_spaces(n):
        cert = is_testable(sp, **guard)
        if cert:
            out.append(Testable(sp, cert.complement))
    return out


def all_partitions(n):
    """Set partitions of {0..n-1} in restricted-growth order."""
    def go(i, blocks):
        if i == n:
            yield [frozenset(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from go(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from go(i + 1, blocks)
        blocks.pop()

    if n == 0:
        yield []
        return
    yield from go(0, [])

