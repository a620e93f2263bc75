"""Multitestables: testables whose elements carry positive multiplicities.

A multitestable <X, alpha, omega> is presented by its etale set of triples
(test, element, occurrence) projecting onto the tests.  A morphism is a
relation r on the universes together with a relation R on the etale sets
and a contravariant relation Rbot on the etale sets of the complements,
subject to two commuting squares over the powersets.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import DomainMismatch, InvalidStructure, MembershipError
from .finrel import (FinRel, FinSet, canon, compose_rel, dagger_rel, elem_key, identity,
                     images_of)
from .testspace import Testable, TestSpace, par, tensor, testable, unit


def _omega(universe, omega):
    omega = dict(omega)
    for x in universe:
        if x not in omega:
            raise MembershipError(f"multiplicity missing for {x!r}")
        w = omega[x]
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise InvalidStructure(f"multiplicity of {x!r} must be a positive integer, got {w!r}")
    extra = [x for x in omega if x not in universe]
    if extra:
        raise MembershipError(f"multiplicity given for {extra[0]!r} outside the universe")
    return omega


@dataclass(frozen=True)
class MultiTestable:
    alpha: Testable
    omega: tuple  # sorted (element, multiplicity) pairs

    def __init__(self, alpha, omega):
        if not isinstance(alpha, Testable):
            alpha = testable(alpha)
        omega = _omega(alpha.universe, omega)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "omega", tuple(sorted(omega.items(),
                                                       key=lambda kv: elem_key(kv[0]))))

    @property
    def universe(self):
        return self.alpha.universe

    @property
    def weights(self):
        return dict(self.omega)

    def star(self):
        return MultiTestable(self.alpha.star(), self.omega)

    def __repr__(self):
        return f"MultiTestable({self.alpha!r}, {dict(self.omega)})"


def uniform(alpha, w=1):
    return MultiTestable(alpha, {x: w for x in alpha.universe})


def _etale(tests, weights):
    triples = [(canon(a), x, i) for a in tests for x in a for i in range(weights[x])]
    return FinSet(triples)


@lru_cache(maxsize=4096)
def etale(A):
    """|A|: the triples (test, element, occurrence)."""
    return _etale(A.alpha.tests, A.weights)


@lru_cache(maxsize=4096)
def etale_bot(A):
    """|A-bot|, built from the complement with the same multiplicities."""
    return _etale(A.alpha.complement, A.weights)


def etale_size(A):
    w = A.weights
    return sum(w[x] for a in A.alpha.tests for x in a)


@lru_cache(maxsize=4096)
def projection(points):
    """The etale projection, as the relation triple -> its test."""
    tests = FinSet({t[0] for t in points})
    return FinRel.trusted(points, tests, ((t, t[0]) for t in points))


@dataclass(frozen=True)
class MultiMorphism:
    r: FinRel
    R: FinRel
    Rbot: FinRel


def _square(points, r, R, target_points):
    """The two sides p;P(r) and R;q of a square, as pair sets into subsets."""
    p = projection(points)
    imgs = images_of(r, p.cod.elements)
    subsets = FinSet({canon(s) for s in imgs} | {t[0] for t in target_points})
    pr = FinRel.trusted(p.cod, subsets, zip(p.cod.elements, (canon(s) for s in imgs)))
    q = projection(target_points)
    q = FinRel.trusted(q.dom, subsets, q.pairs)
    return compose_rel(p, pr).pairs, compose_rel(R, q).pairs


@dataclass
class MultiCheck:
    ok: bool
    diagnostics: list

    def __bool__(self):
        return self.ok


def _first_difference(left, right):
    diff = sorted(left ^ right, key=lambda p: (elem_key(p[0]), elem_key(p[1])))
    x = diff[0][0]
    return {"triple": [list(x[0]), x[1], x[2]],
            "expected": sorted((list(s) for t, s in left if t == x), key=str),
            "found": sorted((list(s) for t, s in right if t == x), key=str)}


def multimorphism_check(m, A, B):
    """Both squares: A;P(r) = R;B and Bbot;P(r-op) = Rbot;Abot."""
    ea, eb, ea_bot, eb_bot = etale(A), etale(B), etale_bot(A), etale_bot(B)
    if m.r.dom != A.universe or m.r.cod != B.universe:
        raise DomainMismatch(m.r.dom.label(), A.universe.label(), "multimorphism base relation")
    if m.R.dom != ea or m.R.cod != eb:
        raise DomainMismatch("R", "|A| -> |B|", "multimorphism R leg")
    if m.Rbot.dom != eb_bot or m.Rbot.cod != ea_bot:
        raise DomainMismatch("Rbot", "|Bbot| -> |Abot|", "multimorphism Rbot leg")
    diags = []
    left, right = _square(ea, m.r, m.R, eb)
    if left != right:
        d = _first_difference(left, right)
        d["square"] = "forward"
        diags.append(d)
    left, right = _square(eb_bot, dagger_rel(m.r), m.Rbot, ea_bot)
    if left != right:
        d = _first_difference(left, right)
        d["square"] = "complement"
        diags.append(d)
    return MultiCheck(not diags, diags)


def _allowed(points, r, target_points):
    tests = sorted({t[0] for t in points}, key=lambda a: [elem_key(x) for x in a])
    imgs = dict(zip(tests, (canon(s) for s in images_of(r, tests))))
    by_test = {}
    for s in target_points:
        by_test.setdefault(s[0], []).append(s)
    return {t: by_test.get(imgs[t[0]], []) for t in points}


def maximal_leg(points, r, target_points):
    allowed = _allowed(points, r, target_points)
    return FinRel.trusted(points, target_points,
                          ((t, s) for t, ss in allowed.items() for s in ss))


def maximal_multimorphism(r, A, B):
    """The largest legs over ``r``; they pass iff ``r`` is a testable morphism."""
    return MultiMorphism(r, maximal_leg(etale(A), r, etale(B)),
                         maximal_leg(etale_bot(B), dagger_rel(r), etale_bot(A)))


def random_leg(rng, points, r, target_points):
    """A leg picking a random nonempty subset of the admissible targets per triple."""
    pairs = []
    for t, ss in _allowed(points, r, target_points).items():
        if not ss:
            continue
        chosen = [s for s in ss if rng.random() < 0.5] or [rng.choice(ss)]
        pairs += [(t, s) for s in chosen]
    return FinRel.trusted(points, target_points, pairs)


def random_multimorphism(rng, r, A, B):
    return MultiMorphism(r, random_leg(rng, etale(A), r, etale(B)),
                         random_leg(rng, etale_bot(B), dagger_rel(r), etale_bot(A)))


@lru_cache(maxsize=4096)
def identity_multimorphism(A):
    return MultiMorphism(identity(A.universe), identity(etale(A)), identity(etale_bot(A)))


def compose_multimorphisms(m1, m2):
    """<r;s, R;S, Sbot;Rbot>."""
    return MultiMorphism(compose_rel(m1.r, m2.r), compose_rel(m1.R, m2.R),
                         compose_rel(m2.Rbot, m1.Rbot))


# ------------------------------------------------------------ structure

def multi_unit():
    return MultiTestable(unit(), {"*": 1})


def multi_tensor(A, B, **guard):
    wa, wb = A.weights, B.weights
    t = tensor(A.alpha, B.alpha, **guard)
    return MultiTestable(t, {(x, y): wa[x] * wb[y] for x, y in t.universe})


def multi_par(A, B, **guard):
    wa, wb = A.weights, B.weights
    p = par(A.alpha, B.alpha, **guard)
    return MultiTestable(p, {(x, y): wa[x] * wb[y] for x, y in p.universe})


def multi_star(A):
    return A.star()


def same_multi(A, B):
    return (A.universe == B.universe and A.alpha.tests == B.alpha.tests
            and A.omega == B.omega)


def relabel(A, fn):
    """Transport a multitestable along a bijection of its universe."""
    u = FinSet(fn(x) for x in A.universe)
    space = TestSpace(u, [[fn(x) for x in a] for a in A.alpha.tests])
    return MultiTestable(testable(space), {fn(x): w for x, w in A.omega})


def tensor_multimorphisms(m1, A1, B1, m2, A2, B2, **guard):
    """Componentwise tensor of two morphisms.

    The R leg pairs triples componentwise, matching occurrence indices by
    i = i1 * w2 + i2.  The complement leg has no componentwise form because
    complement tests of a tensor need not be products; it is taken to be the
    largest leg over r1 x r2.
    """
    A, B = multi_tensor(A1, A2, **guard), multi_tensor(B1, B2, **guard)
    r = FinRel(A.universe, B.universe,
               (((x1, x2), (y1, y2)) for x1, y1 in m1.r.pairs for x2, y2 in m2.r.pairs))

    def pair_up(t1, t2, w2):
        test = canon(product(t1[0], t2[0]))
        return (test, (t1[1], t2[1]), t1[2] * w2[t2[1]] + t2[2])

    wa2, wb2 = A2.weights, B2.weights
    R = FinRel(etale(A), etale(B),
               ((pair_up(s1, s2, wa2), pair_up(u1, u2, wb2))
                for s1, u1 in m1.R.pairs for s2, u2 in m2.R.pairs))
    Rbot = maximal_leg(etale_bot(B), dagger_rel(r), etale_bot(A))
    return MultiMorphism(r, R, Rbot), A, B


def star_involutive(A):
    return same_multi(multi_star(multi_star(A)), A)
