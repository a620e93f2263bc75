"""Seeded generators for the verification corpus.

Random finite functors are built as poset x monoid categories mapped by a
monotone map and a monoid homomorphism; that family covers faithful and
non-faithful functors, empty fibers, and non-thin hom-sets while keeping
composition tables exact.
"""

import random
from itertools import product

from .comprehension import (FinFunctor, LaxSpec, monoid_category, product_category,
                            specification_of_functor, thin_category)
from .finrel import FinRel, FinSet

# (name, elements, op, unit)
MONOIDS = {
    "Z1": ([0], lambda a, b: 0, 0),
    "Z2": ([0, 1], lambda a, b: (a + b) % 2, 0),
    "Z3": ([0, 1, 2], lambda a, b: (a + b) % 3, 0),
    "Z4": ([0, 1, 2, 3], lambda a, b: (a + b) % 4, 0),
    "M2": ([0, 1], lambda a, b: max(a, b), 0),
}


def monoid_homs(src, dst):
    """All unit- and product-preserving maps between two tabled monoids."""
    se, sop, su = MONOIDS[src]
    de, dop, du = MONOIDS[dst]
    out = []
    for images in product(de, repeat=len(se)):
        h = dict(zip(se, images))
        if h[su] != du:
            continue
        if all(h[sop(a, b)] == dop(h[a], h[b]) for a in se for b in se):
            out.append(h)
    return out


def random_poset(rng, k, density=0.5, prefix="p"):
    objs = [f"{prefix}{i}" for i in range(k)]
    leq = {(a, a) for a in objs}
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < density:
                leq.add((objs[i], objs[j]))
    changed = True
    while changed:
        changed = False
        for a, b in list(leq):
            for b2, c in list(leq):
                if b == b2 and (a, c) not in leq:
                    leq.add((a, c))
                    changed = True
    return objs, leq


def _poset_monoid(objs, leq, monoid):
    elements, op, unit = MONOIDS[monoid]
    return product_category(thin_category(objs, leq),
                            monoid_category(elements, op, unit, obj=monoid))


def random_functor(rng, max_objects=4, max_arrows=10):
    """A random FinFunctor with at most the given sizes on each side."""
    while True:
        ke, kc = rng.randint(1, max_objects), rng.randint(1, max_objects)
        me = rng.choice(list(MONOIDS))
        mc = rng.choice(list(MONOIDS))
        homs = monoid_homs(me, mc)
        if not homs:
            continue
        eo, el = random_poset(rng, ke, rng.random(), "e")
        co, cl = random_poset(rng, kc, rng.random(), "c")
        if len(el) * len(MONOIDS[me][0]) > max_arrows:
            continue
        if len(cl) * len(MONOIDS[mc][0]) > max_arrows:
            continue
        m = None
        for _ in range(50):
            cand = {a: rng.choice(co) for a in eo}
            if all((cand[a], cand[b]) in cl for a, b in el):
                m = cand
                break
        if m is None:
            m = {a: co[0] for a in eo}
        h = rng.choice(homs)
        E = _poset_monoid(eo, el, me)
        C = _poset_monoid(co, cl, mc)
        obmap = {(a, me): (m[a], mc) for a in eo}
        armap = {((a, b), g): ((m[a], m[b]), h[g]) for a, b in el for g in MONOIDS[me][0]}
        return FinFunctor(E, C, obmap, armap)


def chain_spec(monoid):
    """Spec of the projection chain x monoid -> chain on a three-arrow chain."""
    objs = ["A", "B", "C", "D"]
    leq = {(objs[i], objs[j]) for i in range(4) for j in range(i, 4)}
    E = _poset_monoid(objs, leq, monoid)
    base = thin_category(objs, leq)
    F = FinFunctor(E, base, {(a, monoid): a for a in objs},
                   {((a, b), g): (a, b) for a, b in leq for g in MONOIDS[monoid][0]})
    return specification_of_functor(F)


def chain_mutant(rng):
    """A chain spec with exactly one mu cell redirected within its entry.

    Returns the mutant and the mutated mu key.  Group fibers make every such
    redirection break associativity against the third chain arrow.
    """
    spec = chain_spec(rng.choice(["Z2", "Z3", "Z4"]))
    pairs = [(("A", "B"), ("B", "C")), (("B", "C"), ("C", "D"))]
    f, g = rng.choice(pairs)
    keys = sorted((k for k in spec.mu if k[0] == f and k[1] == g), key=repr)
    key = rng.choice(keys)
    fg = spec.base.comp[(f, g)]
    loc = spec.loc(fg)
    here = loc[spec.mu[key]]
    others = sorted((c for c, pos in loc.items() if pos == here and c != spec.mu[key]),
                    key=repr)
    mu = dict(spec.mu)
    mu[key] = rng.choice(others)
    return LaxSpec(spec.base, spec.obmap, spec.armap, mu, spec.eta), key


def random_reflexive_symmetric(rng, n, density=0.5):
    x = FinSet(range(n))
    pairs = {(i, i) for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                pairs |= {(i, j), (j, i)}
    return FinRel(x, x, pairs)


def rng_for(seed):
    return random.Random(seed)
