"""Slow, independent reference implementations used to cross-check the fast paths.

Nothing here touches the bitset kernels or the search code in
:mod:`cqm.testspace`; each oracle works from the definitions with plain
Python sets.
"""

import cmath
from itertools import combinations


def all_subsets(universe):
    u = list(universe)
    for k in range(len(u) + 1):
        for c in combinations(u, k):
            yield frozenset(c)


def complement_oracle(universe, tests):
    """Every subset meeting each test exactly once, keeping the maximal ones."""
    tests = [frozenset(t) for t in tests]
    if not tests:
        return frozenset()
    hits = [s for s in all_subsets(universe) if all(len(s & t) == 1 for t in tests)]
    return frozenset(s for s in hits if not any(s < t for t in hits))


def double_complement_oracle(universe, tests):
    return complement_oracle(universe, complement_oracle(universe, tests))


def compose_oracle(r, s):
    """Pairs (x, z) with some y such that x r y and y s z."""
    return frozenset((x, z) for x, y in r for y2, z in s if y == y2)


def image_oracle(pairs, subset):
    return frozenset(y for x, y in pairs if x in subset)


def arrow_oracle(pairs, a_tests, a_comp, b_tests, b_comp):
    """Tests go to tests forward and complement tests to complement tests backward."""
    conv = {(y, x) for x, y in pairs}
    return (all(image_oracle(pairs, t) in b_tests for t in a_tests)
            and all(image_oracle(conv, t) in a_comp for t in b_comp))


def vectors_oracle(universe, tests):
    """Supports s for which {s} is an arrow from the unit."""
    comp = complement_oracle(universe, tests)
    return sorted((s for s in all_subsets(universe)
                   if s in tests and all(len(s & c) == 1 for c in comp)),
                  key=lambda s: (len(s), sorted(map(repr, s))))


def rectangular_oracle(universe, blocks):
    """Whether the transversals of a partition can themselves partition the universe."""
    transversals = complement_oracle(universe, blocks)
    elems = sorted(universe, key=repr)

    def cover(left):
        if not left:
            return True
        x = min(left, key=repr)
        return any(cover(left - t) for t in transversals if x in t and t <= left)

    return cover(frozenset(elems))


def colinearity_oracle(x, y):
    ip = sum(a.conjugate() * b for a, b in zip(x, y))
    nx = sum(abs(a) ** 2 for a in x) ** 0.5
    ny = sum(abs(b) ** 2 for b in y) ** 0.5
    return abs(ip) / (nx * ny)


def same_ray_oracle(x, y, tol):
    return abs(colinearity_oracle(x, y) - 1) <= tol


def kron_oracle(x, y):
    return [a * b for a in x for b in y]


def c_complement_oracle(alpha, c, universe, tol):
    """Universe indices at colinearity c from every ray in alpha, by direct loops."""
    return tuple(i for i, u in enumerate(universe)
                 if all(abs(colinearity_oracle(u, a) - c) <= tol for a in alpha))


def inner_oracle(x, y):
    return sum(a.conjugate() * b for a, b in zip(x, y))


def apply_oracle(f, v):
    return [sum(f[i][j] * v[j] for j in range(len(v))) for i in range(len(f))]


def adjoint_oracle(f):
    return [[f[j][i].conjugate() for j in range(len(f))] for i in range(len(f[0]))]


def phase(z):
    return cmath.phase(z)
