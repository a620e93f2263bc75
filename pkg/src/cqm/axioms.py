"""Instance checks of the monoidal laws on relations and testables.

In relations and in testables over relations both tensors live on the
cartesian product, so the mix map and the distributivities are carried by
identity relations (up to reassociation) and each law becomes a question of
whether that relation is an arrow between the right objects.
"""

from dataclasses import dataclass

from .reports import make_report
from .errors import DomainMismatch, InvalidStructure
from .finrel import (UNIT, FinRel, FinSet, associator, canon_family, compose_rel, dagger_rel,
                     identity, left_unitor, product_set, right_unitor, tensor_rel)
from .testspace import (Testable, TestSpace, complement, morphism_check,
                        structure_problem, tensor_family, unit)


def _pairs(r):
    return [[list(p) if isinstance(p, tuple) else p for p in pair] for pair in r.sorted_pairs()]


def _compare(name, got, want):
    """Failure entries for the symmetric difference of two relations."""
    if got.pairs == want.pairs:
        return []
    extra = FinRel(got.dom, got.cod, got.pairs - want.pairs)
    missing = FinRel(want.dom, want.cod, want.pairs - got.pairs)
    return [{"law": name, "extra": _pairs(extra), "missing": _pairs(missing)}]


def chain(*rels):
    out = rels[0]
    for r in rels[1:]:
        out = compose_rel(out, r)
    return out


# ------------------------------------------------------------ compact duality

@dataclass(frozen=True)
class DualityData:
    carrier: FinSet
    eta: FinRel  # 1 -> X x X
    eps: FinRel  # X x X -> 1


def diagonal_duality(x):
    xx = product_set(x, x)
    return DualityData(x, FinRel(UNIT, xx, (("*", (a, a)) for a in x)),
                       FinRel(xx, UNIT, (((a, a), "*") for a in x)))


def check_compact_adjunction(d):
    """Both snake equations, composed with unitors and associators."""
    x = d.carrier
    xx = product_set(x, x)
    if d.eta.dom != UNIT or d.eta.cod != xx or d.eps.dom != xx or d.eps.cod != UNIT:
        raise DomainMismatch("duality data", "1 -> XxX, XxX -> 1", "check_compact_adjunction")
    ix = identity(x)
    snake_x = chain(dagger_rel(right_unitor(x)), tensor_rel(ix, d.eta),
                    dagger_rel(associator(x, x, x)), tensor_rel(d.eps, ix), left_unitor(x))
    snake_dual = chain(dagger_rel(left_unitor(x)), tensor_rel(d.eta, ix),
                       associator(x, x, x), tensor_rel(ix, d.eps), right_unitor(x))
    fails = _compare("eps-then-X snake", snake_x, ix) + _compare("X-then-eps snake", snake_dual, ix)
    return make_report(fails, carrier=len(x))


# ------------------------------------------------------------ testable objects

def as_object(space, **guard):
    """A testable-shaped object with its complement, without the testability demand."""
    return Testable(space, complement(space, **guard))


def tensor_object(a, b, **guard):
    u = product_set(a.universe, b.universe)
    return as_object(TestSpace(u, tensor_family(a.tests, b.tests), validate=False), **guard)


def par_object(a, b, **guard):
    u = product_set(a.universe, b.universe)
    tests = complement(u, tensor_family(a.complement, b.complement), **guard)
    return as_object(TestSpace(u, tests, validate=False), **guard)


def _describe(obj):
    return {"tests": [list(t) for t in canon_family(obj.tests)],
            "test_space": structure_problem(obj.universe, obj.tests) is None}


def check_mix_and_distributivity(a, b, c, **guard):
    """Mix: id on XxY is an arrow A(x)B -> A par B.
    Distributivity: reassociation X(YZ) -> (XY)Z is an arrow A(x)(B par C) -> (A(x)B) par C.
    """
    ab_t, ab_p = tensor_object(a, b, **guard), par_object(a, b, **guard)
    fails = []
    mix = morphism_check(identity(ab_t.universe), ab_t, ab_p)
    if not mix:
        fails.append({"law": "mix", "diagnostics": mix.diagnostics})
    src = tensor_object(a, par_object(b, c, **guard), **guard)
    dst = par_object(ab_t, c, **guard)
    w = dagger_rel(associator(a.universe, b.universe, c.universe))
    dist = morphism_check(w, src, dst)
    if not dist:
        fails.append({"law": "distributivity", "diagnostics": dist.diagnostics})
    return make_report(fails, mix=bool(mix), distributivity=bool(dist),
                       tensor=_describe(ab_t), par=_describe(ab_p),
                       source=_describe(src), target=_describe(dst))


def restar(a, **guard):
    """The star with its complement recomputed rather than read back."""
    return as_object(TestSpace(a.universe, a.complement, validate=False), **guard)


def check_star_object_laws(a, b, **guard):
    """A** = A and (A(x)B)* = A* par B*, both sides computed independently."""
    fails = []
    a2 = restar(restar(a, **guard), **guard)
    if a2.tests != a.tests:
        fails.append({"law": "double star", "got": [list(t) for t in canon_family(a2.tests)]})
    left = restar(tensor_object(a, b, **guard), **guard)
    right = par_object(restar(a, **guard), restar(b, **guard), **guard)
    if left.tests != right.tests:
        fails.append({"law": "tensor star is par of stars",
                      "star_of_tensor": [list(t) for t in canon_family(left.tests)],
                      "par_of_stars": [list(t) for t in canon_family(right.tests)]})
    return make_report(fails)


def check_units():
    """The tensor unit and its star coincide."""
    top = unit()
    bottom = restar(top)
    fails = [] if bottom.tests == top.tests else [{"law": "units coincide"}]
    return make_report(fails, top=_describe(top), bottom=_describe(bottom))


def check_autonomous_adjunction(a, **guard):
    """Diagonal unit T -> A* par A and counit A (x) A* -> bottom, reported not assumed."""
    x = a.universe
    xx = product_set(x, x)
    one = unit()
    sa = restar(a, **guard)
    eta = FinRel(UNIT, xx, (("*", (e, e)) for e in x))
    eps = FinRel(xx, UNIT, (((e, e), "*") for e in x))
    m_eta = morphism_check(eta, one, par_object(sa, a, **guard))
    m_eps = morphism_check(eps, tensor_object(a, sa, **guard), restar(one))
    fails = []
    if not m_eta:
        fails.append({"law": "unit is an arrow", "diagnostics": m_eta.diagnostics})
    if not m_eps:
        fails.append({"law": "counit is an arrow", "diagnostics": m_eps.diagnostics})
    snake = check_compact_adjunction(DualityData(x, eta, eps))
    fails += snake.failures
    return make_report(fails, unit_arrow=bool(m_eta), counit_arrow=bool(m_eps),
                       snakes=snake.passed)


# ------------------------------------------------------------ Frobenius

@dataclass(frozen=True)
class AlgebraData:
    carrier: FinSet
    nabla: FinRel  # X x X -> X
    delta: FinRel  # X -> X x X

    def __init__(self, carrier, nabla, delta=None):
        delta = dagger_rel(nabla) if delta is None else delta
        if delta.pairs != dagger_rel(nabla).pairs:
            raise InvalidStructure("comultiplication must be the converse of multiplication")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "nabla", nabla)
        object.__setattr__(self, "delta", delta)


def group_algebra(elements, op):
    x = FinSet(elements)
    return AlgebraData(x, FinRel(product_set(x, x), x,
                                 (((a, b), op(a, b)) for a in x for b in x)))


def first_projection_algebra(elements):
    x = FinSet(elements)
    return AlgebraData(x, FinRel(product_set(x, x), x, (((a, b), a) for a in x for b in x)))


def find_unit(alg):
    """A subset e with (e x X);nabla = id = (X x e);nabla, or None."""
    x = alg.carrier
    ix = identity(x)
    for m in range(1 << len(x)):
        e = FinRel(UNIT, x, (("*", v) for v in x.unmask(m)))
        left = chain(dagger_rel(left_unitor(x)), tensor_rel(e, ix), alg.nabla)
        right = chain(dagger_rel(right_unitor(x)), tensor_rel(ix, e), alg.nabla)
        if left.pairs == ix.pairs and right.pairs == ix.pairs:
            return sorted(x.unmask(m), key=str)
    return None


def check_frobenius(alg):
    """(D x X);(X x N) = N;D = (X x D);(N x X), plus associativity and a unit.

    The report keeps the verdict on the Frobenius equations separate from
    associativity and unitality.
    """
    x = alg.carrier
    ix = identity(x)
    a = associator(x, x, x)
    n, d = alg.nabla, alg.delta
    middle = compose_rel(n, d)
    left = chain(tensor_rel(d, ix), a, tensor_rel(ix, n))
    right = chain(tensor_rel(ix, d), dagger_rel(a), tensor_rel(n, ix))
    frob = _compare("frobenius left", left, middle) + _compare("frobenius right", right, middle)
    assoc = _compare("associativity", chain(tensor_rel(n, ix), n),
                     chain(a, tensor_rel(ix, n), n))
    e = find_unit(alg)
    unit_fail = [] if e is not None else [{"law": "unit", "reason": "no unit subset exists"}]
    return make_report(frob + assoc + unit_fail, frobenius=not frob, associative=not assoc,
                       unit=e)
