"""Finite categories, lax specifications into spans, and comprehension.

Composition is written diagrammatically throughout: ``comp[(f, g)]`` is
``f;g`` for ``f: A -> B`` and ``g: B -> C``.
"""

from itertools import product

from .errors import CoherenceError, SpecError
from .finrel import FinSet, SetSpan, canon
from .reports import VerificationReport, freeze_key, make_report  # noqa: F401


class FinCategory:
    """A finite category given by its full composition table."""

    def __init__(self, objects, arrows, identity, comp, check=True):
        self.objects = canon(objects)
        self.arrows = {a: (d, c) for a, (d, c) in dict(arrows).items()}
        self.identity = dict(identity)
        self.comp = dict(comp)
        if len(self.objects) != len(set(objects)):
            raise SpecError("repeated object names")
        if check:
            problems = self.problems()
            if problems:
                raise SpecError("not a category: " + problems[0])

    def dom(self, f):
        return self.arrows[f][0]

    def cod(self, f):
        return self.arrows[f][1]

    def hom(self, a, b):
        return [f for f, (d, c) in self.arrows.items() if d == a and c == b]

    def composable(self):
        by_dom = {}
        for g, (d, _) in self.arrows.items():
            by_dom.setdefault(d, []).append(g)
        for f, (_, c) in self.arrows.items():
            for g in by_dom.get(c, ()):
                yield f, g

    def problems(self):
        """Every violated category axiom, as human-readable strings."""
        out = []
        objs = set(self.objects)
        for f, (d, c) in self.arrows.items():
            if d not in objs or c not in objs:
                out.append(f"arrow {f!r} has an unknown boundary")
        for a in self.objects:
            i = self.identity.get(a)
            if i not in self.arrows or self.arrows[i] != (a, a):
                out.append(f"identity of {a!r} missing or not an endo-arrow")
        if out:
            return out
        for f, g in self.composable():
            h = self.comp.get((f, g))
            if h is None:
                out.append(f"composite {f!r};{g!r} missing")
            elif self.arrows.get(h) != (self.dom(f), self.cod(g)):
                out.append(f"composite {f!r};{g!r} = {h!r} has the wrong boundary")
        for (f, g) in self.comp:
            if f not in self.arrows or g not in self.arrows or self.cod(f) != self.dom(g):
                out.append(f"composite entry for non-composable pair ({f!r}, {g!r})")
        if out:
            return out
        for f, (d, c) in self.arrows.items():
            if self.comp[(self.identity[d], f)] != f or self.comp[(f, self.identity[c])] != f:
                out.append(f"identity law fails at {f!r}")
        for f, g in self.composable():
            fg = self.comp[(f, g)]
            for h in self.hom_from(self.cod(g)):
                if self.comp[(fg, h)] != self.comp[(f, self.comp[(g, h)])]:
                    out.append(f"associativity fails at ({f!r}, {g!r}, {h!r})")
        return out

    def hom_from(self, a):
        return [g for g, (d, _) in self.arrows.items() if d == a]

    def sorted_arrows(self):
        return sorted(self.arrows, key=freeze_key)


def thin_category(objects, leq):
    """Preorder category: one arrow ``(a, b)`` for each related pair."""
    leq = set(leq) | {(a, a) for a in objects}
    arrows = {(a, b): (a, b) for a, b in leq}
    comp = {((a, b), (b2, c)): (a, c) for a, b in leq for b2, c in leq if b == b2}
    return FinCategory(objects, arrows, {a: (a, a) for a in objects}, comp)


class FinFunctor:
    def __init__(self, dom, cod, obmap, armap, check=True):
        self.dom, self.cod = dom, cod
        self.obmap = dict(obmap)
        self.armap = dict(armap)
        if check:
            problems = self.problems()
            if problems:
                raise SpecError("not a functor: " + problems[0])

    def problems(self):
        out = []
        for a in self.dom.objects:
            if self.obmap.get(a) not in set(self.cod.objects):
                out.append(f"object {a!r} is not mapped into the codomain")
        for f, (d, c) in self.dom.arrows.items():
            g = self.armap.get(f)
            if g not in self.cod.arrows:
                out.append(f"arrow {f!r} is not mapped to an arrow")
            elif self.cod.arrows[g] != (self.obmap.get(d), self.obmap.get(c)):
                out.append(f"arrow {f!r} is mapped to {g!r} with the wrong boundary")
        if out:
            return out
        for a in self.dom.objects:
            if self.armap[self.dom.identity[a]] != self.cod.identity[self.obmap[a]]:
                out.append(f"identity of {a!r} not preserved")
        for (f, g), h in self.dom.comp.items():
            if self.armap[h] != self.cod.comp[(self.armap[f], self.armap[g])]:
                out.append(f"composite {f!r};{g!r} not preserved")
        return out

    def fiber(self, a):
        return [e for e in self.dom.objects if self.obmap[e] == a]


def identity_functor(cat):
    return FinFunctor(cat, cat, {a: a for a in cat.objects}, {f: f for f in cat.arrows})


# ------------------------------------------------------------------ lax specs

class LaxSpec:
    """A lax functor base -> Span given by explicit finite tables.

    ``mu[(f, g, phi, psi)]`` is the cell of ``alpha|f;g|gamma`` assigned to
    ``phi in alpha|f|beta`` and ``psi in beta|g|gamma``; ``eta[(A, alpha)]``
    is the cell of ``alpha|id_A|alpha``.
    """

    def __init__(self, base, obmap, armap, mu, eta, check=True):
        self.base = base
        self.obmap = {a: (s if isinstance(s, FinSet) else FinSet(s)) for a, s in obmap.items()}
        self.armap = dict(armap)
        self.mu = dict(mu)
        self.eta = dict(eta)
        if check:
            problems = self.problems()
            if problems:
                raise SpecError("malformed specification: " + problems[0])

    def loc(self, f):
        try:
            return self._locs[f]
        except AttributeError:
            self._locs = {g: span.locate() for g, span in self.armap.items()}
            return self._locs[f]

    def problems(self):
        out = []
        base = self.base
        for a in base.objects:
            if a not in self.obmap:
                out.append(f"no fiber for object {a!r}")
        for f, (d, c) in base.arrows.items():
            span = self.armap.get(f)
            if span is None:
                out.append(f"no span for arrow {f!r}")
            elif span.dom != self.obmap.get(d) or span.cod != self.obmap.get(c):
                out.append(f"span of {f!r} has the wrong boundary")
        if out:
            return out
        expected = set()
        for f, g in base.composable():
            fg = base.comp[(f, g)]
            lf, lg, lfg = self.loc(f), self.loc(g), self.loc(fg)
            for phi, (al, be) in lf.items():
                for psi, (be2, ga) in lg.items():
                    if be != be2:
                        continue
                    key = (f, g, phi, psi)
                    expected.add(key)
                    if key not in self.mu:
                        out.append(f"mu missing at {key!r}")
                    elif lfg.get(self.mu[key]) != (al, ga):
                        out.append(f"mu at {key!r} lands outside entry ({al!r}, {ga!r}) of {fg!r}")
        extra = set(self.mu) - expected
        if extra:
            first = sorted(extra, key=freeze_key)[0]
            out.append(f"mu has entries for non-composable data: {first!r}")
        for a in base.objects:
            i = base.identity[a]
            for al in self.obmap[a]:
                cell = self.eta.get((a, al))
                if cell is None:
                    out.append(f"eta missing at ({a!r}, {al!r})")
                elif self.loc(i).get(cell) != (al, al):
                    out.append(f"eta at ({a!r}, {al!r}) is not in the diagonal entry")
        return out


def verify_lax(spec):
    """Check both coherence diagrams: associativity and the two unit triangles."""
    base = spec.base
    failures = []
    triples = 0
    for f, g in base.composable():
        fg = base.comp[(f, g)]
        for h in base.hom_from(base.cod(g)):
            gh = base.comp[(g, h)]
            triples += 1
            lf, lg, lh = spec.loc(f), spec.loc(g), spec.loc(h)
            for phi, (_, b) in lf.items():
                for psi, (b2, c) in lg.items():
                    if b2 != b:
                        continue
                    for chi, (c2, _) in lh.items():
                        if c2 != c:
                            continue
                        left = spec.mu[(fg, h, spec.mu[(f, g, phi, psi)], chi)]
                        right = spec.mu[(f, gh, phi, spec.mu[(g, h, psi, chi)])]
                        if left != right:
                            failures.append({"law": "associativity", "triple": [f, g, h],
                                             "cells": [phi, psi, chi],
                                             "left": left, "right": right})
    for f, (d, c) in base.arrows.items():
        idd, idc = base.identity[d], base.identity[c]
        for phi, (al, be) in spec.loc(f).items():
            got = spec.mu[(idd, f, spec.eta[(d, al)], phi)]
            if got != phi:
                failures.append({"law": "left_unit", "arrow": f, "cell": phi, "got": got})
            got = spec.mu[(f, idc, phi, spec.eta[(c, be)])]
            if got != phi:
                failures.append({"law": "right_unit", "arrow": f, "cell": phi, "got": got})
    return make_report(failures, triples=triples, arrows=len(base.arrows))


def build_comprehension(spec, report=None):
    """Total category of a coherent spec and its projection to the base."""
    report = report or verify_lax(spec)
    if not report:
        raise CoherenceError(report)
    base = spec.base
    objects = [(a, al) for a in base.objects for al in spec.obmap[a]]
    arrows = {}
    for f, (d, c) in base.arrows.items():
        for phi, (al, be) in spec.loc(f).items():
            arrows[(f, phi)] = ((d, al), (c, be))
    identity = {(a, al): (base.identity[a], spec.eta[(a, al)]) for a, al in objects}
    comp = {}
    for f, g in base.composable():
        fg = base.comp[(f, g)]
        for phi, (_, b) in spec.loc(f).items():
            for psi, (b2, _) in spec.loc(g).items():
                if b == b2:
                    comp[((f, phi), (g, psi))] = (fg, spec.mu[(f, g, phi, psi)])
    total = FinCategory(objects, arrows, identity, comp)
    proj = FinFunctor(total, base, {o: o[0] for o in objects}, {x: x[0] for x in arrows})
    return total, proj


def specification_of_functor(E):
    """The spec with fibers E^-1 A and entries {phi : E phi = f}."""
    base, src = E.cod, E.dom
    obmap = {a: FinSet(E.fiber(a), name=f"P{a}") for a in base.objects}
    entries = {f: {} for f in base.arrows}
    for phi, (d, c) in src.arrows.items():
        entries[E.armap[phi]].setdefault((d, c), set()).add(phi)
    armap = {f: SetSpan(obmap[base.dom(f)], obmap[base.cod(f)], entries[f])
             for f in base.arrows}
    mu = {(E.armap[phi], E.armap[psi], phi, psi): chi for (phi, psi), chi in src.comp.items()}
    eta = {(E.obmap[e], e): src.identity[e] for e in src.objects}
    return LaxSpec(base, obmap, armap, mu, eta)


def roundtrip_check(E):
    """Exhibit E's domain as isomorphic to the comprehension of its spec,
    over the base."""
    spec = specification_of_functor(E)
    lax = verify_lax(spec)
    if not lax:
        return make_report([{"law": "lax", "failures": lax.failures}])
    total, proj = build_comprehension(spec, lax)
    src = E.dom
    obj_iso = {e: (E.obmap[e], e) for e in src.objects}
    arr_iso = {phi: (E.armap[phi], phi) for phi in src.arrows}
    failures = []
    if sorted(obj_iso.values(), key=freeze_key) != sorted(total.objects, key=freeze_key):
        failures.append({"law": "object_bijection"})
    if sorted(arr_iso.values(), key=freeze_key) != sorted(total.arrows, key=freeze_key):
        failures.append({"law": "arrow_bijection"})
    if not failures:
        for phi, (d, c) in src.arrows.items():
            if total.arrows[arr_iso[phi]] != (obj_iso[d], obj_iso[c]):
                failures.append({"law": "boundary", "arrow": phi})
        for e in src.objects:
            if arr_iso[src.identity[e]] != total.identity[obj_iso[e]]:
                failures.append({"law": "identity", "object": e})
        for (phi, psi), chi in src.comp.items():
            if total.comp[(arr_iso[phi], arr_iso[psi])] != arr_iso[chi]:
                failures.append({"law": "composition", "pair": [phi, psi]})
        for e in src.objects:
            if proj.obmap[obj_iso[e]] != E.obmap[e]:
                failures.append({"law": "projection", "object": e})
        for phi in src.arrows:
            if proj.armap[arr_iso[phi]] != E.armap[phi]:
                failures.append({"law": "projection", "arrow": phi})
    witness = {"objects": sorted(([e, list(v)] for e, v in obj_iso.items()), key=freeze_key),
               "arrows": sorted(([p, list(v)] for p, v in arr_iso.items()), key=freeze_key)}
    return make_report(failures, witness=witness)


def spec_roundtrip(spec):
    """Comprehend, project, re-specify, and compare with ``spec`` after
    renaming <A,alpha> to alpha and <f,phi> to phi."""
    total, proj = build_comprehension(spec)
    back = specification_of_functor(proj)
    failures = []
    for a in spec.base.objects:
        if FinSet(o[1] for o in back.obmap[a]) != spec.obmap[a]:
            failures.append({"law": "fiber", "object": a})
    for f in spec.base.arrows:
        mine = {(al, be): cells for (al, be), cells in spec.armap[f].entries}
        theirs = {(x[1], y[1]): frozenset(c[1] for c in cells)
                  for (x, y), cells in back.armap[f].entries}
        if mine != theirs:
            failures.append({"law": "entries", "arrow": f})
    renamed_mu = {(f, g, p[1], q[1]): r[1] for (f, g, p, q), r in back.mu.items()}
    if renamed_mu != spec.mu:
        failures.append({"law": "mu"})
    renamed_eta = {(a, o[1]): c[1] for (a, o), c in back.eta.items()}
    if renamed_eta != spec.eta:
        failures.append({"law": "eta"})
    return make_report(failures)


def is_faithful(E):
    seen = {}
    for phi, (d, c) in E.dom.arrows.items():
        key = (d, c, E.armap[phi])
        if key in seen:
            return False
        seen[key] = phi
    return True


def is_relational(spec):
    return all(len(cells) <= 1 for span in spec.armap.values() for _, cells in span.entries)


def terminal_spec(base):
    """Every fiber a singleton, every entry a singleton."""
    obmap = {a: FinSet(["*"]) for a in base.objects}
    armap = {f: SetSpan(obmap[d], obmap[c], {("*", "*"): {f}})
             for f, (d, c) in base.arrows.items()}
    mu = {(f, g, f, g): base.comp[(f, g)] for f, g in base.composable()}
    eta = {(a, "*"): base.identity[a] for a in base.objects}
    return LaxSpec(base, obmap, armap, mu, eta)


def product_category(left, right):
    """Cartesian product of two finite categories."""
    objects = list(product(left.objects, right.objects))
    arrows = {(f, g): ((left.dom(f), right.dom(g)), (left.cod(f), right.cod(g)))
              for f in left.arrows for g in right.arrows}
    identity = {(a, b): (left.identity[a], right.identity[b]) for a, b in objects}
    comp = {((f, g), (f2, g2)): (left.comp[(f, f2)], right.comp[(g, g2)])
            for f, f2 in left.composable() for g, g2 in right.composable()}
    return FinCategory(objects, arrows, identity, comp)


def monoid_category(elements, op, unit, obj="*"):
    """One-object category of a finite monoid; ``op(a, b)`` is a then b."""
    arrows = {m: (obj, obj) for m in elements}
    comp = {(a, b): op(a, b) for a in elements for b in elements}
    return FinCategory([obj], arrows, {obj: unit}, comp)
