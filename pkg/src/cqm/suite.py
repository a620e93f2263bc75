"""The acceptance battery: one deterministic section per criterion.

Each section returns ``{"id", "title", "pass", "details"}``.  Sections draw
randomness only from ``random.Random`` / ``numpy.random.default_rng``
seeded by ``(seed, section id)``, so reports depend on the flags alone and
never on the number of worker threads.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from itertools import product

import numpy as np

from . import axioms, fhilb, multitest, oracles, qprob
from .comprehension import (is_faithful, is_relational, roundtrip_check, spec_roundtrip,
                            specification_of_functor, verify_lax)
from .corpus import chain_mutant, random_functor, random_reflexive_symmetric
from .finrel import FinRel, FinSet, canon, compose_rel, identity
from .io import dumps, from_elem
from .testspace import (all_partitions, all_test_spaces, all_testables, complement,
                        complementary_bases, crudest, enumerate_vectors, finest,
                        maximal_cliques, morphism_check, par, tensor)

SQ = 1 / np.sqrt(2)
# tensor and par of two 3-element testables can have up to 27 tests
WIDE_TESTS = 64


def _rng(seed, section):
    return random.Random(f"{seed}:{section}")


def _nprng(seed, section):
    return np.random.default_rng([seed, section])


def _fam(f):
    return [[from_elem(x) for x in t] for t in sorted(canon(t) for t in f)]


# ------------------------------------------------------------ 1, 2: comprehension

def ac1(cfg):
    rng = _rng(cfg["seed"], 1)
    bad, mismatch, faithful, relational_specs, respec = [], [], 0, 0, 0
    for k in range(200):
        E = random_functor(rng, max_objects=4, max_arrows=10)
        if not roundtrip_check(E):
            bad.append(k)
        spec = specification_of_functor(E)
        f, r = is_faithful(E), is_relational(spec)
        faithful += f
        relational_specs += r
        if f != r:
            mismatch.append(k)
        respec += bool(spec_roundtrip(spec))
    return {"pass": not bad and not mismatch and respec == 200,
            "details": {"functors": 200, "roundtrip_failures": bad,
                        "faithful_relational_mismatches": mismatch,
                        "faithful": faithful, "relational": relational_specs,
                        "spec_roundtrips": respec}}


def _located(failures, key):
    f, g, phi, psi = key
    for x in failures:
        if x["law"] != "associativity":
            continue
        t, c = x["triple"], x["cells"]
        if (t[0], t[1], c[0], c[1]) == key or (t[1], t[2], c[1], c[2]) == key:
            return True
    return False


def ac2(cfg):
    rng = _rng(cfg["seed"], 2)
    missed, unlocated = [], []
    for k in range(50):
        mutant, key = chain_mutant(rng)
        rep = verify_lax(mutant)
        if rep.passed:
            missed.append(k)
        elif not _located(rep.failures, key):
            unlocated.append(k)
    return {"pass": not missed and not unlocated,
            "details": {"mutants": 50, "undetected": missed, "not_located": unlocated}}


# ------------------------------------------------------------ 3-7: testables over relations

def ac3(cfg):
    counts, bad = {}, []
    for n in range(6):
        spaces = all_test_spaces(n)
        counts[str(n)] = len(spaces)
        for s in spaces:
            got = complement(s, max_elements=cfg["guard"])
            want = oracles.complement_oracle(s.universe, s.tests)
            if got != want:
                bad.append({"universe": n, "tests": _fam(s.tests)})
    return {"pass": not bad, "details": {"test_spaces": counts, "discrepancies": bad[:5],
                                         "discrepancy_count": len(bad)}}


def _has_induced_p4(rel):
    x = list(rel.dom)
    adj = {(a, b) for a, b in rel.pairs if a != b}
    for p in product(x, repeat=4):
        if len(set(p)) < 4:
            continue
        a, b, c, d = p
        edges = [(a, b), (b, c), (c, d)]
        non = [(a, c), (b, d), (a, d)]
        if all(e in adj for e in edges) and not any(e in adj for e in non):
            return True
    return False


def ac4(cfg):
    part_bad, parts = [], 0
    for n in range(8):
        u = FinSet(range(n))
        for blocks in all_partitions(n):
            parts += 1
            fam = frozenset(frozenset(b) for b in blocks)
            cc = complement(u, complement(u, fam, max_elements=cfg["guard"]),
                            max_elements=cfg["guard"])
            if cc != fam:
                part_bad.append(_fam(fam))
    rng = _rng(cfg["seed"], 4)
    clique_bad, p4, unexplained = [], 0, 0
    for k in range(500):
        rel = random_reflexive_symmetric(rng, rng.randint(1, 6), rng.random())
        u = rel.dom
        alpha = frozenset(frozenset(c) for c in maximal_cliques(rel))
        cc = complement(u, complement(u, alpha))
        has_p4 = _has_induced_p4(rel)
        p4 += has_p4
        failed = cc != alpha
        unexplained += failed and not has_p4
        if failed:
            clique_bad.append({"index": k, "universe": len(u), "cliques": _fam(alpha),
                               "double_complement": _fam(cc)})
    return {"pass": not part_bad and not clique_bad,
            "details": {"partitions": parts, "partition_failures": part_bad[:5],
                        "relations": 500, "clique_failures": len(clique_bad),
                        "relations_with_induced_p4": p4,
                        "failures_without_induced_p4": unexplained,
                        "first_clique_counterexample": clique_bad[0] if clique_bad else None}}


def ac5(cfg):
    bad, n_parts, with_basis = [], 0, 0
    for n in range(9):
        u = FinSet(range(n))
        for blocks in all_partitions(n):
            n_parts += 1
            rep = complementary_bases(u, blocks, max_elements=cfg["guard"])
            oracle = oracles.rectangular_oracle(range(n), [frozenset(b) for b in blocks])
            with_basis += rep.has_basis
            if not (rep.has_basis == rep.criterion == oracle):
                bad.append({"blocks": _fam(blocks), "criterion": rep.criterion,
                            "found_basis": rep.has_basis, "oracle": oracle})
    return {"pass": not bad, "details": {"partitions": n_parts, "with_basis": with_basis,
                                         "disagreements": bad[:5]}}


def bell_instance():
    return crudest(FinSet([0, 1])), finest(FinSet([0, 1]))


def ac6(cfg):
    a, b = bell_instance()
    t, p = tensor(a, b), par(a, b)
    vt = enumerate_vectors(t, factors=(a, b))
    vp = enumerate_vectors(p, factors=(a, b))
    ot = oracles.vectors_oracle(t.universe, t.tests)
    op = oracles.vectors_oracle(p.universe, p.tests)
    sep_t = sum(v.kind == "separable" for v in vt)
    ent_p = [v for v in vp if v.kind == "entangled"]
    ok = (len(vt) == 2 and sep_t == 2 and len(vp) == 4 and len(ent_p) == 2
          and {v.support for v in vt} == set(ot) and {v.support for v in vp} == set(op))
    return {"pass": ok, "details": {
        "tensor_vectors": [[_fam([v.support])[0], v.kind] for v in vt],
        "par_vectors": [[_fam([v.support])[0], v.kind] for v in vp],
        "oracle_agrees": {v.support for v in vt} == set(ot) and {v.support for v in vp} == set(op)}}


def _relations(x, y):
    pairs = list(product(x, y))
    for m in range(1 << len(pairs)):
        yield FinRel(x, y, (pairs[i] for i in range(len(pairs)) if (m >> i) & 1))


def ac7(cfg):
    guard = {"max_elements": cfg["guard"], "max_tests": WIDE_TESTS}
    objs = [a for n in range(4) for a in all_testables(n)]
    arrows = {}
    oracle_bad, checked = 0, 0
    for i, a in enumerate(objs):
        for j, b in enumerate(objs):
            ms = []
            for r in _relations(a.universe, b.universe):
                ok = bool(morphism_check(r, a, b))
                checked += 1
                if ok != oracles.arrow_oracle(r.pairs, a.tests, a.complement,
                                              b.tests, b.complement):
                    oracle_bad += 1
                if ok:
                    ms.append(r)
            arrows[(i, j)] = ms
    ident_bad = [i for i, a in enumerate(objs) if not morphism_check(identity(a.universe), a, a)]
    comp_bad, composites = [], 0
    for (i, j), ms in arrows.items():
        for k in range(len(objs)):
            for r in ms:
                for s in arrows[(j, k)]:
                    composites += 1
                    if not morphism_check(compose_rel(r, s), objs[i], objs[k]):
                        comp_bad.append([i, j, k])
    star_bad = []
    for a in objs:
        for b in objs:
            rep = axioms.check_star_object_laws(a, b, **guard)
            if not rep:
                star_bad.append({"a": _fam(a.tests), "b": _fam(b.tests)})
    units = axioms.check_units()
    mix_tally, mix_cx = {"pass": 0, "fail": 0}, None
    for a in objs:
        for b in objs:
            rep = axioms.check_mix_and_distributivity(a, b, objs[1], **guard)
            mix_tally["pass" if rep.details["mix"] else "fail"] += 1
            if not rep.details["mix"] and mix_cx is None:
                mix_cx = {"a": _fam(a.tests), "b": _fam(b.tests)}
    small = [a for a in objs if len(a.universe) <= 2]
    dist_tally, dist_cx = {"pass": 0, "fail": 0}, None
    for a, b, c in product(small, repeat=3):
        rep = axioms.check_mix_and_distributivity(a, b, c, **guard)
        dist_tally["pass" if rep.details["distributivity"] else "fail"] += 1
        if not rep.details["distributivity"] and dist_cx is None:
            dist_cx = {"a": _fam(a.tests), "b": _fam(b.tests), "c": _fam(c.tests)}
    ok = not ident_bad and not comp_bad and not star_bad and units.passed and oracle_bad == 0
    return {"pass": ok, "details": {
        "objects": len(objs), "relations_checked": checked,
        "arrows": sum(len(v) for v in arrows.values()),
        "oracle_disagreements": oracle_bad, "identity_failures": ident_bad,
        "composites": composites, "composition_failures": comp_bad[:5],
        "star_law_failures": star_bad[:5], "units_coincide": units.passed,
        "mix_tally": mix_tally, "mix_counterexample": mix_cx,
        "distributivity_tally": dist_tally, "distributivity_counterexample": dist_cx,
        "distributivity_scope": "all testables with at most 2 elements per factor"}}


# ------------------------------------------------------------ 8-10: Hilbert side

def _small_dicts():
    """Dictionaries of dims 1-3 for the degenerate classifications."""
    out = [fhilb.RayDict([[1]], name="C1")]
    out.append(fhilb.RayDict([[1, 0], [0, 1], [SQ, SQ]], name="C2"))
    out.append(fhilb.pauli_dict())
    out.append(fhilb.RayDict([[1, 0, 0], [0, 1, 0], [0, 0, 1], np.ones(3) / np.sqrt(3)],
                             name="C3"))
    return out


def ac8(cfg):
    tol = cfg["tol"]
    u = fhilb.pauli_dict()
    z = u.indices(["z0", "z1"])
    cert = fhilb.is_hilb_testable(z, SQ, u, tol)
    comp_labels = sorted(u.labels[i] for i in cert.complement)
    oracle = oracles.c_complement_oracle([list(u.rays[i]) for i in z], SQ,
                                         [list(r) for r in u.rays], tol)
    main = (cert.ok and comp_labels == ["x0", "x1", "y0", "y1"]
            and tuple(oracle) == cert.complement)
    c0_bad, c1_bad, cases = [], [], 0
    for d in _small_dicts():
        for m in range(1, 1 << len(d)):
            alpha = [i for i in range(len(d)) if (m >> i) & 1]
            cases += 1
            if fhilb.is_hilb_testable(alpha, 0.0, d, tol):
                c0_bad.append([d.name, alpha])
            expect = d.dim == 1 and len(d) == 1
            if bool(fhilb.is_hilb_testable(alpha, 1.0, d, tol)) != expect:
                c1_bad.append([d.name, alpha])
    return {"pass": main and not c0_bad and not c1_bad, "details": {
        "pauli_testable": cert.ok, "complement": comp_labels,
        "double_complement": sorted(u.labels[i] for i in cert.double_complement),
        "oracle_complement_agrees": tuple(oracle) == cert.complement,
        "degenerate_cases": cases, "c0_unexpected_passes": c0_bad,
        "c1_misclassified": c1_bad}}


def ac9(cfg):
    tol = cfg["tol"]
    u = fhilb.pauli_dict()
    a = fhilb.hilb_testable(u, u.indices(["z0", "z1"]), SQ, tol)
    prod = fhilb.pauli18()
    s = fhilb.hilb_testable_structure(a, a, prod, tol)
    bells = [prod.labels.index("phi+"), prod.labels.index("phi-")]
    in_par = {prod.labels[i]: i in s.par_rays for i in bells}
    ranks = {prod.labels[i]: fhilb.schmidt_rank(prod.rays[i], 2, 2, tol) for i in bells}
    comp_vecs = [oracles.kron_oracle(list(x), list(y))
                 for x in a.vectors(a.complement) for y in a.vectors(a.complement)]
    colin = {prod.labels[i]: sorted({round(oracles.colinearity_oracle(list(prod.rays[i]), v), 6)
                                     for v in comp_vecs}) for i in bells}
    oracle_par = oracles.c_complement_oracle(comp_vecs, 0.5, [list(r) for r in prod.rays], tol)
    zz = [prod.labels.index(x) for x in ("z0z0", "z0z1", "z1z0", "z1z1")]
    mix = all(i in s.par_rays for i in zz)
    # same question with factor dictionary Z u X, where X rays form the complement
    zx = fhilb.RayDict([[1, 0], [0, 1], [SQ, SQ], [SQ, -SQ]], name="zx",
                       labels=["z0", "z1", "x0", "x1"])
    b = fhilb.hilb_testable(zx, zx.indices(["z0", "z1"]), SQ, tol)
    twisted = (np.kron([1, 0], [SQ, SQ]) + np.kron([0, 1], [SQ, -SQ])) * SQ
    extra, labels = fhilb.bell_rays()
    prod2 = fhilb.product_dict(zx, zx, list(extra) + [twisted], labels + ["twisted"])
    s2 = fhilb.hilb_testable_structure(b, b, prod2, tol)
    ok = all(in_par.values()) and all(r == 2 for r in ranks.values()) and mix
    return {"pass": ok, "details": {
        "bell_in_par": in_par, "schmidt_ranks": ranks,
        "bell_colinearities_with_complement_products": colin,
        "par_rays": sorted(prod.labels[i] for i in s.par_rays),
        "oracle_par_agrees": tuple(oracle_par) == s.par_rays,
        "tensor_in_par": mix,
        "zx_factor_par": {k: v for k, v in sorted(s2.classification.items())}}}


def ac10(cfg):
    tol = cfg["tol"]
    g = _nprng(cfg["seed"], 10)
    worst = 0.0
    for _ in range(1000):
        m, n = int(g.integers(1, 9)), int(g.integers(1, 9))
        f = g.normal(size=(m, n)) + 1j * g.normal(size=(m, n))
        a = g.normal(size=n) + 1j * g.normal(size=n)
        b = g.normal(size=m) + 1j * g.normal(size=m)
        worst = max(worst, abs(fhilb.inner(fhilb.dagger(f) @ b, a) - fhilb.inner(b, f @ a)))
    fails, mutants_missed = [], 0
    for k in range(100):
        d = 2 + k % 5
        rho = qprob.random_density(g, d)
        sample = qprob.random_sample(g, d, 20)
        mu = qprob.measure_table(rho, sample)
        if not qprob.check_measure_axioms(mu, sample, tol):
            fails.append(k)
        bad = dict(mu)
        key = sorted(k2 for k2 in mu if k2 not in ("0", "H"))[0]
        bad[key] += 1e-3
        if qprob.check_measure_axioms(bad, sample, tol):
            mutants_missed += 1
    ok = worst <= tol and not fails and mutants_missed == 0
    return {"pass": ok, "details": {"adjointness_samples": 1000,
                                    "adjointness_within_tolerance": worst <= tol,
                                    "densities": 100, "axiom_failures": fails,
                                    "mutants": 100, "mutants_undetected": mutants_missed}}


# ------------------------------------------------------------ 11, 12

def ac11(cfg):
    compact = {n: axioms.check_compact_adjunction(axioms.diagonal_duality(FinSet(range(n)))).passed
               for n in range(5)}
    z2 = axioms.check_frobenius(axioms.group_algebra([0, 1], lambda a, b: (a + b) % 2))
    z3 = axioms.check_frobenius(axioms.group_algebra([0, 1, 2], lambda a, b: (a + b) % 3))
    proj = axioms.check_frobenius(axioms.first_projection_algebra([0, 1]))
    ok = all(compact.values()) and z2.passed and z3.passed and not proj.passed
    return {"pass": ok, "details": {
        "compact_by_size": {str(k): v for k, v in compact.items()},
        "z2": z2.to_json(), "z3": z3.to_json(), "first_projection": proj.to_json()}}


def _multi_objects():
    out = []
    for n in range(1, 4):
        for a in all_testables(n):
            for ws in product([1, 2], repeat=n):
                out.append(multitest.MultiTestable(a, dict(zip(a.universe, ws))))
    return out


def ac12(cfg):
    rng = _rng(cfg["seed"], 12)
    objs = _multi_objects()
    count_bad = []
    for A in objs:
        w = A.weights
        want = sum(w[x] for t in A.alpha.tests for x in t)
        want_bot = sum(w[x] for t in A.alpha.complement for x in t)
        if len(multitest.etale(A)) != want or len(multitest.etale_bot(A)) != want_bot:
            count_bad.append(repr(A))
    alphas = []
    for A in objs:
        if A.alpha not in alphas:
            alphas.append(A.alpha)
    by_alpha = {i: [A for A in objs if A.alpha == a] for i, a in enumerate(alphas)}
    base = {}
    for i, a in enumerate(alphas):
        for j, b in enumerate(alphas):
            base[(i, j)] = [r for r in _relations(a.universe, b.universe)
                            if morphism_check(r, a, b)]
    unit_bad, check_bad, n_unit = [], [], 0
    for (i, j), rs in base.items():
        for r in rs:
            for A in by_alpha[i]:
                for B in by_alpha[j]:
                    legs = [multitest.random_multimorphism(rng, r, A, B)]
                    if max(A.weights.values()) == max(B.weights.values()) == 1:
                        legs.append(multitest.maximal_multimorphism(r, A, B))
                    for m in legs:
                        n_unit += 1
                        if not multitest.multimorphism_check(m, A, B):
                            check_bad.append([repr(A), repr(B)])
                            continue
                        left = multitest.compose_multimorphisms(
                            multitest.identity_multimorphism(A), m)
                        right = multitest.compose_multimorphisms(
                            m, multitest.identity_multimorphism(B))
                        if left != m or right != m:
                            unit_bad.append([repr(A), repr(B)])
    assoc_bad, closure_bad, n_assoc = [], [], 0
    k = len(alphas)
    for i, j, l, q in product(range(k), repeat=4):
        if not (base[(i, j)] and base[(j, l)] and base[(l, q)]):
            continue
        A, B, C, D = (rng.choice(by_alpha[x]) for x in (i, j, l, q))
        m1 = multitest.random_multimorphism(rng, rng.choice(base[(i, j)]), A, B)
        m2 = multitest.random_multimorphism(rng, rng.choice(base[(j, l)]), B, C)
        m3 = multitest.random_multimorphism(rng, rng.choice(base[(l, q)]), C, D)
        n_assoc += 1
        c = multitest.compose_multimorphisms
        m12 = c(m1, m2)
        if not multitest.multimorphism_check(m12, A, C):
            closure_bad.append([i, j, l])
        if c(m12, m3) != c(m1, c(m2, m3)):
            assoc_bad.append([i, j, l, q])
    ok = not count_bad and not unit_bad and not check_bad and not assoc_bad and not closure_bad
    return {"pass": ok, "details": {
        "objects": len(objs), "etale_count_mismatches": count_bad[:5],
        "base_arrows": sum(len(v) for v in base.values()),
        "unit_law_instances": n_unit, "unit_law_failures": unit_bad[:5],
        "leg_check_failures": check_bad[:5],
        "associativity_chains": n_assoc, "associativity_failures": assoc_bad[:5],
        "composite_check_failures": closure_bad[:5]}}


def ac13(cfg):
    """Selected sections serialized serially and from a thread pool."""
    ids = [2, 6, 8]
    serial = [dumps(SECTIONS[i][1](cfg)) for i in ids]
    with ThreadPoolExecutor(max_workers=3) as pool:
        threaded = list(pool.map(lambda i: dumps(SECTIONS[i][1](cfg)), ids))
    again = [dumps(SECTIONS[i][1](cfg)) for i in ids]
    same = serial == threaded == again
    return {"pass": same, "details": {"sections": ids, "identical": same}}


SECTIONS = {
    1: ("comprehension roundtrip and faithful iff relational", ac1),
    2: ("lax coherence detects single-cell mutants", ac2),
    3: ("complement equals brute-force oracle, |X| <= 5", ac3),
    4: ("double complement of partitions and clique testables", ac4),
    5: ("rectangular criterion for complementary bases, |X| <= 8", ac5),
    6: ("separable and entangled vectors of the Bell instance", ac6),
    7: ("testable arrows, star laws, mix and distributivity tallies", ac7),
    8: ("Pauli testable and degenerate Hilbert classifications", ac8),
    9: ("Bell rays in the par of Pauli testables", ac9),
    10: ("adjointness and Born measures", ac10),
    11: ("compact adjunction and Frobenius", ac11),
    12: ("multitestable composition laws and etale counts", ac12),
    13: ("determinism across thread counts", ac13),
}


def run_section(i, cfg):
    title, fn = SECTIONS[i]
    out = fn(cfg)
    return {"id": i, "title": title, "pass": bool(out["pass"]), "details": out["details"]}


def run_suite(seed=0, tol=fhilb.EPS, guard=16, jobs=1, only=None):
    cfg = {"seed": seed, "tol": tol, "guard": guard}
    ids = sorted(only) if only else sorted(SECTIONS)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda i: run_section(i, cfg), ids))
    else:
        results = [run_section(i, cfg) for i in ids]
    return {"pass": all(r["pass"] for r in results),
            "config": {"seed": seed, "tolerance": tol, "max_size": guard},
            "criteria": results}
