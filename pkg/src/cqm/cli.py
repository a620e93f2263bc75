"""Command-line front end: ``cqm <subcommand> --input model.json``.

Every subcommand writes a JSON report with "pass", "details", the input
provenance and the schema tag.  Exit status is 0 on pass, 1 on a failed
verification and 2 on unreadable or malformed input.
"""

import sys

import click

from . import axioms, fhilb, multitest, qprob, suite
from .comprehension import build_comprehension, roundtrip_check, spec_roundtrip, verify_lax
from .errors import CQMError, SchemaError
from .finrel import UNIT, product_set
from .io import (SCHEMA, need, dump_family, dump_testspace, dumps, load_alpha, load_density,
                 load_functor, load_matrix, load_raydict, load_rel, load_sample, load_set,
                 load_spec, load_testspace, read_json, to_elem)
from .testspace import (MAX_ELEMENTS, TestSpace, complement, enumerate_vectors, is_testable,
                        morphism_check, par_space, tensor_space, testable)

EXIT_FAIL, EXIT_INPUT = 1, 2


class Run:
    def __init__(self, tolerance, max_size, seed, jobs, output):
        self.tol, self.guard, self.seed, self.jobs, self.output = (
            tolerance, max_size, seed, jobs, output)


def common(f):
    f = click.option("--input", "input_path", type=click.Path(dir_okay=False),
                     help="JSON model file.")(f)
    return f


def _emit(run, passed, details, provenance=None):
    report = {"schema": SCHEMA, "pass": bool(passed), "details": details,
              "provenance": provenance or {},
              "config": {"tolerance": run.tol, "max_size": run.guard, "seed": run.seed}}
    text = dumps(report)
    if run.output:
        with open(run.output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    sys.exit(0 if passed else EXIT_FAIL)


def _load(path):
    if not path:
        raise SchemaError("--input is required")
    return read_json(path)


def _guard(run):
    return {"max_elements": run.guard}


def guarded(fn):
    """Map input problems to exit 2 with a located message."""
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CQMError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INPUT)
        except (KeyError, TypeError, ValueError) as e:
            # structurally malformed JSON (wrong arity, wrong container type)
            click.echo(f"error: malformed input: {type(e).__name__}: {e}", err=True)
            sys.exit(EXIT_INPUT)
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group(context_settings={"auto_envvar_prefix": "CQM"})
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="Write the report here instead of stdout.")
@click.option("--tolerance", type=float, default=fhilb.EPS, show_default=True)
@click.option("--max-size", type=int, default=MAX_ELEMENTS, show_default=True,
              help="Largest universe the combinatorial searches accept.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.pass_context
def main(ctx, output, tolerance, max_size, seed, jobs):
    """Verify finite models of testables, comprehension and their quantum instances."""
    if tolerance <= 0:
        raise click.BadParameter("must be positive", param_hint="--tolerance")
    if max_size < 1:
        raise click.BadParameter("must be at least 1", param_hint="--max-size")
    if jobs < 1:
        raise click.BadParameter("must be at least 1", param_hint="--jobs")
    ctx.obj = Run(tolerance, max_size, seed, jobs, output)


# ------------------------------------------------------------ test spaces

@main.command("complement")
@common
@click.pass_obj
@guarded
def complement_cmd(run, input_path):
    """Complement of a test space: {"universe": [...], "tests": [[...]]}."""
    data, prov = _load(input_path)
    space = load_testspace(data)
    comp = complement(space, **_guard(run))
    _emit(run, True, {"complement": dump_family(comp), "count": len(comp)}, prov)


@main.command("testable-check")
@common
@click.pass_obj
@guarded
def testable_check(run, input_path):
    """Is the test space a testable?"""
    data, prov = _load(input_path)
    cert = is_testable(load_testspace(data), **_guard(run))
    det = {"reason": cert.reason,
           "complement": dump_family(cert.complement or ()),
           "double_complement": dump_family(cert.double_complement or ())}
    _emit(run, cert.ok, det, prov)


def _pair(data, run):
    a = testable(load_testspace(need(data, "left", "input"), "left"), **_guard(run))
    b = testable(load_testspace(need(data, "right", "input"), "right"), **_guard(run))
    return a, b


@main.command("tensor")
@common
@click.pass_obj
@guarded
def tensor_cmd(run, input_path):
    """Tensor of {"left": testspace, "right": testspace}, with its testability."""
    data, prov = _load(input_path)
    a, b = _pair(data, run)
    sp = tensor_space(a, b)
    cert = is_testable(sp, **_guard(run))
    _emit(run, cert.ok, {"testspace": dump_testspace(sp), "testable": cert.ok,
                         "reason": cert.reason}, prov)


@main.command("par")
@common
@click.pass_obj
@guarded
def par_cmd(run, input_path):
    """Par of {"left": testspace, "right": testspace}, with its testability."""
    data, prov = _load(input_path)
    a, b = _pair(data, run)
    sp = par_space(a, b, **_guard(run))
    cert = is_testable(TestSpace(sp.universe, sp.tests, validate=False), **_guard(run))
    _emit(run, cert.ok, {"testspace": dump_testspace(sp), "testable": cert.ok,
                         "reason": cert.reason}, prov)


@main.command("vectors")
@common
@click.pass_obj
@guarded
def vectors_cmd(run, input_path):
    """Vectors of a testable; with "left"/"right" factors, of their tensor or par.

    Input is either a test space, or {"left", "right", "product": "tensor"|"par"}.
    """
    data, prov = _load(input_path)
    if "left" in data:
        a, b = _pair(data, run)
        kind = data.get("product", "tensor")
        if kind not in ("tensor", "par"):
            raise SchemaError(f"input.product: expected 'tensor' or 'par', got {kind!r}")
        sp = tensor_space(a, b) if kind == "tensor" else par_space(a, b, **_guard(run))
        obj = testable(sp, **_guard(run))
        vecs = enumerate_vectors(obj, factors=(a, b), max_elements=run.guard)
    else:
        obj = testable(load_testspace(data), **_guard(run))
        vecs = enumerate_vectors(obj, max_elements=run.guard)
    _emit(run, True, {"vectors": [{"support": dump_family([v.support])[0], "kind": v.kind}
                                  for v in vecs],
                      "count": len(vecs),
                      "entangled": sum(v.kind == "entangled" for v in vecs)}, prov)


@main.command("morphism-check")
@common
@click.pass_obj
@guarded
def morphism_cmd(run, input_path):
    """{"source": testspace, "target": testspace, "pairs": [[x, y], ...]}."""
    data, prov = _load(input_path)
    a = testable(load_testspace(need(data, "source", "input"), "source"), **_guard(run))
    b = testable(load_testspace(need(data, "target", "input"), "target"), **_guard(run))
    r = load_rel({"pairs": need(data, "pairs", "input")}, "input", a.universe, b.universe)
    check = morphism_check(r, a, b)
    _emit(run, check.ok, {"diagnostics": check.diagnostics}, prov)


# ------------------------------------------------------------ comprehension

@main.command("comprehend")
@common
@click.pass_obj
@guarded
def comprehend_cmd(run, input_path):
    """Verify a lax specification and build its comprehension category."""
    data, prov = _load(input_path)
    spec = load_spec(data)
    rep = verify_lax(spec)
    det = {"coherence": rep.to_json()}
    if rep:
        total, _ = build_comprehension(spec, rep)
        det["objects"] = len(total.objects)
        det["arrows"] = len(total.arrows)
        det["spec_roundtrip"] = spec_roundtrip(spec).passed
    _emit(run, rep.passed, det, prov)


@main.command("roundtrip")
@common
@click.pass_obj
@guarded
def roundtrip_cmd(run, input_path):
    """Functor -> specification -> comprehension, compared with the functor."""
    data, prov = _load(input_path)
    rep = roundtrip_check(load_functor(data))
    _emit(run, rep.passed, rep.to_json(), prov)


# ------------------------------------------------------------ Hilbert side

def _hilb(data, run, where):
    u = load_raydict(need(data, "universe", where), where + ".universe")
    alpha = load_alpha(u, need(data, "alpha", where), where + ".alpha")
    return u, alpha, float(need(data, "c", where))


@main.command("hilb-testable")
@common
@click.pass_obj
@guarded
def hilb_testable_cmd(run, input_path):
    """{"universe": raydict, "alpha": [labels], "c": number}."""
    data, prov = _load(input_path)
    u, alpha, c = _hilb(data, run, "input")
    cert = fhilb.is_hilb_testable(alpha, c, u, run.tol)
    _emit(run, cert.ok, {"universe": u.name, "reason": cert.reason,
                         "complement": [u.labels[i] for i in cert.complement],
                         "double_complement": [u.labels[i] for i in cert.double_complement]},
          prov)


@main.command("hilb-morphism")
@common
@click.pass_obj
@guarded
def hilb_morphism_cmd(run, input_path):
    """{"source": hilb testable, "target": hilb testable, "map": matrix}."""
    data, prov = _load(input_path)
    a = fhilb.hilb_testable(*_hilb(need(data, "source", "input"), run, "source"), tol=run.tol)
    b = fhilb.hilb_testable(*_hilb(need(data, "target", "input"), run, "target"), tol=run.tol)
    f = load_matrix(need(data, "map", "input"), "map")
    check = fhilb.hilb_testable_morphism_check(f, a, b, run.tol)
    _emit(run, check.ok, {"diagnostics": check.diagnostics}, prov)


@main.command("measure-check")
@common
@click.pass_obj
@guarded
def measure_cmd(run, input_path):
    """Measure axioms on a sample; the measure is a table or a density matrix.

    {"sample": {...}, "measure": {id: value}} or {"sample": {...}, "rho": matrix};
    with "map", "target" and "target_rho"/"target_measure" also checks preservation.
    """
    data, prov = _load(input_path)
    sample = load_sample(need(data, "sample", "input"))
    mu = _measure(data, sample, "rho", "measure")
    rep = qprob.check_measure_axioms(mu, sample, run.tol)
    det = {"axioms": rep.violations,
           "measure": {k: qprob.clamp(v) for k, v in sorted(mu.items())}}
    ok = rep.passed
    if "map" in data:
        target = load_sample(need(data, "target", "input"), "target")
        nu = _measure(data, target, "target_rho", "target_measure")
        f = load_matrix(data["map"], "map")
        pres = qprob.measure_morphism_check(f, mu, sample, nu, target, run.tol)
        det["preservation"] = pres.violations
        ok = ok and pres.passed
    _emit(run, ok, det, prov)


def _measure(data, sample, rho_key, table_key):
    if rho_key in data:
        return qprob.measure_table(load_density(data[rho_key], rho_key), sample)
    table = need(data, table_key, "input")
    if not isinstance(table, dict):
        raise SchemaError(f"{table_key}: expected an object of subspace id -> value")
    return {k: float(v) for k, v in table.items()}


# ------------------------------------------------------------ multitestables and laws

def _multi(d, run, where):
    sp = load_testspace(d, where)
    omega = {to_elem(x): w for x, w in need(d, "omega", where)}
    return multitest.MultiTestable(testable(sp, **_guard(run)), omega)


@main.command("multi-check")
@common
@click.pass_obj
@guarded
def multi_cmd(run, input_path):
    """{"source", "target": multitestable, "r", "R", "Rbot": pair lists}."""
    data, prov = _load(input_path)
    A = _multi(need(data, "source", "input"), run, "source")
    B = _multi(need(data, "target", "input"), run, "target")
    r = load_rel({"pairs": need(data, "r", "input")}, "r", A.universe, B.universe)
    R = load_rel({"pairs": need(data, "R", "input")}, "R",
                 multitest.etale(A), multitest.etale(B))
    Rbot = load_rel({"pairs": need(data, "Rbot", "input")}, "Rbot",
                    multitest.etale_bot(B), multitest.etale_bot(A))
    check = multitest.multimorphism_check(multitest.MultiMorphism(r, R, Rbot), A, B)
    _emit(run, check.ok, {"diagnostics": check.diagnostics,
                          "etale_sizes": [len(multitest.etale(A)), len(multitest.etale(B))]},
          prov)


@main.command("axioms")
@common
@click.pass_obj
@guarded
def axioms_cmd(run, input_path):
    """Laws on a carrier: {"carrier": [...], "nabla": [[[x, y], z], ...]} (optional "eps")."""
    data, prov = _load(input_path)
    x = load_set(need(data, "carrier", "input"), "carrier")
    det, ok = {}, True
    if "nabla" in data:
        nabla = load_rel({"pairs": data["nabla"]}, "nabla", product_set(x, x), x)
        rep = axioms.check_frobenius(axioms.AlgebraData(x, nabla))
        det["frobenius"] = rep.to_json()
        ok = ok and rep.passed
    d = axioms.diagonal_duality(x)
    if "eps" in data:
        eps = load_rel({"pairs": data["eps"]}, "eps", product_set(x, x), UNIT)
        d = axioms.DualityData(x, d.eta, eps)
    rep = axioms.check_compact_adjunction(d)
    det["compact"] = rep.to_json()
    ok = ok and rep.passed
    _emit(run, ok, det, prov)


@main.command("suite")
@click.option("--only", type=int, multiple=True, help="Run only these criterion numbers.")
@click.pass_obj
@guarded
def suite_cmd(run, only):
    """Run the full acceptance battery."""
    bad = [i for i in only if i not in suite.SECTIONS]
    if bad:
        raise SchemaError(f"--only: no criterion numbered {bad[0]}")
    rep = suite.run_suite(seed=run.seed, tol=run.tol, guard=run.guard, jobs=run.jobs,
                          only=only or None)
    _emit(run, rep["pass"], {"criteria": rep["criteria"]})


if __name__ == "__main__":  # pragma: no cover
    main()
