"""JSON codecs for every model type the command line reads or writes.

Element identifiers are ints, strings or nested lists (read back as tuples).
Complex numbers are ``[re, im]`` pairs and matrices are row-major.
"""

import hashlib
import json
from pathlib import Path

import numpy as np

from .comprehension import FinCategory, FinFunctor, LaxSpec
from .errors import CQMError, SchemaError
from .finrel import FinRel, FinSet, SetSpan, canon, canon_family, elem_key
from .fhilb import RayDict, Subspace, span
from .qprob import DensityMatrix, MeasureSample
from .testspace import TestSpace

SCHEMA = "cqm/1"


def to_elem(x):
    """JSON value -> element identifier."""
    if isinstance(x, list):
        return tuple(to_elem(y) for y in x)
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError(f"invalid element identifier {x!r}")
    return x


def from_elem(x):
    if isinstance(x, tuple):
        return [from_elem(y) for y in x]
    if isinstance(x, frozenset):
        return [from_elem(y) for y in canon(x)]
    return x


def jsonable(obj):
    """Plain JSON image of nested report data, with sets sorted."""
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return [jsonable(x) for x in sorted(obj, key=lambda y: elem_key(_tup(y)))]
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _tup(x):
    if isinstance(x, (frozenset, set)):
        return tuple(sorted((_tup(y) for y in x), key=elem_key))
    if isinstance(x, (list, tuple)):
        return tuple(_tup(y) for y in x)
    return x


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


def need(d, key, where):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(f"{where}: missing field {key!r}")
    return d[key]


# ------------------------------------------------------------ sets, relations, tests

def load_set(v, where="set"):
    if isinstance(v, dict):
        return FinSet([to_elem(x) for x in need(v, "elements", where)], name=v.get("name", ""))
    if not isinstance(v, list):
        raise SchemaError(f"{where}: expected a list of elements")
    try:
        return FinSet([to_elem(x) for x in v])
    except CQMError as e:
        raise SchemaError(f"{where}: {e}") from None


def dump_set(s):
    return [from_elem(x) for x in s]


def load_rel(d, where="relation", dom=None, cod=None):
    dom = dom or load_set(need(d, "dom", where), where + ".dom")
    cod = cod or load_set(need(d, "cod", where), where + ".cod")
    pairs = need(d, "pairs", where)
    try:
        return FinRel(dom, cod, ((to_elem(p[0]), to_elem(p[1])) for p in pairs))
    except (CQMError, IndexError, TypeError) as e:
        raise SchemaError(f"{where}: {e}") from None


def dump_rel(r):
    return {"dom": dump_set(r.dom), "cod": dump_set(r.cod),
            "pairs": [[from_elem(x), from_elem(y)] for x, y in r.sorted_pairs()]}


def load_family(v, where="tests"):
    if not isinstance(v, list) or not all(isinstance(t, list) for t in v):
        raise SchemaError(f"{where}: expected a list of lists")
    return [[to_elem(x) for x in t] for t in v]


def dump_family(f):
    return [[from_elem(x) for x in t] for t in canon_family(f)]


def load_testspace(d, where="testspace", validate=True):
    u = load_set(need(d, "universe", where), where + ".universe")
    tests = load_family(need(d, "tests", where), where + ".tests")
    try:
        return TestSpace(u, tests, validate=validate)
    except CQMError as e:
        raise SchemaError(f"{where}: {e}") from None


def dump_testspace(s):
    return {"universe": dump_set(s.universe), "tests": dump_family(s.tests)}


# ------------------------------------------------------------ complex data

def load_complex_vector(v, where="vector"):
    try:
        arr = np.array(v, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{where}: expected [re, im] pairs") from None
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise SchemaError(f"{where}: expected a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def load_matrix(v, where="matrix"):
    if not isinstance(v, list) or not v:
        raise SchemaError(f"{where}: expected a nonempty list of rows")
    rows = [load_complex_vector(r, f"{where}[{i}]") for i, r in enumerate(v)]
    if len({len(r) for r in rows}) != 1:
        raise SchemaError(f"{where}: ragged rows")
    m = np.array(rows)
    if not np.all(np.isfinite(m)):
        raise SchemaError(f"{where}: non-finite entries")
    return m


def dump_vector(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex).ravel()]


def dump_matrix(m):
    return [dump_vector(row) for row in np.atleast_2d(m)]


def load_raydict(d, where="universe"):
    rays = [load_complex_vector(r, f"{where}.rays[{i}]")
            for i, r in enumerate(need(d, "rays", where))]
    try:
        return RayDict(rays, name=d.get("name", ""), labels=d.get("labels"))
    except (CQMError, ValueError) as e:
        raise SchemaError(f"{where}: {e}") from None


def dump_raydict(u):
    return {"name": u.name, "labels": list(u.labels),
            "rays": [dump_vector(r) for r in u.rays]}


def load_alpha(u, labels, where="alpha"):
    missing = [x for x in labels if x not in u.labels]
    if missing:
        raise SchemaError(f"{where}: unknown ray label {missing[0]!r}")
    return u.indices(labels)


def load_subspace(v, dim, where="subspace"):
    """A subspace given by spanning vectors (possibly none)."""
    vecs = [load_complex_vector(x, f"{where}[{i}]") for i, x in enumerate(v)]
    if any(len(x) != dim for x in vecs):
        raise SchemaError(f"{where}: vectors must have dimension {dim}")
    return span(vecs, dim=dim) if vecs else Subspace(np.zeros((dim, 0), dtype=complex))


def load_density(v, where="rho"):
    try:
        return DensityMatrix(load_matrix(v, where))
    except CQMError as e:
        raise SchemaError(f"{where}: {e}") from None


def load_sample(d, where="sample"):
    dim = need(d, "dim", where)
    subs = {k: load_subspace(v, dim, f"{where}.subspaces.{k}")
            for k, v in need(d, "subspaces", where).items()}
    try:
        return MeasureSample(dim, subs, [tuple(p) for p in d.get("pairs", [])])
    except CQMError as e:
        raise SchemaError(f"{where}: {e}") from None


# ------------------------------------------------------------ categories and specs

def load_category(d, where="category"):
    objects = [to_elem(x) for x in need(d, "objects", where)]
    arrows = {to_elem(a): (to_elem(s), to_elem(t)) for a, s, t in need(d, "arrows", where)}
    identity = {to_elem(o): to_elem(a) for o, a in need(d, "identity", where)}
    comp = {(to_elem(f), to_elem(g)): to_elem(h) for f, g, h in need(d, "comp", where)}
    try:
        return FinCategory(objects, arrows, identity, comp)
    except CQMError as e:
        raise SchemaError(f"{where}: {e}") from None


def dump_category(c):
    return {"objects": [from_elem(o) for o in canon(c.objects)],
            "arrows": [[from_elem(a), from_elem(s), from_elem(t)]
                       for a, (s, t) in sorted(c.arrows.items(), key=lambda kv: elem_key(kv[0]))],
            "identity": [[from_elem(o), from_elem(a)]
                         for o, a in sorted(c.identity.items(), key=lambda kv: elem_key(kv[0]))],
            "comp": [[from_elem(f), from_elem(g), from_elem(h)]
                     for (f, g), h in sorted(c.comp.items(), key=lambda kv: elem_key(kv[0]))]}


def load_functor(d, where="functor"):
    dom = load_category(need(d, "dom", where), where + ".dom")
    cod = load_category(need(d, "cod", where), where + ".cod")
    obmap = {to_elem(a): to_elem(b) for a, b in need(d, "obmap", where)}
    armap = {to_elem(a): to_elem(b) for a, b in need(d, "armap", where)}
    try:
        return FinFunctor(dom, cod, obmap, armap)
    except CQMError as e:
        raise SchemaError(f"{where}: {e}") from None


def dump_functor(F):
    return {"dom": dump_category(F.dom), "cod": dump_category(F.cod),
            "obmap": [[from_elem(a), from_elem(b)]
                      for a, b in sorted(F.obmap.items(), key=lambda kv: elem_key(kv[0]))],
            "armap": [[from_elem(a), from_elem(b)]
                      for a, b in sorted(F.armap.items(), key=lambda kv: elem_key(kv[0]))]}


def load_spec(d, where="spec"):
    base = load_category(need(d, "base", where), where + ".base")
    obmap = {to_elem(a): FinSet([to_elem(x) for x in xs]) for a, xs in need(d, "fibers", where)}
    armap = {}
    for f, entries in need(d, "spans", where):
        f = to_elem(f)
        dom, cod = base.arrows.get(f, (None, None))
        if dom not in obmap or cod not in obmap:
            raise SchemaError(f"{where}: span for unknown arrow {f!r}")
        try:
            armap[f] = SetSpan(obmap[dom], obmap[cod],
                               {(to_elem(a), to_elem(b)): {to_elem(c) for c in cells}
                                for a, b, cells in entries})
        except CQMError as e:
            raise SchemaError(f"{where}: span of {f!r}: {e}") from None
    mu = {tuple(to_elem(x) for x in row[:4]): to_elem(row[4]) for row in need(d, "mu", where)}
    eta = {(to_elem(a), to_elem(al)): to_elem(c) for a, al, c in need(d, "eta", where)}
    try:
        return LaxSpec(base, obmap, armap, mu, eta)
    except CQMError as e:
        raise SchemaError(f"{where}: {e}") from None


def dump_spec(s):
    k = lambda kv: elem_key(kv[0])  # noqa: E731
    return {"base": dump_category(s.base),
            "fibers": [[from_elem(a), dump_set(x)] for a, x in sorted(s.obmap.items(), key=k)],
            "spans": [[from_elem(f), [[from_elem(a), from_elem(b),
                                       [from_elem(c) for c in canon(cells)]]
                                      for (a, b), cells in sp.entries]]
                      for f, sp in sorted(s.armap.items(), key=k)],
            "mu": [[from_elem(x) for x in key] + [from_elem(v)]
                   for key, v in sorted(s.mu.items(), key=k)],
            "eta": [[from_elem(a), from_elem(al), from_elem(c)]
                    for (a, al), c in sorted(s.eta.items(), key=k)]}


# ------------------------------------------------------------ files

def read_json(path):
    """Parsed JSON plus provenance (path and sha256 of the bytes)."""
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}") from None
    if isinstance(data, dict) and data.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"{path}: unsupported schema {data.get('schema')!r}")
    return data, {"path": str(path), "sha256": hashlib.sha256(raw).hexdigest()}
