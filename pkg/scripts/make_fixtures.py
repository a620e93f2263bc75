"""Regenerate the bundled JSON fixtures under src/cqm/fixtures."""

from pathlib import Path

import numpy as np

from cqm import fhilb, multitest, qprob
from cqm.corpus import chain_mutant, chain_spec, random_functor, rng_for
from cqm.finrel import FinSet
from cqm.io import (SCHEMA, dump_functor, dump_matrix, dump_raydict, dump_spec, dump_vector,
                    dumps, from_elem)
from cqm.testspace import testable

OUT = Path(__file__).resolve().parent.parent / "src" / "cqm" / "fixtures"
S = 1 / np.sqrt(2)


def write(name, data):
    data = {"schema": SCHEMA, **data}
    (OUT / name).write_text(dumps(data))


def space(u, tests):
    return {"universe": u, "tests": tests}


def main():
    OUT.mkdir(exist_ok=True)
    write("partition_example.json", space([0, 1, 2, 3], [[0, 1], [2, 3]]))
    write("path_cliques.json", space([0, 1, 2], [[0, 1], [1, 2]]))
    write("bell.json", {"left": space([0, 1], [[0, 1]]), "right": space([0, 1], [[0], [1]]),
                        "product": "par"})
    write("bell_tensor.json", {"left": space([0, 1], [[0, 1]]),
                               "right": space([0, 1], [[0], [1]]), "product": "tensor"})
    write("swap_morphism.json", {"source": space([0, 1], [[0], [1]]),
                                 "target": space([0, 1], [[0], [1]]),
                                 "pairs": [[0, 1], [1, 0]]})

    pauli = fhilb.pauli_dict()
    write("pauli6.json", {"universe": dump_raydict(pauli), "alpha": ["z0", "z1"], "c": S})
    write("pauli18.json", {"universe": dump_raydict(fhilb.pauli18()),
                           "alpha": ["z0z0", "z0z1", "z1z0", "z1z1"], "c": 0.5})
    write("mub3.json", {"universe": dump_raydict(fhilb.mub3()),
                        "alpha": ["b0_0", "b0_1", "b0_2"], "c": 1 / np.sqrt(3)})
    z = {"universe": dump_raydict(pauli), "alpha": ["z0", "z1"], "c": S}
    write("hadamard_morphism.json", {"source": z, "target": z,
                                     "map": dump_matrix(np.array([[S, S], [S, -S]]))})
    write("phase_flip_morphism.json", {"source": z, "target": z,
                                       "map": dump_matrix(np.diag([1, -1]))})

    rng = np.random.default_rng(3)
    sample = qprob.random_sample(rng, 3, 12)
    subs = {k: [dump_vector(c) for c in s.basis.T] for k, s in sample.subspaces.items()}
    samp = {"dim": 3, "subspaces": subs, "pairs": [list(p) for p in sample.pairs]}
    rho = qprob.random_density(rng, 3)
    write("born_measure.json", {"sample": samp, "rho": dump_matrix(rho.rho)})
    table = qprob.measure_table(rho, sample)
    key = sorted(k for k in table if k not in ("0", "H"))[0]
    table[key] += 1e-3
    write("perturbed_measure.json", {"sample": samp, "measure": table})

    def alg(n, op):
        return {"carrier": list(range(n)),
                "nabla": [[[a, b], op(a, b)] for a in range(n) for b in range(n)]}

    write("z2_algebra.json", alg(2, lambda a, b: (a + b) % 2))
    write("z3_algebra.json", alg(3, lambda a, b: (a + b) % 3))
    write("first_projection.json", alg(2, lambda a, b: a))

    write("lax_chain_z2.json", dump_spec(chain_spec("Z2")))
    mutant, key = chain_mutant(rng_for(11))
    write("lax_defect.json", {**dump_spec(mutant), "mutated_mu": [from_elem(k) for k in key]})
    write("functor.json", dump_functor(random_functor(rng_for(5))))

    a = testable(FinSet([0, 1, 2]), [[0, 1], [1, 2]])
    A = multitest.MultiTestable(a, {0: 1, 1: 2, 2: 1})
    m = multitest.identity_multimorphism(A)
    src = {"universe": [0, 1, 2], "tests": [[0, 1], [1, 2]], "omega": [[0, 1], [1, 2], [2, 1]]}
    pairs = lambda r: [[from_elem(x), from_elem(y)] for x, y in r.sorted_pairs()]  # noqa: E731
    write("multi_identity.json", {"source": src, "target": src, "r": pairs(m.r),
                                  "R": pairs(m.R), "Rbot": pairs(m.Rbot)})


if __name__ == "__main__":
    main()
