"""Run the worked examples and print a one-line verdict for each."""

import time

from primhom.characters import character_table
from primhom.covers import primitive_homology_span
from primhom.groups import Homomorphism, cyclic_group, metacyclic_group
from primhom.orbits import has_primitive_in_kernel, irrpr_set, primitive_image_set
from primhom.surfaces import sigma12_example_check
from primhom.verifiers import gamma_example_verify, torus_cover_verify
from primhom.words import format_word


def z6():
    phi = Homomorphism(cyclic_group(6), [2, 3])
    found, w = has_primitive_in_kernel(phi)
    return found, f"witness {format_word(w)}"


def order24():
    G = metacyclic_group(3, 8, 2)
    phi = Homomorphism(G, G.gen_indices)
    res = primitive_image_set(phi)
    T = character_table(G)
    irr = irrpr_set(phi, T, res.images)
    span = primitive_homology_span(phi, T, word_budget=16)
    ok = 0 not in res.images and len(irr) < len(T)
    return ok, f"{len(res.images)} primitive images, Irrpr {len(irr)}/{len(T)}, span rank {span.rank}/25"


def gamma():
    rep = gamma_example_verify()
    return rep["ok"], f"rho row {rep['rho_row']} outside Irrpr {rep['irrpr_rows']}"


def torus():
    reps = [torus_cover_verify(p) for p in (3, 5)]
    return all(r["ok"] for r in reps), ", ".join(f"p={r['p']}: {r['counts']['orbit_condition']} vectors" for r in reps)


def sigma12():
    rep = sigma12_example_check()
    return rep["ok"], f"|G|={rep['order']}, Irrscc {len(rep['irrscc_rows'])}/{rep['num_irr']}"


if __name__ == "__main__":
    for name, f in [("Z/6", z6), ("order 24", order24), ("order 32", gamma), ("torus cover", torus),
                    ("twice-punctured torus", sigma12)]:
        t0 = time.time()
        ok, msg = f()
        print(f"{'ok  ' if ok else 'FAIL'} {name:<22} {msg}  ({time.time() - t0:.2f} s)")
