"""Rank-2 version of the sweep: list the groups with a generating pair that
never reaches a primitive element in the kernel, with sample pairs."""

import argparse

from primhom.groups import Homomorphism
from primhom.orbits import primitive_image_set
from primhom.verifiers import sphere_catalog, sphere_catalog_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=48)
    args = ap.parse_args()
    catalog = dict(sphere_catalog(args.max_order))
    rep = sphere_catalog_search(args.max_order, 2, groups=list(catalog.items()))
    print(f"{rep['groups']} groups, {rep['searched']} pairs searched in {rep['seconds']} s")
    for name, pairs in rep["counterexamples"].items():
        G = catalog[name]
        x, y = pairs[0]
        res = primitive_image_set(Homomorphism(G, [x, y]), track_words=False)
        print(f"{name:>18}  |G|={G.order:<4} bad pairs={rep['num_counterexamples'][name]:<5} "
              f"e.g. ({G.label(x)}, {G.label(y)}): {len(res.images)} primitive images")


if __name__ == "__main__":
    main()
