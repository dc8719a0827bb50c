"""Sweep metacyclic sphere groups: does every generating n-tuple reach a
primitive in the kernel?

    python3 scripts/sphere_sweep.py --max-order 200 --rank 3
    python3 scripts/sphere_sweep.py --max-order 1000 --rank 3 --out sweep.json   # hours
"""

import argparse
import json
import sys
import time

from primhom.verifiers import sphere_catalog, sphere_catalog_search


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-order", type=int, default=200)
    ap.add_argument("--rank", type=int, default=3)
    ap.add_argument("--budget", type=int, help="state budget per tuple")
    ap.add_argument("--out", help="write the full report here")
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args()

    catalog = sphere_catalog(args.max_order)
    t0 = time.time()
    print(f"{len(catalog)} groups of order <= {args.max_order}", file=sys.stderr)
    entries = []

    def progress(e):
        entries.append(e.to_json())
        if not args.quiet:
            flag = "ok" if e.verdict else f"COUNTEREXAMPLES {e.num_counterexamples}"
            print(f"[{time.time() - t0:8.1f}s] {e.name:>18} |G|={e.order:<5} tuples={e.tuples:<10} "
                  f"searched={e.searched:<6} {flag}", file=sys.stderr)

    rep = sphere_catalog_search(args.max_order, args.rank, budget=args.budget, groups=catalog, progress=progress)
    rep["entries"] = entries
    text = json.dumps(rep, indent=1, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(json.dumps({k: rep[k] for k in ("all_kernel_primitive", "groups", "tuples", "searched", "seconds")}))
    sys.exit(0 if rep["ok"] else 1)


if __name__ == "__main__":
    main()
