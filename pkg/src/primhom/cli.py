"""Command line front end.

Exit codes: 0 all assertions passed, 1 a mathematical assertion failed,
2 usage or input error, 3 state budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .characters import CharacterTable, character_table, load_table, save_table, table_to_json
from .errors import (
    BadParameters, InvariantViolation, NotAPGroup, NotAnAutomorphism, OrthogonalityError,
    PrimHomError, SchemaError, StateBudgetExceeded,
)
from .groups import FiniteGroup, Homomorphism, element_from_label, group_from_spec
from .schemas import validate_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("prim-images", "kernel-primitive", "irrpr", "chartable", "chevalley-weil", "prim-homology",
            "quotient-check", "scc-images", "irrscc", "torus-example", "gamma-example", "sphere-search")


@dataclass
class RunConfig:
    command: str
    hom: str | None = None
    group: str | None = None
    table: str = "auto"
    preset: str | None = None
    state_budget: int | None = None
    word_budget: int = 16
    format: str = "json"
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise BadParameters(f"unknown command {self.command!r}")
        if self.state_budget is not None and self.state_budget <= 0:
            raise BadParameters("--budget must be positive")
        if self.word_budget < 0:
            raise BadParameters("--word-budget must be nonnegative")
        if self.format not in ("json", "text"):
            raise BadParameters("--format is json or text")


# --------------------------------------------------------------------------
# inputs

def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not JSON ({exc})") from exc


def load_group(ref, base: Path | None = None) -> FiniteGroup:
    if isinstance(ref, dict):
        return group_from_spec(ref)
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    return group_from_spec(_read_json(path))


def load_hom(path) -> Homomorphism:
    obj = _read_json(path)
    if not isinstance(obj, dict) or "group" not in obj or "images" not in obj:
        raise SchemaError("hom spec needs 'group' and 'images'")
    G = load_group(obj["group"], Path(path).parent)
    images = [element_from_label(G, x) for x in obj["images"]]
    if "rank" in obj and int(obj["rank"]) != len(images):
        raise SchemaError(f"rank {obj['rank']} does not match {len(images)} images")
    return Homomorphism(G, images)


def cache_dir() -> Path:
    return Path(os.environ.get("PRIMHOM_CACHE", Path.home() / ".cache" / "primhom"))


def get_table(G: FiniteGroup, how: str = "auto") -> CharacterTable:
    if how != "auto":
        return load_table(how, G)
    path = cache_dir() / f"{G.table_hash}.json"
    if path.exists():
        try:
            return load_table(path, G)
        except (SchemaError, OrthogonalityError):
            pass
    T = character_table(G)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_table(T, path)
    except OSError:
        pass
    return T


# --------------------------------------------------------------------------
# commands; each returns (report dict, ok)

def _labels(G, xs):
    return [G.label(int(x)) for x in sorted(xs)]


def cmd_prim_images(cfg: RunConfig):
    from .orbits import primitive_image_set

    phi = load_hom(cfg.hom)
    res = primitive_image_set(phi, budget=cfg.state_budget)
    G = phi.target
    return {
        "images": sorted(res.images), "image_labels": _labels(G, res.images),
        "kernel_primitive": res.kernel_primitive,
        "witnesses": {str(g): str(w) for g, w in sorted(res.witnesses.items())},
        "visited": res.visited, "depth": res.depth,
        "component_has_redundant": res.component_has_redundant,
    }, res.component_has_redundant == res.kernel_primitive


def cmd_kernel_primitive(cfg: RunConfig):
    from .orbits import has_primitive_in_kernel

    phi = load_hom(cfg.hom)
    found, w = has_primitive_in_kernel(phi, budget=cfg.state_budget)
    return {"kernel_primitive": found, "witness": str(w) if w is not None else None}, True


def cmd_irrpr(cfg: RunConfig):
    from .orbits import irrpr_set

    phi = load_hom(cfg.hom)
    T = get_table(phi.target, cfg.table)
    rows = sorted(irrpr_set(phi, T))
    return {"irrpr_rows": rows, "missing_rows": [i for i in range(len(T)) if i not in rows],
            "dims": T.dims, "num_irr": len(T)}, True


def cmd_chartable(cfg: RunConfig):
    if cfg.group is None and cfg.hom is None:
        raise BadParameters("chartable needs --group or --hom")
    G = load_group(cfg.group) if cfg.group else load_hom(cfg.hom).target
    T = get_table(G, cfg.table)
    if cfg.out:
        save_table(T, cfg.out)
    obj = table_to_json(T)
    obj["dims"] = T.dims
    return obj, True


def cmd_chevalley_weil(cfg: RunConfig):
    from .covers import build_cover, homology_action

    phi = load_hom(cfg.hom)
    hs = homology_action(build_cover(phi))
    n, N = phi.rank, phi.target.order
    return {"cw_check": True, "dim": hs.dim, "expected_dim": (n - 1) * N + 1,
            "character": hs.character}, True


def cmd_prim_homology(cfg: RunConfig):
    from .covers import primitive_homology_span

    phi = load_hom(cfg.hom)
    T = get_table(phi.target, cfg.table)
    span = primitive_homology_span(phi, T, cfg.word_budget, budget=cfg.state_budget)
    return span.report(), True


def cmd_quotient_check(cfg: RunConfig):
    from .covers import homology, quotient_fixed_check

    phi = load_hom(cfg.hom)
    hs = homology(phi, check=False)
    G = phi.target
    label = cfg.extra.get("element")
    if label is not None and label.lstrip("-").isdigit():
        label = int(label)
    elems = [element_from_label(G, label)] if label is not None else range(G.order)
    rows = []
    ok = True
    for g in elems:
        try:
            r = quotient_fixed_check(phi, g, hs)
        except InvariantViolation as exc:
            r, ok = exc.report, False
        rows.append({"element": r.element, "fixed_dim": r.fixed_dim, "quotient_rank": r.quotient_rank})
    return {"checks": rows, "all_equal": ok}, ok


def _preset(cfg):
    from .surfaces import load_preset, sigma12_preset

    return load_preset(cfg.preset) if cfg.preset else sigma12_preset()


def cmd_scc_images(cfg: RunConfig):
    from .surfaces import scc_image_set

    phi = load_hom(cfg.hom)
    imgs = scc_image_set(phi, _preset(cfg), budget=cfg.state_budget)
    return {"scc_images": sorted(imgs), "image_labels": _labels(phi.target, imgs),
            "identity_is_scc_image": 0 in imgs}, True


def cmd_irrscc(cfg: RunConfig):
    from .surfaces import irrscc_set

    phi = load_hom(cfg.hom)
    T = get_table(phi.target, cfg.table)
    rep = irrscc_set(phi, T, _preset(cfg))
    out = rep.to_json()
    out["num_irr"] = len(T)
    out["missing_rows"] = [i for i in range(len(T)) if i not in rep.rows]
    return out, True


def cmd_torus_example(cfg: RunConfig):
    from .verifiers import torus_cover_verify

    reports = [torus_cover_verify(p) for p in cfg.extra.get("primes") or (3, 5)]
    return {"ok": all(r["ok"] for r in reports), "reports": reports}, all(r["ok"] for r in reports)


def cmd_gamma_example(cfg: RunConfig):
    from .verifiers import gamma_example_verify

    rep = gamma_example_verify()
    return rep, rep["ok"]


def cmd_sphere_search(cfg: RunConfig):
    from .verifiers import sphere_catalog_search

    rep = sphere_catalog_search(cfg.extra.get("max_order", 48), cfg.extra.get("rank", 3),
                                budget=cfg.state_budget)
    return rep, rep["ok"]


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


# --------------------------------------------------------------------------
# output

def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=1) + "\n"
    lines = []
    for k in sorted(report):
        lines.append(f"{k}: {json.dumps(report[k], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="primhom", description="Primitive images and primitive homology of graph covers.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, hom=True, table=False, words=False, preset=False):
        if hom:
            p.add_argument("--hom", required=True, help="homomorphism spec (JSON)")
        if table:
            p.add_argument("--table", default="auto", help="'auto' or a character table file")
        if words:
            p.add_argument("--word-budget", type=int, default=16, help="maximum Nielsen move depth")
        if preset:
            p.add_argument("--preset", help="surface preset (JSON); default: twice-punctured torus")
        p.add_argument("--budget", type=int, help="state budget (default 1e8 or $PHL_STATE_BUDGET)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", help="write the report (chartable: the table) to this path")

    common(sub.add_parser("prim-images", help="images of primitive elements"))
    common(sub.add_parser("kernel-primitive", help="is some primitive in the kernel"))
    common(sub.add_parser("irrpr", help="irreducibles fixed by some primitive image"), table=True)
    p = sub.add_parser("chartable", help="compute or load a character table")
    p.add_argument("--group")
    p.add_argument("--hom")
    common(p, hom=False, table=True)
    common(sub.add_parser("chevalley-weil", help="check H_1 = C[G]^(n-1) + C"))
    common(sub.add_parser("prim-homology", help="bracket the primitive homology"), table=True, words=True)
    p = sub.add_parser("quotient-check", help="fixed vectors versus quotient cover homology")
    p.add_argument("--element", help="element index or label (default: all)")
    common(p)
    common(sub.add_parser("scc-images", help="images of simple closed curves"), preset=True)
    common(sub.add_parser("irrscc", help="irreducibles fixed by some scc image"), table=True, preset=True)
    p = sub.add_parser("torus-example", help="torus homology cover case analysis")
    p.add_argument("--p", type=int, action="append", dest="primes")
    common(p, hom=False)
    common(sub.add_parser("gamma-example", help="order-32 nilpotent example"), hom=False)
    p = sub.add_parser("sphere-search", help="metacyclic sphere groups sweep")
    p.add_argument("--max-order", type=int, default=48)
    p.add_argument("--rank", type=int, default=3)
    common(p, hom=False)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    extra = {k: getattr(ns, k) for k in ("element", "primes", "max_order", "rank") if hasattr(ns, k)}
    return RunConfig(
        command=ns.command, hom=getattr(ns, "hom", None), group=getattr(ns, "group", None),
        table=getattr(ns, "table", "auto"), preset=getattr(ns, "preset", None),
        state_budget=ns.budget, word_budget=getattr(ns, "word_budget", 16),
        format=ns.format, out=ns.out, extra=extra)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        report, ok = HANDLERS[cfg.command](cfg)
    except StateBudgetExceeded as exc:
        print(render({"error": "state budget exceeded", "detail": str(exc), "visited": exc.visited}, "json"),
              file=sys.stderr, end="")
        return EXIT_BUDGET
    except InvariantViolation as exc:
        body = {"error": type(exc).__name__, "detail": str(exc)}
        if isinstance(exc.report, dict):
            body["report"] = exc.report
        stdout.write(render(body, ns.format))
        return EXIT_FAIL
    except (SchemaError, BadParameters, NotAPGroup, NotAnAutomorphism, OrthogonalityError,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrimHomError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        validate_report(cfg.command, report)
    except SchemaError as exc:
        print(f"error: report failed its schema: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = render(report, cfg.format)
    if cfg.out and cfg.command != "chartable":
        Path(cfg.out).write_text(text)
    stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
