"""Command-line front end: triple tables, dimension reports, teacher
explanations and per-graph verification runs.

Identical inputs (including seeds) produce byte-identical output; every
table header echoes the parameters that generated it.  The env var
TEACHDIM_BUDGET overrides the default enumeration budgets.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import graphs as G
from .checks import check_graph
from .concepts import format_concept, read_class
from .connected import (
    build_con_class,
    con_superset_teacher,
    con_tree_teacher,
    con_vcd_matching_teacher,
)
from .dimensions import rtd, sauer_bound, sauer_rtd_implication, td_of, vcd
from .errors import BudgetExceededError, TeacherPreconditionError
from .families import FamilySpec
from .graphs import read_graph
from .stars import build_star_class, star_subset_teacher, star_special_teacher
from .teaching import format_teacher, plan_to_teacher


def _star_plan_teacher(g):
    cc = build_star_class(g)
    return plan_to_teacher(rtd(cc), cc)


def _con_plan_teacher(g):
    cc = build_con_class(g, include_empty=True)
    return plan_to_teacher(rtd(cc), cc)


TEACHERS = {
    "star-subset": (star_subset_teacher, "star"),
    "star-special": (star_special_teacher, "star"),
    "star-plan": (_star_plan_teacher, "star"),
    "con-tree": (con_tree_teacher, "con"),
    "con-superset": (con_superset_teacher, "con"),
    "con-vcd-matching": (con_vcd_matching_teacher, "con"),
    "con-plan": (_con_plan_teacher, "con"),
}


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    n = int(text)
    return n, n


def _family_spec(args) -> FamilySpec:
    lo, hi = _parse_range(args.n) if args.n else (0, 0)
    return FamilySpec(args.family, lo, hi, p=args.p, seed=args.seed,
                      path=args.graph_file)


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("TEACHDIM_BUDGET")
    if env is not None:
        return int(env)
    return G.DEFAULT_ENUM_BUDGET


def _params_line(args, fields) -> str:
    parts = [f"{k}={getattr(args, k)}" for k in fields if getattr(args, k) is not None]
    return " ".join(parts)


def _triple_row(item):
    name, g, kind, include_empty, budget = item
    if kind == "star":
        from .stars import star_triple

        param, r, v = star_triple(g, budget=budget)
    else:
        from .connected import con_triple

        param, r, v = con_triple(g, include_empty, budget=budget)
    strict = ["param<RTD", "RTD<VCD", "VCD<param+1"][
        [param < r, r < v, v < param + 1].index(True)
    ]
    return {"name": name, "n": g.n, "m": g.m, "param": param,
            "rtd": r, "vcd": v, "strict": strict}


def cmd_triples(args) -> int:
    spec = _family_spec(args)
    budget = _budget(args)
    items = [(name, g, args.kind, args.include_empty, budget)
             for name, g in spec.graphs()]
    if args.parallel and len(items) > 1:
        with ProcessPoolExecutor() as pool:
            rows = list(pool.map(_triple_row, items))
    else:
        rows = [_triple_row(item) for item in items]
    header = _params_line(args, ("family", "n", "p", "seed", "kind",
                                 "include_empty", "budget"))
    if args.format == "json":
        print(json.dumps({"params": header, "rows": rows}, indent=2))
    else:
        param_col = "delta" if args.kind == "star" else "ell"
        print(f"# triples {header}")
        print(f"name\tn\tm\t{param_col}\trtd\tvcd\tstrict")
        for r in rows:
            print(f"{r['name']}\t{r['n']}\t{r['m']}\t{r['param']}\t"
                  f"{r['rtd']}\t{r['vcd']}\t{r['strict']}")
    return 0


def _verify_one(item):
    name, g, kind, include_empty = item
    results = check_graph(g, kind, include_empty)
    return name, [(r.name, r.status, r.detail) for r in results]


def cmd_verify(args) -> int:
    spec = _family_spec(args)
    items = [(name, g, args.kind, args.include_empty) for name, g in spec.graphs()]
    if args.parallel and len(items) > 1:
        with ProcessPoolExecutor() as pool:
            reports = list(pool.map(_verify_one, items))
    else:
        reports = [_verify_one(item) for item in items]
    failed = 0
    header = _params_line(args, ("family", "n", "p", "seed", "kind",
                                 "include_empty"))
    if args.format == "json":
        payload = {
            "params": header,
            "graphs": [
                {"name": name,
                 "checks": [{"check": c, "status": s, "detail": d}
                            for c, s, d in checks]}
                for name, checks in reports
            ],
        }
        failed = sum(1 for _, checks in reports
                     for _, s, _ in checks if s == "fail")
        print(json.dumps(payload, indent=2))
    else:
        print(f"# verify {header}")
        for name, checks in reports:
            for check, status, detail in checks:
                mark = {"pass": "PASS", "fail": "FAIL", "na": "SKIP"}[status]
                line = f"{mark}\t{name}\t{check}"
                if detail:
                    line += f"\t{detail}"
                print(line)
                if status == "fail":
                    failed += 1
    return 1 if failed else 0


def _load_graph_for(args):
    if args.graph_file:
        return read_graph(args.graph_file)
    spec = _family_spec(args)
    graphs = spec.graphs()
    if len(graphs) != 1:
        raise SystemExit("teach/dims need exactly one graph; narrow --n")
    return graphs[0][1]


def _parse_concept(g, text: str) -> frozenset[int]:
    names = {g.vertex_name(v): v for v in range(g.n)}
    out = set()
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok in names:
            out.add(names[tok])
        else:
            out.add(int(tok))
    return frozenset(out)


def cmd_teach(args) -> int:
    g = _load_graph_for(args)
    builder, kind = TEACHERS[args.teacher]
    try:
        teacher = builder(g)
    except (TeacherPreconditionError, ValueError) as exc:
        print(f"teacher {args.teacher} unavailable: {exc}", file=sys.stderr)
        return 2
    cc = teacher.concept_class
    concept = _parse_concept(g, args.concept)
    try:
        idx = cc.index_of(concept)
    except KeyError:
        print(f"{sorted(concept)} is not a concept of the {kind} class",
              file=sys.stderr)
        return 2
    sample = teacher.sample_for(idx)
    vs = [i for i in range(len(cc))
          if (cc.concepts[i] & sample.pos) == sample.pos
          and (cc.concepts[i] & sample.neg) == 0]
    print(f"graph: n={g.n} m={g.m}; teacher: {args.teacher}")
    print(f"concept: {g.vertex_names(cc.concepts[idx])} (index {idx})")
    toks = [f"{g.vertex_name(x)}{'+' if lab else '-'}" for x, lab in sample.pairs()]
    print(f"teaching set: {' '.join(toks) if toks else '(empty)'}")
    print("version space:")
    depths = teacher.preference.depths
    for i in vs:
        rel = "target" if i == idx else (
            "less preferred" if teacher.preference.is_preferred(idx, i)
            else "NOT less preferred")
        print(f"  {g.vertex_names(cc.concepts[i])}\tlevel={depths[i]}\t{rel}")
    ok = all(teacher.preference.is_preferred(idx, i) for i in vs if i != idx)
    print("maximality: " + (
        "the concept is the unique most preferred element of its version space"
        if ok else "VIOLATED"))
    if args.explain:
        print("full teacher dump:")
        print(format_teacher(teacher), end="")
    return 0 if ok else 1


def cmd_dims(args) -> int:
    if args.class_file:
        cc = read_class(args.class_file)
        source = f"class file {args.class_file}"
    else:
        if args.kind is None:
            raise SystemExit("dims needs --kind when loading a graph")
        g = _load_graph_for(args)
        budget = _budget(args)
        if args.kind == "star":
            cc = build_star_class(g, budget=budget)
        else:
            cc = build_con_class(g, args.include_empty, budget=budget)
        source = f"{args.kind} class ({'with' if args.include_empty else 'without'} empty)"
    v, witness = vcd(cc)
    cert = rtd(cc)
    tds = [td_of(cc, i)[0] for i in range(len(cc))]
    imp = sauer_rtd_implication(cc)
    if args.format == "json":
        print(json.dumps({
            "source": source,
            "size": len(cc),
            "domain": cc.domain_size,
            "vcd": v,
            "vcd_witness": sorted(witness),
            "rtd": cert.rtd,
            "levels": [{"td": val, "concepts": sorted(lv)}
                       for lv, val in cert.levels],
            "td_min": min(tds),
            "td_max": max(tds),
            "sauer_at_vcd": sauer_bound(cc.domain_size, v),
            "sauer_at_rtd": sauer_bound(cc.domain_size, cert.rtd),
            "sauer_rtd_implication": imp,
        }, indent=2))
        return 0
    print(f"# dims {source}")
    print(f"concepts: {len(cc)} over domain {cc.domain_size}")
    print(f"vcd: {v} witness {sorted(witness)}")
    print(f"rtd: {cert.rtd}")
    for k, (lv, val) in enumerate(cert.levels):
        pats = " ".join(format_concept(cc.concepts[i], cc.domain_size)
                        for i in sorted(lv))
        print(f"  level {k}: td={val} {pats}")
    print(f"td_min: {min(tds)}  td_max: {max(tds)}")
    print(f"sauer bound at vcd: {sauer_bound(cc.domain_size, v)}; "
          f"at rtd: {sauer_bound(cc.domain_size, cert.rtd)}")
    print(f"sauer rtd implication: {imp if imp is not None else 'none'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="teachdim",
        description="Exact teaching and VC dimensions of graph-induced "
                    "concept classes (stars and connected sets).")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, needs_kind=True, kind_required=True):
        p.add_argument("--family", choices=list(
            ("complete", "path", "cycle", "fig1-left", "fig1-right", "fig2",
             "random", "file")), default=None)
        p.add_argument("--n", help="size or inclusive range A..B")
        p.add_argument("--p", type=float, help="edge probability (random family)")
        p.add_argument("--seed", type=int, help="PRNG seed (random family)")
        p.add_argument("--graph-file", help="graph in text format")
        if needs_kind:
            p.add_argument("--kind", choices=("star", "con"),
                           required=kind_required)
            p.add_argument("--include-empty", choices=("true", "false"),
                           default="false",
                           help="empty-set policy for connected-set classes")
        p.add_argument("--budget", type=int, default=None,
                       help="enumeration budget override")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--parallel", action="store_true",
                       help="process graphs in worker processes")

    p_triples = sub.add_parser("triples", help="parameter/RTD/VCD table")
    add_common(p_triples)
    p_triples.set_defaults(func=cmd_triples)

    p_verify = sub.add_parser("verify", help="run per-graph property checks")
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_teach = sub.add_parser("teach", help="explain one teaching set")
    add_common(p_teach, needs_kind=False)
    p_teach.add_argument("--teacher", choices=sorted(TEACHERS), required=True)
    p_teach.add_argument("--concept", required=True,
                         help="comma-separated vertex names or indices")
    p_teach.add_argument("--explain", action="store_true",
                         help="dump the whole teacher")
    p_teach.set_defaults(func=cmd_teach)

    p_dims = sub.add_parser("dims", help="dimension report for one class")
    add_common(p_dims, kind_required=False)
    p_dims.add_argument("--class-file", help="concept class in text format")
    p_dims.set_defaults(func=cmd_dims)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "family", None) is None and not getattr(args, "graph_file", None) \
            and not getattr(args, "class_file", None):
        ap.error("--family, --graph-file or --class-file is required")
    if hasattr(args, "include_empty"):
        args.include_empty = args.include_empty == "true"
    else:
        args.include_empty = False
    if not hasattr(args, "kind"):
        args.kind = None
    if args.family is None and getattr(args, "graph_file", None):
        args.family = "file"
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
