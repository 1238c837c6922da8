"""Command-line front door: parse declaration files, run computations,
emit deterministic JSON (or DOT) and batch reports.

Exit codes: 0 success, 2 syntax error, 3 unresolved reference,
4 validation failure, 5 usage/kind mismatch, 6 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import Budget, BudgetExceeded, DEFAULT_BUDGET
from .cohomology import decompose_hfp, h1, stabilizer
from .colim import colim_holim_compare, filtered_colimit, map_colim_compare
from .dotgen import emit_dot
from .equiv import is_equivalence, is_fibration, skeleton
from .holim import (
    hfp_via_holim,
    holim,
    homotopy_pullback_via_holim,
    loop_groupoid,
    pullback_comparison,
)
from .site import (
    is_local_fibration,
    is_local_weak_equivalence,
    is_sectionwise_weak_equivalence,
    stalk,
)
from .textfmt import (
    ParseError,
    UnresolvedReference,
    ValidationFailure,
    parse,
    print_workspace,
)

EXIT_OK = 0
EXIT_SYNTAX = 2
EXIT_UNRESOLVED = 3
EXIT_VALIDATION = 4
EXIT_USAGE = 5
EXIT_BUDGET = 6


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, set):
        return [_jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(payload):
    payload = dict(payload)
    payload["schema"] = 1
    print(json.dumps(_jsonable(payload), sort_keys=True))


def _groupoid_summary(g):
    rep = skeleton(g)
    return {
        "objects": g.n_objects,
        "morphisms": g.n_morphisms,
        "iso_classes": len(rep.iso_classes),
        "aut_orders": [grp.order for grp in rep.automorphism_groups],
    }


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def _maybe_dot(args, g, payload):
    if args.format == "dot":
        print(emit_dot(g), end="")
    else:
        _emit(payload)


# ---------------------------------------------------------------------------
# command handlers

def cmd_validate(args):
    ws = _load(args.file)
    _emit({"ok": True, "declarations": [
        {"name": n, "kind": ws.decls[n].kind} for n in ws.order
    ]})


def cmd_print(args):
    ws = _load(args.file)
    print(print_workspace(ws), end="")


def cmd_holim(args):
    ws = _load(args.file)
    d = ws.get(args.name, "diagram")
    h = holim(d.value, Budget(args.budget))
    _maybe_dot(args, h.groupoid, {"name": args.name, **_groupoid_summary(h.groupoid)})


def cmd_colim(args):
    ws = _load(args.file)
    d = ws.get(args.name, "diagram")
    col = filtered_colimit(d.value)
    _maybe_dot(args, col.groupoid,
               {"name": args.name, **_groupoid_summary(col.groupoid)})


def cmd_pullback(args):
    ws = _load(args.file)
    f = ws.get(args.f, "functor").value
    g = ws.get(args.g, "functor").value
    if not f.target.same_as(g.target):
        raise UsageError("the two functors must share a target")
    h, five, cmp = homotopy_pullback_via_holim(f, g, Budget(args.budget))
    red_cmp = pullback_comparison(f, g, five)
    ok, _ = is_equivalence(red_cmp)
    _maybe_dot(args, five.groupoid, {
        "five_tuple": _groupoid_summary(five.groupoid),
        "reduced": _groupoid_summary(red_cmp.target),
        "holim_iso": cmp.is_bijective(),
        "models_equivalent": ok,
    })


def cmd_hfp(args):
    ws = _load(args.file)
    a = ws.get(args.name, "action").value
    h, model, cmp = hfp_via_holim(a, Budget(args.budget))
    _maybe_dot(args, model.groupoid, {
        "name": args.name,
        **_groupoid_summary(model.groupoid),
        "holim_iso": cmp.is_bijective(),
    })


def cmd_loop(args):
    ws = _load(args.file)
    g = ws.get(args.name, "groupoid").value
    lx = loop_groupoid(g)
    _maybe_dot(args, lx.groupoid,
               {"name": args.name, **_groupoid_summary(lx.groupoid)})


def cmd_h1(args):
    ws = _load(args.file)
    a = ws.get(args.name, "gaction").value
    reps, model, _ = h1(a)
    _emit({
        "name": args.name,
        "cocycles": len(model.objects),
        "classes": len(reps),
        "stabilizer_orders": [stabilizer(a, s)[0].order for s in reps],
    })


def cmd_decompose(args):
    ws = _load(args.file)
    a = ws.get(args.name, "gaction").value
    hfp, rep, fun, ok, _ = decompose_hfp(a, Budget(args.budget))
    _emit({
        "name": args.name,
        "fixed_point_objects": hfp.groupoid.n_objects,
        "blocks": [g.order for g in rep.automorphism_groups],
        "equivalence": ok,
    })


def cmd_skeleton(args):
    ws = _load(args.file)
    g = ws.get(args.name, "groupoid").value
    rep = skeleton(g)
    _maybe_dot(args, rep.skeleton_groupoid, {
        "name": args.name,
        "iso_classes": [sorted(c) for c in rep.iso_classes],
        "representatives": list(rep.representatives),
        "aut_orders": [grp.order for grp in rep.automorphism_groups],
    })


def cmd_check_equiv(args):
    ws = _load(args.file)
    f = ws.get(args.name, "functor").value
    ok, cert = is_equivalence(f)
    _emit({"name": args.name, "equivalence": ok, "certificate": cert})


def cmd_check_fib(args):
    ws = _load(args.file)
    f = ws.get(args.name, "functor").value
    ok, cert = is_fibration(f)
    _emit({"name": args.name, "fibration": ok, "certificate": cert})


def cmd_stalk(args):
    ws = _load(args.file)
    x = ws.get(args.name, "presheaf").value
    point = next((p for p in x.site.points if p.name == args.point), None)
    if point is None:
        raise UsageError(f"presheaf site has no point named {args.point!r}")
    col = stalk(x, point)
    _maybe_dot(args, col.groupoid, {
        "name": args.name,
        "point": args.point,
        **_groupoid_summary(col.groupoid),
    })


def cmd_check_lwe(args):
    ws = _load(args.file)
    f = ws.get(args.name, "pmap").value
    local, certs = is_local_weak_equivalence(f)
    sectionwise, _ = is_sectionwise_weak_equivalence(f)
    fib, _ = is_local_fibration(f)
    _emit({
        "name": args.name,
        "local_weak_equivalence": local,
        "sectionwise_weak_equivalence": sectionwise,
        "local_fibration": fib,
        "stalk_certificates": certs,
    })


def cmd_compare_fubini(args):
    ws = _load(args.file)
    d = ws.get(args.name, "diagram")
    idx_decl = ws.decls[d.meta["index"]]
    prod = idx_decl.meta.get("product")
    if prod is None:
        raise UsageError("compare-fubini needs a diagram over a declared product index")
    from .holim import fubini

    h_full, out = fubini(prod, d.value, Budget(args.budget))
    _emit({
        "name": args.name,
        "holim": _groupoid_summary(h_full.groupoid),
        "isomorphism": all(cmp.is_bijective() for (_, cmp) in out.values()),
    })


def cmd_compare_key_lemma(args):
    ws = _load(args.file)
    k = ws.get(args.k)
    if k.kind not in ("category", "groupoid"):
        raise UsageError(f"{args.k!r} must be a category or groupoid")
    d = ws.get(args.name, "diagram")
    lhs, rhs, cmp = map_colim_compare(k.value, d.value, Budget(args.budget))
    _emit({
        "k": args.k,
        "diagram": args.name,
        "colim_of_maps": _groupoid_summary(lhs.groupoid),
        "isomorphism": cmp.is_bijective(),
    })


def cmd_report(args):
    from .report import workspace_report

    ws = _load(args.file)
    rows = workspace_report(ws, args.out)
    _emit({
        "out": args.out,
        "csv": os.path.join(args.out, "summary.csv"),
        "figures": [os.path.join(args.out, "sizes.png"),
                    os.path.join(args.out, "loops.png")],
        "groupoids": len(rows),
    })


def cmd_gen_corpus(args):
    from .examples import write_example_corpus

    paths = write_example_corpus(args.out, seed=args.seed)
    _emit({"out": args.out, "files": [os.path.basename(p) for p in paths]})


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="grpdlim",
        description="homotopy limits, fixed points and cohomology of finite groupoids",
    )
    p.add_argument("--budget", type=int,
                   default=int(os.environ.get("GRPDLIM_BUDGET", DEFAULT_BUDGET)),
                   help="enumeration budget (default from GRPDLIM_BUDGET or 10^7)")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *specs):
        sp = sub.add_parser(name)
        for spec in specs:
            sp.add_argument(spec)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "file")
    add("print", cmd_print, "file")
    add("holim", cmd_holim, "file", "name")
    add("colim", cmd_colim, "file", "name")
    add("pullback", cmd_pullback, "file", "f", "g")
    add("hfp", cmd_hfp, "file", "name")
    add("loop", cmd_loop, "file", "name")
    add("h1", cmd_h1, "file", "name")
    add("decompose", cmd_decompose, "file", "name")
    add("skeleton", cmd_skeleton, "file", "name")
    add("check-equiv", cmd_check_equiv, "file", "name")
    add("check-fib", cmd_check_fib, "file", "name")
    add("stalk", cmd_stalk, "file", "name", "point")
    add("check-lwe", cmd_check_lwe, "file", "name")
    add("compare-fubini", cmd_compare_fubini, "file", "name")
    add("compare-key-lemma", cmd_compare_key_lemma, "file", "k", "name")
    add("report", cmd_report, "file", "out")
    add("gen-corpus", cmd_gen_corpus, "out")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.fn(args)
    except ValidationFailure as e:
        print(json.dumps({"schema": 1, "error": "validation", "message": str(e)},
                         sort_keys=True))
        return EXIT_VALIDATION
    except UnresolvedReference as e:
        print(json.dumps({"schema": 1, "error": "unresolved", "message": str(e)},
                         sort_keys=True))
        return EXIT_UNRESOLVED
    except ParseError as e:
        print(json.dumps({"schema": 1, "error": "syntax", "message": str(e)},
                         sort_keys=True))
        return EXIT_SYNTAX
    except BudgetExceeded as e:
        print(json.dumps({"schema": 1, "error": "budget", "message": str(e)},
                         sort_keys=True))
        return EXIT_BUDGET
    except UsageError as e:
        print(json.dumps({"schema": 1, "error": "usage", "message": str(e)},
                         sort_keys=True))
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
