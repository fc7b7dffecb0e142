"""Command-line front end.

stdout carries JSON (or matrix text for ``export-matrix``); diagnostics go to
stderr. Exit codes: 0 ok, 1 invalid input, 2 verification failure, 3 search
ended without reaching the target (budget spent or space exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import bounds, constructions as C, data
from .design import (DesignInstance, FanDesign, RotationalDesign, design_codewords,
                     dumps, matrix_text, read_design, swap_axes)
from .errors import ConstructionError, HypothesisError, OospcError, ParameterError
from .galois import inversive_to_oospc
from .search import KINDS, SearchProblem, search
from .verify import verify

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3

CONSTRUCTS = ("semicyclic-h4", "fill", "csqs-g-product", "gstar-cols", "gstar-rows",
              "cyclic-gstar", "g-to-1fg", "fan-product", "rosqs-to-1fg", "leave-to-1fg",
              "inversive")

# number of --in files each construction takes; None means one or more
ARITY = {"semicyclic-h4": 0, "fill": 2, "csqs-g-product": 2, "gstar-cols": 1,
         "gstar-rows": 1, "cyclic-gstar": 1, "g-to-1fg": 1, "fan-product": None,
         "rosqs-to-1fg": 1, "leave-to-1fg": 1, "inversive": 0}
NEEDS_G = ("gstar-cols", "gstar-rows", "cyclic-gstar", "fan-product")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _positive(text: str) -> int:
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return x


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oospc", description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=_positive, default=1,
                    help="worker cap (all commands currently run in one process)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="upper bound on the number of codewords")
    p.add_argument("m", type=_positive)
    p.add_argument("n", type=_positive)
    p.add_argument("w", type=_positive, nargs="?", default=4)
    p.add_argument("lam", type=_positive, nargs="?", default=2)

    p = sub.add_parser("verify", help="certify a design file")
    p.add_argument("file")
    p.add_argument("--kind", help="reinterpret the design as this kind")

    p = sub.add_parser("construct", help="run one construction")
    p.add_argument("name", choices=CONSTRUCTS)
    p.add_argument("--in", dest="inputs", nargs="+", default=[], metavar="FILE")
    p.add_argument("--out", help="design file to write (default: design JSON on stdout)")
    p.add_argument("--g", type=_positive)
    p.add_argument("--n", type=_positive, help="column count for semicyclic-h4")
    p.add_argument("--p", type=_positive, help="prime for inversive")
    p.add_argument("--rows", action="store_true",
                   help="fan-product: emit the Z_mg x Z_n output instead of Z_m x Z_ng")
    p.add_argument("--swap", action="store_true",
                   help="exchange the two coordinates of the result")
    p.add_argument("--groups", type=_positive,
                   help="cyclic-gstar: read a cyclic SQS input as grouped by this spacing")
    p.add_argument("--stop-after", type=int, choices=(1, 2, 3),
                   help="csqs-g-product: stop after this step")

    p = sub.add_parser("search", help="backtracking search for a small invariant design")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_int_list, default=(4,))
    p.add_argument("--t", type=_positive, default=3)
    p.add_argument("--target", type=int)
    p.add_argument("--kind", choices=KINDS, default="packing")
    p.add_argument("--e", type=_positive)
    p.add_argument("--action", choices=("full", "semi-cyclic"), default="full")
    p.add_argument("--non-strict", action="store_true")
    p.add_argument("--s-cyclic", action="store_true")
    p.add_argument("--k0", type=_int_list, default=())
    p.add_argument("--budget", type=float, help="seconds (default from OOSPC_SEARCH_BUDGET or 60)")
    p.add_argument("--max-nodes", type=_positive)
    p.add_argument("--out")

    p = sub.add_parser("export-matrix", help="codewords as 0/1 matrices")
    p.add_argument("file")

    p = sub.add_parser("data", help="dump a bundled design")
    p.add_argument("key", choices=data.KEYS)
    p.add_argument("--out")
    return ap


def _report_exit(report) -> int:
    return EXIT_OK if report.valid else EXIT_VERIFY


def cmd_bound(a) -> int:
    _emit(bounds.upper_bound(a.m, a.n, a.w, a.lam).to_dict())
    return EXIT_OK


def cmd_verify(a) -> int:
    d = read_design(a.file)
    if a.kind and not isinstance(d, DesignInstance):
        raise ParameterError("--kind applies to design instances only")
    rep = verify(d, a.kind)
    _emit(rep.to_dict())
    return _report_exit(rep)


def _fan_ingredients(master: FanDesign, files, g: int) -> C.IngredientSet:
    ing = C.IngredientSet(g)
    for d in files:
        if isinstance(d, DesignInstance) and d.kind == "h-design":
            ing.k1[d.m] = d
        else:
            ing.k0[d.m] = d
    return ing


def _as_kind(d, old, new):
    return replace(d, kind=new) if isinstance(d, DesignInstance) and d.kind == old else d


def _as_packing(d):
    """Any design instance read as a plain packing (its blocks are unchanged)."""
    if isinstance(d, DesignInstance) and d.kind != "packing":
        return replace(d, kind="packing", e=None, groups=None, lam=2)
    return d


def _construct(a, ins):
    name = a.name
    if name == "semicyclic-h4":
        n = a.n or a.g
        if n is None:
            raise ParameterError("semicyclic-h4 needs --n")
        return C.semicyclic_h4(n)
    if name == "inversive":
        if a.p is None:
            raise ParameterError("inversive needs --p")
        return inversive_to_oospc(a.p)[0]
    if name == "fill":
        return C.fill(ins[0], _as_packing(ins[1]))
    if name == "csqs-g-product":
        return C.csqs_g_product(*ins, stop_after=a.stop_after)
    if name == "gstar-cols":
        return C.gstar_expand_cols(_as_kind(ins[0], "g-design", "g-star"), a.g)
    if name == "gstar-rows":
        return C.gstar_expand_rows(_as_kind(ins[0], "g-design", "g-star"), a.g)
    if name == "cyclic-gstar":
        d = ins[0]
        if a.groups is not None:
            d = C.cyclic_sqs_to_gstar(d, a.groups)
        return C.cyclic_gstar_expand(d, a.g)
    if name == "g-to-1fg":
        return C.gdesign_to_1fg(ins[0])
    if name == "rosqs-to-1fg":
        return C.rosqs_to_1fg(ins[0])
    if name == "leave-to-1fg":
        return C.leave_to_1fg(ins[0])
    if name == "fan-product":
        master = ins[0]
        if not isinstance(master, FanDesign):
            raise ParameterError("the first --in file must be a 1-fan design")
        out = C.fan_product(master, _fan_ingredients(master, ins[1:], a.g))
        return out.rows if a.rows else out.cols
    raise ParameterError(f"unknown construction {name}")


def _expect_types(name, ins):
    want = {"rosqs-to-1fg": RotationalDesign}
    for d in ins:
        typ = want.get(name, (DesignInstance, FanDesign))
        if not isinstance(d, typ):
            raise ParameterError(f"{name} cannot take a {type(d).__name__} input")


def cmd_construct(a) -> int:
    arity = ARITY[a.name]
    if arity is None and not a.inputs:
        raise ParameterError(f"{a.name} needs at least one --in file")
    if arity is not None and len(a.inputs) != arity:
        raise ParameterError(f"{a.name} takes {arity} --in file(s), got {len(a.inputs)}")
    if a.name in NEEDS_G and a.g is None:
        raise ParameterError(f"{a.name} needs --g")
    if a.groups is not None and a.name != "cyclic-gstar":
        raise ParameterError("--groups applies to cyclic-gstar only")
    if a.stop_after and a.name != "csqs-g-product":
        raise ParameterError("--stop-after applies to csqs-g-product only")
    ins = [read_design(f) for f in a.inputs]
    _expect_types(a.name, ins)
    out = _construct(a, ins)
    if a.swap:
        out = swap_axes(out)
    rep = verify(out)
    if a.out:
        Path(a.out).write_text(dumps(out), encoding="utf-8")
        _emit(rep.to_dict())
    else:
        sys.stdout.write(dumps(out))
    return _report_exit(rep)


def cmd_search(a) -> int:
    prob = SearchProblem(a.m, a.n, a.k, a.t, target=a.target, kind=a.kind, e=a.e,
                         action=a.action, strict=not a.non_strict, s_cyclic=a.s_cyclic,
                         k0=a.k0, budget=a.budget, max_nodes=a.max_nodes)
    res = search(prob)
    out = {"search": res.to_dict()}
    if res.found:
        out["report"] = verify(res.design).to_dict()
        if a.out:
            Path(a.out).write_text(dumps(res.design), encoding="utf-8")
        else:
            out["design"] = json.loads(dumps(res.design))
    _emit(out)
    if res.found:
        return EXIT_OK
    if not res.exhausted:
        print("search budget exhausted before the target was reached", file=sys.stderr)
        return EXIT_BUDGET
    print("search space exhausted: no design of the target size exists", file=sys.stderr)
    return EXIT_BUDGET


def cmd_export(a) -> int:
    d = read_design(a.file)
    sys.stdout.write(matrix_text(design_codewords(d)))
    return EXIT_OK


def cmd_data(a) -> int:
    text = data.raw_text(a.key)
    if a.out:
        Path(a.out).write_text(text, encoding="utf-8")
        _emit({"key": a.key, "out": a.out})
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {"bound": cmd_bound, "verify": cmd_verify, "construct": cmd_construct,
            "search": cmd_search, "export-matrix": cmd_export, "data": cmd_data}


def run(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_OK if ex.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[a.command](a)
    except ConstructionError as ex:
        print(f"error: {ex}", file=sys.stderr)
        if ex.report is not None and hasattr(ex.report, "to_dict"):
            _emit({"stage": ex.stage, "report": ex.report.to_dict()})
        return EXIT_VERIFY
    except (ParameterError, HypothesisError, OospcError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
