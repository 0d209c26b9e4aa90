"""Batch command-line surface.

Exit codes: 0 = yes / success, 1 = recognized no (no witness, bound failed),
2 = input, format, or guard error.  Every command appends a JSON RunReport
line to ``runs.jsonl`` in the output directory, embedding a digest of the
input so acceptance runs are auditable.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
import time
from pathlib import Path

from . import families, thinness
from .decomp import (
    SizeGuardError,
    decompose_circular,
    decompose_convex,
    decompose_spider,
    decompose_tdelta,
    decomposition_from_json,
    decomposition_to_json,
    max_induced_matching_cut,
    mimw_oracle,
    simw_oracle,
    spider_bound,
    tdelta_bound,
    width_of,
)
from .graphs import BipartiteGraph, GraphFormatError, parse_graph, serialize_graph
from .supports import (
    recognize_circular,
    recognize_convex,
    recognize_star,
    recognize_tdelta,
    verify_support,
    witness_from_json,
    witness_to_json,
)


@dataclasses.dataclass
class RunReport:
    command: list[str]
    input_digest: str | None
    outputs: dict
    measured: dict
    bounds: dict
    passed: bool
    wall_time_s: float

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "outputs": self.outputs,
            "measured": self.measured,
            "bounds": self.bounds,
            "pass": self.passed,
            "wall_time_s": round(self.wall_time_s, 6),
        }


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_graph(path: str):
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such file: {path}")
    return parse_graph(p.read_text()), _digest(p)


def _emit(report: RunReport, args) -> None:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / "runs.jsonl").open("a") as fh:
        fh.write(json.dumps(report.to_json(), sort_keys=True) + "\n")
    if args.format == "json":
        print(json.dumps(report.to_json(), sort_keys=True, indent=2))
    else:
        status = "ok" if report.passed else "FAIL"
        bits = [f"[{status}]"]
        for k, v in report.measured.items():
            bits.append(f"{k}={v}")
        for k, v in report.bounds.items():
            bits.append(f"bound:{k}={v}")
        print(" ".join(bits))


def _write_json(args, name: str, payload: dict) -> str:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return str(path)


def _cut_json(report, g):
    from .graphs import vertex_token

    if report is None:
        return None
    return {
        "edge": list(report.edge),
        "side": [vertex_token(g, v) for v in report.side],
        "value": report.value,
    }


def _recognizer(args, g):
    cls = args.cls
    if cls == "convex":
        return recognize_convex(g)
    if cls == "circular":
        return recognize_circular(g)
    if cls == "star":
        return recognize_star(g)
    if cls == "tdelta":
        return recognize_tdelta(g, args.t, args.delta)
    raise ValueError(f"unknown class {cls!r}")


def cmd_recognize(args) -> int:
    start = time.perf_counter()
    g, digest = _load_graph(args.file)
    if not isinstance(g, BipartiteGraph):
        raise ValueError("recognition needs a bipartite input")
    w = _recognizer(args, g)
    outputs = {}
    if w is not None:
        if not verify_support(g, w):
            raise AssertionError("recognizer emitted an invalid witness")
        outputs["witness"] = _write_json(
            args, Path(args.file).stem + ".witness.json", witness_to_json(w)
        )
    report = RunReport(
        command=sys.argv[1:],
        input_digest=digest,
        outputs=outputs,
        measured={"recognized": w is not None, "class": args.cls},
        bounds={},
        passed=w is not None,
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args)
    return 0 if w is not None else 1


def cmd_decompose(args) -> int:
    start = time.perf_counter()
    g, digest = _load_graph(args.file)
    if not isinstance(g, BipartiteGraph):
        raise ValueError("decomposition needs a bipartite input")
    if args.witness:
        w = witness_from_json(json.loads(Path(args.witness).read_text()))
    else:
        w = _recognizer(args, g)
        if w is None:
            print(f"not {args.cls} convex: no witness", file=sys.stderr)
            return 1
    if not verify_support(g, w):
        raise ValueError("witness does not certify the input graph")

    cls = args.cls
    if cls == "convex":
        d = decompose_convex(g, w)
        bound = 1
    elif cls == "circular":
        d = decompose_circular(g, w)
        bound = 2
    elif cls == "spider":
        d = decompose_spider(g, w)
        bound = spider_bound(max(w.max_degree, 3)) if w.t >= 1 else 1
    elif cls == "tdelta":
        d = decompose_tdelta(g, w)
        bound = tdelta_bound(w.t, max(w.max_degree, 3)) if w.t >= 1 else 1
    else:
        raise ValueError(f"unknown class {cls!r}")

    measured, worst = width_of(g, d, "mim")
    outputs = {
        "decomposition": _write_json(
            args, Path(args.file).stem + ".decomposition.json", decomposition_to_json(d, g)
        )
    }
    passed = measured <= bound
    report = RunReport(
        command=sys.argv[1:],
        input_digest=digest,
        outputs=outputs,
        measured={
            "width": measured,
            "worst_cut": _cut_json(worst, g),
        },
        bounds={"width": bound},
        passed=passed,
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args)
    return 0 if passed else 1


def cmd_width(args) -> int:
    start = time.perf_counter()
    g, digest = _load_graph(args.file)
    d = decomposition_from_json(json.loads(Path(args.decomposition).read_text()), g)
    measured, worst = width_of(g, d, args.mode)
    report = RunReport(
        command=sys.argv[1:],
        input_digest=digest,
        outputs={},
        measured={
            "width": measured,
            "mode": args.mode,
            "worst_cut": _cut_json(worst, g),
        },
        bounds={},
        passed=True,
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args)
    return 0


def cmd_oracle(args) -> int:
    start = time.perf_counter()
    g, digest = _load_graph(args.file)
    params = [p.strip() for p in args.param.split(",") if p.strip()]
    guard_small = args.guard if args.guard else 8
    guard_thin = args.guard if args.guard else 13
    measured = {}
    outputs = {}
    for param in params:
        if param == "mimw":
            value, witness = mimw_oracle(g, guard_small)
            measured["mimw"] = value
            outputs["mimw_decomposition"] = _write_json(
                args, Path(args.file).stem + ".mimw.json", decomposition_to_json(witness, g)
            )
        elif param == "simw":
            value, _ = simw_oracle(g, guard_small)
            measured["simw"] = value
        elif param == "thin":
            measured["thin"] = thinness.thin_oracle(g, guard_thin)
        elif param == "pthin":
            measured["pthin"] = thinness.pthin_oracle(g, guard_thin)
        elif param == "mim-cut":
            if not args.side:
                raise ValueError("mim-cut needs --side")
            side = _parse_side(args.side, g)
            value, _ = max_induced_matching_cut(
                g.to_graph() if isinstance(g, BipartiteGraph) else g, side
            )
            measured["mim-cut"] = value
        else:
            raise ValueError(f"unknown oracle parameter {param!r}")
    passed = True
    if "mimw" in measured and "simw" in measured:
        passed = measured["simw"] <= measured["mimw"]
    report = RunReport(
        command=sys.argv[1:],
        input_digest=digest,
        outputs=outputs,
        measured=measured,
        bounds={},
        passed=passed,
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args)
    return 0 if passed else 1


def _parse_side(text: str, g):
    side = []
    for tok in text.split(","):
        tok = tok.strip()
        if isinstance(g, BipartiteGraph) and tok[0] in "ab":
            idx = int(tok[1:]) - 1
            side.append(idx if tok[0] == "a" else g.a_size + idx)
        else:
            side.append(int(tok) - 1)
    return side


def cmd_thin(args) -> int:
    start = time.perf_counter()
    g, digest = _load_graph(args.file)
    if not isinstance(g, BipartiteGraph):
        raise ValueError("the thinness construction needs a bipartite input")
    if args.witness:
        w = witness_from_json(json.loads(Path(args.witness).read_text()))
    else:
        w = recognize_tdelta(g, args.t, args.delta)
        if w is None:
            print("no tree support within the given (t, delta)", file=sys.stderr)
            return 1
    rep = thinness.thin_from_tree_support(g, w)
    gg = g.to_graph()
    if not thinness.verify_consistent(gg, rep):
        raise AssertionError("construction emitted an inconsistent representation")
    bound = 2 + w.t * max(w.max_degree - 2, 0)
    d = thinness.linear_bd_from_thin(gg, rep)
    lw, _ = width_of(gg, d, "mim")
    outputs = {
        "representation": _write_json(
            args,
            Path(args.file).stem + ".thin.json",
            thinness.representation_to_json(rep, g),
        )
    }
    passed = rep.class_count() <= bound and lw <= rep.class_count()
    report = RunReport(
        command=sys.argv[1:],
        input_digest=digest,
        outputs=outputs,
        measured={"classes": rep.class_count(), "linear_mim_width": lw},
        bounds={"classes": bound, "linear_mim_width": rep.class_count()},
        passed=passed,
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args)
    return 0 if passed else 1


def cmd_convert(args) -> int:
    start = time.perf_counter()
    g, digest = _load_graph(args.file)
    gg = g.to_graph() if isinstance(g, BipartiteGraph) else g
    pd = thinness.parse_pathdecomp(Path(args.pathdecomp).read_text(), g)
    ok, q = thinness.verify_pathdecomp(gg, pd)
    if not ok:
        raise ValueError("invalid path decomposition")
    rep = thinness.pathdecomp_to_pthin(gg, pd)
    if not thinness.verify_strongly_consistent(gg, rep):
        raise AssertionError("conversion emitted a non-strong representation")
    bound = (2**q) * (q + 1)
    outputs = {
        "representation": _write_json(
            args,
            Path(args.file).stem + ".pthin.json",
            thinness.representation_to_json(rep, g),
        )
    }
    passed = rep.class_count() <= bound
    report = RunReport(
        command=sys.argv[1:],
        input_digest=digest,
        outputs=outputs,
        measured={"classes": rep.class_count(), "pathwidth": q},
        bounds={"classes": bound},
        passed=passed,
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args)
    return 0 if passed else 1


def cmd_gen(args) -> int:
    start = time.perf_counter()
    spec = families.parse_genspec(args.spec)
    if args.seed is not None and spec.seed == 0:
        spec = families.GenSpec(spec.family, spec.params, args.seed)

    def load(path):
        return parse_graph(Path(path).read_text())

    name, g, w = families.run_genspec(spec, load)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    graph_path = out_dir / f"{name}.graph"
    graph_path.write_text(serialize_graph(g))
    outputs = {"graph": str(graph_path)}
    if w is not None:
        outputs["witness"] = _write_json(args, f"{name}.witness.json", witness_to_json(w))
    report = RunReport(
        command=sys.argv[1:],
        input_digest=None,
        outputs=outputs,
        measured={"vertices": g.n, "family": spec.family},
        bounds={},
        passed=True,
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args)
    return 0


def cmd_verify(args) -> int:
    start = time.perf_counter()
    g, digest = _load_graph(args.file)
    gg = g.to_graph() if isinstance(g, BipartiteGraph) else g
    measured = {}
    ok = True
    if args.witness:
        w = witness_from_json(json.loads(Path(args.witness).read_text()))
        ok = verify_support(g, w)
        measured["witness_valid"] = ok
    elif args.decomposition:
        d = decomposition_from_json(json.loads(Path(args.decomposition).read_text()), g)
        from .decomp import validate_decomposition

        try:
            validate_decomposition(gg, d)
            measured["decomposition_valid"] = True
        except ValueError as exc:
            measured["decomposition_valid"] = False
            measured["reason"] = str(exc)
            ok = False
    elif args.representation:
        rep = thinness.representation_from_json(
            json.loads(Path(args.representation).read_text()), g
        )
        if args.strong:
            ok = thinness.verify_strongly_consistent(gg, rep)
        else:
            ok = thinness.verify_consistent(gg, rep)
        measured["consistent"] = ok
        measured["strong"] = bool(args.strong)
    elif args.pathdecomp:
        pd = thinness.parse_pathdecomp(Path(args.pathdecomp).read_text(), g)
        ok, width = thinness.verify_pathdecomp(gg, pd)
        measured["pathdecomp_valid"] = ok
        measured["width"] = width
    else:
        raise ValueError("nothing to verify: pass --witness/--decomposition/--representation/--pathdecomp")
    report = RunReport(
        command=sys.argv[1:],
        input_digest=digest,
        outputs={},
        measured=measured,
        bounds={},
        passed=ok,
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gcwidth",
        description="widths of generalized convex bipartite graphs: recognize, decompose, measure, certify",
    )
    ap.add_argument("--seed", type=int, default=None, help="seed for generation (default 0)")
    ap.add_argument("--guard", type=int, default=None, help="override oracle size guards")
    ap.add_argument("--out", default=".", help="output directory for artifacts and runs.jsonl")
    ap.add_argument("--format", choices=("json", "text"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="recognize a support class and emit a witness")
    p.add_argument("--class", dest="cls", required=True, choices=("convex", "circular", "star", "tdelta"))
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("file")
    p.set_defaults(fn=cmd_recognize)

    p = sub.add_parser("decompose", help="build a width-bounded branch decomposition")
    p.add_argument("--class", dest="cls", required=True, choices=("convex", "circular", "spider", "tdelta"))
    p.add_argument("--witness", help="support witness JSON (recognized when omitted)")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("file")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("width", help="measure the width of a decomposition")
    p.add_argument("--decomposition", required=True)
    p.add_argument("--mode", choices=("mim", "sim"), default="mim")
    p.add_argument("file")
    p.set_defaults(fn=cmd_width)

    p = sub.add_parser("oracle", help="exact small-instance width/thinness values")
    p.add_argument("--param", required=True, help="comma list of mimw,simw,thin,pthin,mim-cut")
    p.add_argument("--side", help="comma list of vertex tokens for mim-cut")
    p.add_argument("file")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("thin", help="thinness representation from a tree support")
    p.add_argument("--witness")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("file")
    p.set_defaults(fn=cmd_thin)

    p = sub.add_parser("convert", help="path decomposition to proper-thin representation")
    p.add_argument("--pathdecomp", required=True)
    p.add_argument("file")
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("gen", help="generate an instance family")
    p.add_argument("spec", help="family:key=val,...[:seed=s]")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("verify", help="verify a witness/decomposition/representation")
    p.add_argument("--witness")
    p.add_argument("--decomposition")
    p.add_argument("--representation")
    p.add_argument("--strong", action="store_true")
    p.add_argument("--pathdecomp")
    p.add_argument("file")
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (GraphFormatError, SizeGuardError, FileNotFoundError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
