"""Command line driver: scenarios in, deterministic JSON/CSV reports out."""
from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io
import json
import os
import random
import sys
import threading
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from . import barrier as br
from . import models as md
from . import normspace as ns
from .finset import InsufficientWindow, parse_window
from .plegma import decompose, enumerate_plegma, is_plegma
from .ramsey import (Coloring, Schedule, TargetUnreachable, WindowExhausted, homogenize,
                     ramsey_roundtrip, stabilize_front)

DEFAULT_SEED = 0
EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2


class SchemaError(ValueError):
    pass


class IOFailure(OSError):
    pass


class Partial(Exception):
    """Carries the report of a run that stopped early."""

    def __init__(self, report, table=()):
        super().__init__("partial result")
        self.report, self.table = report, list(table)


# -- JSON helpers --

def _encode(obj):
    if isinstance(obj, Fraction):
        return ns.frac_str(obj)
    if isinstance(obj, (tuple, set, frozenset)):
        return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_encode, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _window(spec, default=12) -> tuple:
    if spec is None:
        spec = default
    if isinstance(spec, int):
        return tuple(range(1, spec + 1))
    return tuple(spec)


def _set(spec):
    if isinstance(spec, int):
        return tuple(range(1, spec + 1))
    return parse_window(spec)


def _schedule(spec) -> Schedule:
    if spec is None:
        return Schedule.geometric(Fraction(1, 2), Fraction(1, 2), 4)
    if isinstance(spec, dict):
        return Schedule.geometric(spec["first"], spec["ratio"], spec["count"])
    return Schedule(tuple(Fraction(x) for x in spec))


def _vector(d) -> ns.Vector:
    if isinstance(d, list):
        return ns.Vector([Fraction(x) for x in d])
    return ns.Vector.from_json(d)


def _host(spec) -> ns.NormingSet:
    if spec is None:
        return ns.L1()
    if isinstance(spec, str):
        spec = {"kind": spec}
    if spec.get("kind") == "w_n":
        return ns.w_n(int(spec["n"]))
    return ns.norming_set_from_json(spec)


def _seminorm(spec) -> ns.SeminormPoint:
    if "rows" in spec:
        rows = tuple(tuple(Fraction(x) for x in r) for r in spec["rows"])
        return ns.SeminormPoint(len(rows[0]), rows=rows, provenance="given rows")
    W = _host(spec["W"])
    if "vectors" in spec:
        return ns.span_seminorm(W, [_vector(v) for v in spec["vectors"]])
    return ns.seminorm_point(W, spec["positions"])


# -- matrices --

GENERATORS = {
    # x^i_s = e_{max s}: the constant-rows matrix of the unit basis
    "unit-basis": lambda p: (lambda row, s: ns.e(max(s))),
    # x^i_s = e_{stride * max s + i}: disjointly supported rows
    "shifted-basis": lambda p: (lambda row, s: ns.e(int(p.get("stride", 8)) * max(s) + row)),
}


def _matrix(spec) -> md.MatrixSource:
    B = br.term_from_json(spec.get("barrier", {"cube": 1}))
    host = _host(spec.get("host"))
    entry = spec["entry"]
    kind = entry.get("kind", "generator")
    if kind == "generator":
        name = entry["name"]
        if name not in GENERATORS:
            raise SchemaError(f"unknown generator {name!r}")
        fn = GENERATORS[name](entry.get("params", {}))
        return md.MatrixSource(B, host, fn, "general", True, name)
    if kind == "sequence":
        seq = [_vector(v) for v in entry["vectors"]]
        return md.constant_rows(B, host, lambda s: seq[max(s) - 1], "sequence")
    raise SchemaError(f"unknown entry kind {kind!r}")


def _model_table(rep: md.ModelReport) -> list:
    """rho_n on the face grid of mesh 1/2 (evenness and homogeneity cover the rest)."""
    table = [["n", "a", "rho"]]
    for n, rho in enumerate(rep.rhos, 1):
        for p in ns.face_grid(n, Fraction(1, 2)):
            table.append([n, " ".join(ns.frac_str(x) for x in p), ns.frac_str(rho(p))])
    return table


def _model_payload(rep: md.ModelReport) -> dict:
    out = rep.to_json()
    out["is_l1"] = [r.rows is not None and ns.is_l1(r) for r in rep.rhos]
    out["is_linf"] = [r.rows is not None and ns.is_linf(r) for r in rep.rhos]
    return out


def _finish_model(rep: md.ModelReport):
    payload, table = _model_payload(rep), _model_table(rep)
    if rep.partial:
        raise Partial(payload, table)
    return payload, table


# -- operations; each returns (report, csv table) --

def op_barrier_rank(inp, ctx):
    B = br.term_from_json(inp["barrier"])
    return {"barrier": br.term_to_json(B), "rank": str(br.rank(B))}, []


def op_barrier_front(inp, ctx):
    B = br.term_from_json(inp["barrier"])
    members = br.front(B, _window(inp.get("window")))
    return {"count": len(members), "members": members}, [["member"]] + [
        [" ".join(map(str, s))] for s in members]


def op_barrier_section(inp, ctx):
    B = br.term_from_json(inp["barrier"])
    S = br.section(B, int(inp["n"]))
    return {"section": br.term_to_json(S), "rank": str(br.rank(S))}, []


def op_barrier_embed(inp, ctx):
    F, G = br.term_from_json(inp["F"]), br.term_from_json(inp["G"])
    M, N = _set(inp["M"]), _set(inp["N"])
    L = br.embed_prefix(F, G, M, N, int(inp.get("count", 6)))
    ok, checked, failures = br.check_embedding(F, G, M, L, int(inp.get("depth", 12)))
    return {"L": L, "closure_ok": ok, "checked": checked,
            "failures": [list(f) for f in failures]}, []


def op_barrier_project(inp, ctx):
    F, G = br.term_from_json(inp["F"]), br.term_from_json(inp["G"])
    t = br.project(F, G, _set(inp["M"]), _set(inp["L"]), inp["s"])
    return {"t": t}, []


def op_plegma_enum(inp, ctx):
    B = br.term_from_json(inp["barrier"])
    tuples = enumerate_plegma(B, int(inp["n"]), _window(inp.get("window")))
    return {"count": len(tuples), "tuples": tuples}, [["tuple"]] + [
        [" | ".join(" ".join(map(str, s)) for s in t)] for t in tuples]


def op_plegma_check(inp, ctx):
    t = [tuple(s) for s in inp["tuple"]]
    return {"tuple": t, "plegma": is_plegma(t)}, []


def op_plegma_decompose(inp, ctx):
    B = br.term_from_json(inp["barrier"])
    return {"parts": decompose(B, inp["s"], int(inp["n"]))}, []


def op_norm_eval(inp, ctx):
    W = _host(inp["W"])
    x = _vector(inp["x"])
    return {"norm": ns.norm(W, x)}, []


def op_norm_dist(inp, ctx):
    a, b = _seminorm(inp["a"]), _seminorm(inp["b"])
    iv = ns.distance(a, b, ctx.mesh(inp, Fraction(1, 8)))
    return {"interval": iv.to_json()}, [["lo", "hi"], iv.to_json()]


def op_norm_net(inp, ctx):
    k, eps = int(inp["k"]), Fraction(inp.get("eps", "1/2"))
    net = ns.epsilon_net(k, eps, int(inp.get("candidates", 200)), seed=ctx.seed)
    rng = random.Random(ctx.seed)
    probes = int(inp.get("probes", 0))
    covered, worst = 0, Fraction(0)
    for _ in range(probes):
        _, iv, _ = net.cover(ns.random_extensional_norm(k, rng))
        covered += int(iv.hi < eps)
        worst = max(worst, iv.hi)
    report = {"k": k, "eps": eps, "points": len(net.points), "grid_mesh": net.grid_mesh,
              "guarantee": net.guarantee, "probes": probes, "covered": covered,
              "worst_upper": worst}
    table = [["point", "rows"]] + [[i, json.dumps(p.to_json().get("rows"))]
                                   for i, p in enumerate(net.points)]
    return report, table


def _coloring(inp, ctx) -> Coloring:
    if "coloring" in inp:
        return Coloring.from_json(inp["coloring"])
    window = _window(inp.get("window"))
    return Coloring.random(int(inp.get("k", 2)), window, ctx.seed, int(inp.get("colors", 2)))


def op_ramsey_homogenize(inp, ctx):
    C = _coloring(inp, ctx)
    window = _window(inp.get("window"), default=max(C.window) if C.window else 12)
    try:
        color, H = homogenize(C, window, int(inp.get("target", 4)))
    except TargetUnreachable as exc:
        raise Partial({"error": str(exc), "best": list(exc.best)})
    return {"color": color, "M": H, "coloring": C.to_json()}, []


def op_ramsey_roundtrip(inp, ctx):
    C = _coloring(inp, ctx)
    rep = ramsey_roundtrip(C, _window(inp.get("window")), int(inp.get("target", 4)),
                           Fraction(inp.get("eps", "1/2")))
    out = rep.to_json()
    out["verified"] = rep.verdict and rep.matches
    out["seed"] = ctx.seed
    table = [["set", "norm"]] + [[k, v] for k, v in out["norms"].items()]
    return out, table


def op_ramsey_stabilize(inp, ctx):
    mx = _matrix(inp["matrix"])
    try:
        res = stabilize_front(lambda t: md.psi_n(mx, t), mx.barrier, int(inp["n"]),
                              _schedule(inp.get("schedule")), _window(inp.get("window")),
                              mesh=ctx.mesh(inp, None))
    except WindowExhausted as exc:
        raise Partial({"error": str(exc),
                       "best": exc.best.to_json() if exc.best is not None else None})
    return res.to_json(), []


def op_model_stabilize(inp, ctx):
    mx = _matrix(inp["matrix"])
    rep = md.stabilize_matrix(mx, int(inp.get("nmax", 3)), _schedule(inp.get("schedule")),
                              _window(inp.get("window")), mesh=ctx.mesh(inp, None))
    return _finish_model(rep)


def op_model_spreading(inp, ctx):
    host = _host(inp.get("host"))
    if "vectors" in inp:
        seq = [_vector(v) for v in inp["vectors"]]
    else:
        seq = md.unit_basis(int(inp.get("count", 12)))
    window = inp.get("window")
    rep = md.spreading_model(seq, host, int(inp.get("nmax", 4)), _schedule(inp.get("schedule")),
                             None if window is None else _window(window))
    return _finish_model(rep)


def op_model_chain(inp, ctx):
    mx = md.build_sum_matrix(_matrix(inp["matrix"]))
    nmax = int(inp.get("nmax", 3))
    rep = md.stabilize_matrix(mx, nmax, _schedule(inp.get("schedule")),
                              _window(inp.get("window")),
                              admissible=lambda t, n: min(md.union(t)) >= n,
                              mesh=ctx.mesh(inp, None))
    return _finish_model(rep)


def op_model_glide(inp, ctx):
    host = _host(inp.get("host"))
    rows, columns = int(inp.get("rows", 3)), int(inp.get("columns", 6))
    available = int(inp.get("available", 10))
    x = md.random_null_matrix(ctx.seed, rows, available, host)
    g = md.gliding_hump(x, host, rows, columns, available)
    block, witness = md.is_plegma_block(g.matrix, 2, tuple(range(1, columns + 1)))
    out = g.to_json()
    out.update({"bound_ok": g.bound_ok(), "plegma_block": block, "block_from": witness})
    table = [["row", "column", "error"]] + [
        [n, i, ns.frac_str(v)] for (n, i), v in sorted(g.errors.items())]
    return out, table


OPERATIONS = {
    "barrier.rank": op_barrier_rank, "barrier.front": op_barrier_front,
    "barrier.section": op_barrier_section, "barrier.embed": op_barrier_embed,
    "barrier.project": op_barrier_project,
    "plegma.enum": op_plegma_enum, "plegma.check": op_plegma_check,
    "plegma.decompose": op_plegma_decompose,
    "norm.eval": op_norm_eval, "norm.dist": op_norm_dist, "norm.net": op_norm_net,
    "ramsey.homogenize": op_ramsey_homogenize, "ramsey.roundtrip": op_ramsey_roundtrip,
    "ramsey.stabilize": op_ramsey_stabilize,
    "model.stabilize": op_model_stabilize, "model.spreading": op_model_spreading,
    "model.chain": op_model_chain, "model.glide": op_model_glide,
}

_BARRIER = {"type": "object", "minProperties": 1, "maxProperties": 1}
_WINDOW = {"anyOf": [{"type": "integer", "minimum": 1},
                     {"type": "array", "items": {"type": "integer", "minimum": 1}}]}
_SET = {"anyOf": [_WINDOW, {"type": "string"},
                  {"type": "object", "required": ["tail_start"]}]}
_MATRIX = {"type": "object", "required": ["entry"],
           "properties": {"barrier": _BARRIER, "entry": {"type": "object"}}}

INPUT_SCHEMAS = {
    "barrier.rank": {"required": ["barrier"], "properties": {"barrier": _BARRIER}},
    "barrier.front": {"required": ["barrier"], "properties": {"barrier": _BARRIER,
                                                             "window": _WINDOW}},
    "barrier.section": {"required": ["barrier", "n"],
                        "properties": {"barrier": _BARRIER, "n": {"type": "integer"}}},
    "barrier.embed": {"required": ["F", "G", "M", "N"],
                      "properties": {"F": _BARRIER, "G": _BARRIER, "M": _SET, "N": _SET}},
    "barrier.project": {"required": ["F", "G", "M", "L", "s"],
                        "properties": {"F": _BARRIER, "G": _BARRIER, "M": _SET, "L": _SET}},
    "plegma.enum": {"required": ["barrier", "n"],
                    "properties": {"barrier": _BARRIER, "n": {"type": "integer", "minimum": 1},
                                   "window": _WINDOW}},
    "plegma.check": {"required": ["tuple"], "properties": {"tuple": {"type": "array"}}},
    "plegma.decompose": {"required": ["barrier", "s", "n"]},
    "norm.eval": {"required": ["W", "x"]},
    "norm.dist": {"required": ["a", "b"]},
    "norm.net": {"required": ["k"], "properties": {"k": {"type": "integer", "minimum": 1}}},
    "ramsey.homogenize": {"properties": {"window": _WINDOW}},
    "ramsey.roundtrip": {"properties": {"window": _WINDOW, "k": {"type": "integer"}}},
    "ramsey.stabilize": {"required": ["matrix", "n"], "properties": {"matrix": _MATRIX}},
    "model.stabilize": {"required": ["matrix"], "properties": {"matrix": _MATRIX}},
    "model.spreading": {"properties": {"count": {"type": "integer", "minimum": 1}}},
    "model.chain": {"required": ["matrix"], "properties": {"matrix": _MATRIX}},
    "model.glide": {"properties": {"rows": {"type": "integer", "minimum": 1}}},
}

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["command"],
    "properties": {
        "command": {"enum": sorted(OPERATIONS)},
        "inputs": {"type": "object"},
        "seed": {"type": "integer"},
        "output_dir": {"type": "string"},
    },
    "additionalProperties": False,
}


def validate(scenario) -> None:
    try:
        jsonschema.validate(scenario, SCENARIO_SCHEMA)
        jsonschema.validate(scenario.get("inputs", {}),
                            dict(type="object", **INPUT_SCHEMAS[scenario["command"]]))
    except jsonschema.ValidationError as exc:
        path = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise SchemaError(f"{path}: {exc.message}") from None


class Context:
    def __init__(self, seed: int, mesh=None):
        self.seed = seed
        self.mesh_override = mesh

    def mesh(self, inp, default):
        if self.mesh_override is not None:
            return self.mesh_override
        return Fraction(inp["mesh"]) if "mesh" in inp else default


def execute(scenario: dict, seed=None, mesh=None, window=None) -> tuple:
    """(exit code, report, csv table).  Validation errors propagate."""
    validate(scenario)
    inputs = dict(scenario.get("inputs", {}))
    if window is not None:
        inputs["window"] = int(window)
    seed = scenario.get("seed", DEFAULT_SEED) if seed is None else seed
    ctx = Context(seed, None if mesh is None else Fraction(mesh))
    head = {"command": scenario["command"], "seed": seed, "inputs": inputs}
    try:
        result, table = OPERATIONS[scenario["command"]](inputs, ctx)
        return EXIT_OK, dict(head, status="ok", result=result), table
    except Partial as p:
        return EXIT_PARTIAL, dict(head, status="partial", result=p.report), p.table
    except (WindowExhausted, InsufficientWindow) as exc:
        best = getattr(exc, "best", None)
        return EXIT_PARTIAL, dict(head, status="partial", error=str(exc),
                                  result=best.to_json() if hasattr(best, "to_json") else None), []


def scenario_report_bytes(scenario: dict, **kw) -> bytes:
    _, report, _ = execute(scenario, **kw)
    return dumps(report).encode()


def csv_text(table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in table:
        w.writerow([ns.frac_str(x) if isinstance(x, Fraction) else x for x in row])
    return buf.getvalue()


_write_lock = threading.Lock()


def write_report(out: Path, report: dict, table) -> None:
    with _write_lock:
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / "report.json").write_text(dumps(report), encoding="utf-8")
            (out / "report.csv").write_text(csv_text(table or [["key", "value"]]),
                                            encoding="utf-8")
        except OSError as exc:
            raise IOFailure(f"cannot write report to {out}: {exc}") from None


def load_scenario(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from None


def threads() -> int:
    raw = os.environ.get("BARRIERLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise SchemaError(f"BARRIERLAB_THREADS must be an integer, got {raw!r}") from None


# -- golden fixtures --

GOLDEN_SCENARIOS = {
    "roundtrip_seed7": {"command": "ramsey.roundtrip", "seed": 7,
                        "inputs": {"k": 2, "window": 12}},
    "spreading_schreier": {"command": "model.spreading",
                           "inputs": {"host": "schreier", "count": 10, "nmax": 3}},
    "plegma_schreier": {"command": "plegma.enum",
                        "inputs": {"barrier": {"schreier": {}}, "n": 2, "window": 7}},
    "norm_w5": {"command": "norm.eval", "inputs": {"W": {"kind": "w_n", "n": 5},
                                                   "x": {"1": "1", "2": "1"}}},
}


def default_golden_dir() -> Path:
    return Path(str(resources.files("barrierlab") / "data" / "golden"))


def write_golden(directory: Path) -> list:
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for name, sc in sorted(GOLDEN_SCENARIOS.items()):
        _, report, _ = execute(sc)
        (directory / f"{name}.json").write_text(dumps({"scenario": sc, "report": report}),
                                                encoding="utf-8")
        names.append(name)
    return names


def check_golden(directory: Path) -> list:
    """(name, passed, reason) for every fixture in the directory."""
    out = []
    files = sorted(directory.glob("*.json")) if directory.is_dir() else []
    if not files:
        return [("golden", False, f"no fixtures in {directory}")]
    for path in files:
        try:
            stored = json.loads(path.read_text(encoding="utf-8"))
            _, report, _ = execute(stored["scenario"])
            same = json.loads(dumps(report)) == stored["report"]
            out.append((path.name, same, "ok" if same else "report differs"))
        except Exception as exc:  # a corrupted fixture is a named failure, not a crash
            out.append((path.name, False, f"{type(exc).__name__}: {exc}"))
    return out


# -- entry points --

def cmd_run(args) -> int:
    paths = args.scenario
    scenarios = [load_scenario(p) for p in paths]
    for sc in scenarios:
        validate(sc)

    def one(i):
        sc = scenarios[i]
        code, report, table = execute(sc, args.seed, args.mesh, args.window)
        out = args.out or sc.get("output_dir")
        if out:
            target = Path(out) if len(scenarios) == 1 else Path(out) / Path(paths[i]).stem
            write_report(target, report, table)
        return code, report

    with concurrent.futures.ThreadPoolExecutor(max_workers=threads()) as pool:
        results = list(pool.map(one, range(len(scenarios))))
    if not args.out and all(not sc.get("output_dir") for sc in scenarios):
        for _, report in results:
            sys.stdout.write(dumps(report))
    return max(code for code, _ in results)


def cmd_op(args) -> int:
    try:
        inputs = json.loads(args.inputs)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON inputs: {exc}") from None
    sc = {"command": f"{args.group}.{args.op}", "inputs": inputs}
    if args.seed is not None:
        sc["seed"] = args.seed
    code, report, table = execute(sc, None, args.mesh, args.window)
    if args.out:
        write_report(Path(args.out), report, table)
    sys.stdout.write(dumps(report))
    return code


def cmd_selftest(args) -> int:
    from .acceptance import report_bytes, run_all
    only = {int(x) for x in args.only.split(",")} if args.only else None
    print(f"barrierlab selftest, seed {args.seed}")
    rows = run_all(args.seed, only)
    for r in rows:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.id}  {r.name}")
        print(f"  {r.id}: {r.seconds:.1f}s", file=sys.stderr)
    golden = check_golden(Path(args.golden_dir) if args.golden_dir else default_golden_dir())
    for name, ok, reason in golden:
        print(f"{'PASS' if ok else 'FAIL'}  golden  {name}" + ("" if ok else f"  ({reason})"))
    passed = all(r.passed for r in rows) and all(ok for _, ok, _ in golden)
    print(f"{'all passed' if passed else 'FAILURES'}: "
          f"{sum(r.passed for r in rows)}/{len(rows)} criteria, "
          f"{sum(ok for _, ok, _ in golden)}/{len(golden)} golden")
    if args.out:
        out = Path(args.out)
        body = report_bytes(rows).decode()
        doc = {"seed": args.seed, "criteria": json.loads(body),
               "golden": [{"file": n, "passed": ok, "reason": why} for n, ok, why in golden],
               "passed": passed}
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / "selftest.json").write_text(dumps(doc), encoding="utf-8")
            (out / "selftest.csv").write_text(csv_text(
                [["id", "name", "passed"]] + [[r.id, r.name, r.passed] for r in rows]),
                encoding="utf-8")
        except OSError as exc:
            raise IOFailure(f"cannot write to {out}: {exc}") from None
    return EXIT_OK if passed else EXIT_ERROR


def cmd_golden(args) -> int:
    names = write_golden(Path(args.dir) if args.dir else default_golden_dir())
    print("\n".join(names))
    return EXIT_OK


GROUP_OPS = {}
for _name in OPERATIONS:
    _g, _o = _name.split(".")
    GROUP_OPS.setdefault(_g, []).append(_o)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="barrierlab", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(q):
        q.add_argument("--seed", type=int, default=None)
        q.add_argument("--out", default=None, help="directory for report.json and report.csv")
        q.add_argument("--mesh", default=None, help="grid mesh p/q for certified distances")
        q.add_argument("--window", type=int, default=None, help="use the window {1..n}")

    r = sub.add_parser("run", help="run scenario files")
    r.add_argument("--scenario", action="append", required=True)
    common(r)
    r.set_defaults(func=cmd_run)

    for group, ops in GROUP_OPS.items():
        g = sub.add_parser(group, help=f"{group} operations")
        g.add_argument("op", choices=ops)
        g.add_argument("inputs", nargs="?", default="{}", help="operation inputs as JSON")
        common(g)
        g.set_defaults(func=cmd_op, group=group)

    s = sub.add_parser("selftest", help="run the acceptance suite")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--out", default=None)
    s.add_argument("--only", default=None, help="comma separated criterion numbers")
    s.add_argument("--golden-dir", default=None)
    s.set_defaults(func=cmd_selftest)

    w = sub.add_parser("golden", help="regenerate the golden fixtures")
    w.add_argument("--dir", default=None)
    w.set_defaults(func=cmd_golden)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"SchemaError: {exc}", file=sys.stderr)
    except IOFailure as exc:
        print(f"IOFailure: {exc}", file=sys.stderr)
    except (ValueError, KeyError, TypeError, br.BarrierError, TargetUnreachable) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
