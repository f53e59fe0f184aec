"""Line-oriented file formats and the command-line driver.

Two text formats, both UTF-8:

  polymatroid v1          graph v1
  elements a b c          vertices 3
  rank - 0                edge e 0 1
  rank a 2                loop l 2
  ...                     freeloop f

A polymatroid file carries exactly 2^n rank lines in bitmask order with
subsets comma-joined in element order ("-" is the empty set).  Canonical
files round-trip byte-identically.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import conn, minors, splitter
from .construct import Multigraph, boolean_from_graph, cycle_matroid, enumerate_small
from .core import Polymatroid, element_kind, is_compact, is_isomorphic, validate
from .errors import HypothesisViolated, ParseError, PolymatroidError
from .ops import (
    compactified_delete,
    compactify,
    compactify_element,
    compress,
    contract,
    delete,
    dual,
    relabel,
)
from .splitter import (
    CounterexampleReport,
    OutcomeCompactifiedDelete,
    OutcomeContract,
    OutcomeSeriesCompress,
    OutcomeWheelOrWhirl,
)

# -- serialization ------------------------------------------------------------


def serialize(value):
    if isinstance(value, Polymatroid):
        lines = ["polymatroid v1", "elements" + "".join(" " + e for e in value.elements)]
        for mask in range(1 << value.n):
            token = ",".join(
                value.elements[i] for i in range(value.n) if mask >> i & 1
            )
            lines.append(f"rank {token or '-'} {value.rank_table[mask]}")
        return "\n".join(lines) + "\n"
    if isinstance(value, Multigraph):
        lines = ["graph v1", f"vertices {value.vertex_count}"]
        for lbl, ends in value.edges:
            if len(ends) == 2:
                lines.append(f"edge {lbl} {ends[0]} {ends[1]}")
            elif len(ends) == 1:
                lines.append(f"loop {lbl} {ends[0]}")
            else:
                lines.append(f"freeloop {lbl}")
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def parse_text(text):
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, "empty file")
    head = lines[0].strip()
    if head == "polymatroid v1":
        return _parse_polymatroid(lines)
    if head == "graph v1":
        return _parse_graph(lines)
    raise ParseError(1, f"unknown header {head!r}")


def parse(path):
    return parse_text(Path(path).read_text(encoding="utf-8"))


def _parse_polymatroid(lines):
    if len(lines) < 2 or not lines[1].startswith("elements"):
        raise ParseError(2, "expected an 'elements' line")
    elements = lines[1].split()[1:]
    seen = set()
    for e in elements:
        if "," in e or e == "-":
            raise ParseError(2, f"bad label {e!r}")
        if e in seen:
            raise ParseError(2, f"duplicate label {e!r}")
        seen.add(e)
    n = len(elements)
    pos = {e: i for i, e in enumerate(elements)}
    expected = 1 << n
    body = lines[2:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != expected:
        raise ParseError(
            len(lines), f"expected {expected} rank lines, found {len(body)}"
        )
    table = []
    for off, line in enumerate(body):
        line_no = off + 3
        parts = line.split()
        if len(parts) != 3 or parts[0] != "rank":
            raise ParseError(line_no, "expected 'rank <subset> <int>'")
        token, val = parts[1], parts[2]
        mask = 0
        if token != "-":
            for lbl in token.split(","):
                if lbl not in pos:
                    raise ParseError(line_no, f"unknown element {lbl!r}")
                bit = 1 << pos[lbl]
                if mask & bit:
                    raise ParseError(line_no, f"repeated element {lbl!r}")
                mask |= bit
        if mask != off:
            raise ParseError(line_no, "rank lines out of bitmask order")
        try:
            table.append(int(val))
        except ValueError:
            raise ParseError(line_no, f"bad rank value {val!r}") from None
    return validate(elements, table)


def _parse_graph(lines):
    if len(lines) < 2 or not lines[1].startswith("vertices"):
        raise ParseError(2, "expected a 'vertices' line")
    parts = lines[1].split()
    if len(parts) != 2 or not parts[1].isdigit():
        raise ParseError(2, "expected 'vertices <count>'")
    k = int(parts[1])
    edges = []
    for off, line in enumerate(lines[2:]):
        line_no = off + 3
        if not line.strip():
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "edge" and len(parts) == 4:
                edges.append((parts[1], (int(parts[2]), int(parts[3]))))
            elif kind == "loop" and len(parts) == 3:
                edges.append((parts[1], (int(parts[2]),)))
            elif kind == "freeloop" and len(parts) == 2:
                edges.append((parts[1], ()))
            else:
                raise ParseError(line_no, f"bad graph line {line!r}")
        except ValueError:
            raise ParseError(line_no, f"bad vertex id in {line!r}") from None
    try:
        return Multigraph(k, tuple(edges))
    except PolymatroidError as exc:
        raise ParseError(len(lines), str(exc)) from None


def _load_polymatroid(path, graph_mode):
    value = parse(path)
    if isinstance(value, Multigraph):
        return cycle_matroid(value) if graph_mode == "cycle" else boolean_from_graph(value)
    return value


# -- report rendering ----------------------------------------------------------


def _witness_dict(w):
    d = {
        "contract": sorted(w.contract_set),
        "delete": sorted(w.delete_set),
        "compressions": [
            {"pair": sorted(pair), "compressed": z} for pair, z in w.compression_chain
        ],
        "final_compactify": w.final_compactify,
    }
    if w.relabel is not None:
        d["relabel"] = {"from": w.relabel[0], "to": w.relabel[1]}
    return d


def _outcome_dict(outcome):
    if isinstance(outcome, OutcomeContract):
        return {"type": "contract", "element": outcome.element, "clause": "i"}
    if isinstance(outcome, OutcomeCompactifiedDelete):
        return {"type": "compactified_delete", "element": outcome.element, "clause": "ii"}
    if isinstance(outcome, OutcomeSeriesCompress):
        return {
            "type": "series_compress",
            "pair": sorted(outcome.pair),
            "compressed": list(outcome.compressed),
            "clause": "iii",
        }
    if isinstance(outcome, OutcomeWheelOrWhirl):
        return {
            "type": "wheel_or_whirl",
            "kind": outcome.kind,
            "size": outcome.size,
            "clause": "iv",
        }
    raise TypeError(f"unknown outcome {outcome!r}")


def _print_json(obj, out):
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _emit_splitter_result(result, as_json, out):
    if isinstance(result, CounterexampleReport):
        if as_json:
            _print_json(
                {
                    "result": "counterexample",
                    "theorem": result.theorem,
                    "matrix": [
                        {
                            "subject": list(s) if isinstance(s, tuple) else s,
                            "move": mv,
                            "reason": why,
                        }
                        for s, mv, why in result.failure_matrix
                    ],
                    "wheel_whirl": result.wheel_whirl_reason,
                },
                out,
            )
        else:
            out.write("counterexample\n")
            for s, mv, why in result.failure_matrix:
                subject = ",".join(s) if isinstance(s, tuple) else s
                out.write(f"  {subject} {mv}: {why}\n")
            out.write(f"  wheel/whirl: {result.wheel_whirl_reason}\n")
        return 1
    cert = result
    od = _outcome_dict(cert.outcome)
    if as_json:
        payload = {
            "result": "certificate",
            "theorem": cert.theorem,
            "outcome": od,
            "witness": _witness_dict(cert.witness) if cert.witness else None,
            "three_connectivity_check": cert.three_connectivity_check,
        }
        if cert.reduced_exhibit is not None:
            payload["reduced_exhibit"] = {
                "moves": [list(mv) for mv in cert.reduced_exhibit.moves],
                "witness": _witness_dict(cert.reduced_exhibit.witness),
            }
        _print_json(payload, out)
    else:
        if od["type"] == "contract":
            out.write(f"outcome (i): contraction of {od['element']}\n")
        elif od["type"] == "compactified_delete":
            out.write(f"outcome (ii): compactified deletion of {od['element']}\n")
        elif od["type"] == "series_compress":
            out.write(
                "outcome (iii): series compression in pair "
                f"{','.join(od['pair'])} (members {','.join(od['compressed'])})\n"
            )
        else:
            out.write(f"outcome (iv): {od['kind']} of rank {od['size']}\n")
        if cert.reduced_exhibit is not None:
            moves = "; ".join(f"{op} {e}" for op, e in cert.reduced_exhibit.moves)
            out.write(f"two-move reduction: {moves}\n")
    return 0


# -- subcommands ----------------------------------------------------------------


class _Pipeline(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        steps = getattr(namespace, "pipeline", None)
        if steps is None:
            steps = []
            namespace.pipeline = steps
        steps.append((self.dest, values))


def _subset(arg):
    return [s for s in arg.split(",") if s]


def _cmd_validate(args, out):
    value = parse(args.file)
    if isinstance(value, Multigraph):
        value = (
            cycle_matroid(value) if args.graph_mode == "cycle" else boolean_from_graph(value)
        )
        validate(value.elements, value.rank_table)
    out.write("ok\n")
    return 0


def _cmd_info(args, out):
    m = _load_polymatroid(args.file, args.graph_mode)
    kinds = {e: element_kind(m, e).value for e in m.elements}
    lambdas = {e: conn.lam(m, [e]) for e in m.elements}
    prickly = [sorted(c.z) for c in conn.prickly_separators(m)]
    tris = sorted(tuple(sorted(t)) for t in conn.triangles(m))
    trias = sorted(tuple(sorted(t)) for t in conn.triads(m))
    fan_records = conn.fans(m)
    if args.json:
        _print_json(
            {
                "elements": list(m.elements),
                "rank": m.total_rank(),
                "kinds": kinds,
                "singleton_lambda": lambdas,
                "two_connected": conn.is_2_connected(m),
                "three_connected": conn.is_3_connected(m),
                "compact": is_compact(m),
                "prickly": prickly,
                "triangles": [list(t) for t in tris],
                "triads": [list(t) for t in trias],
                "fans": [
                    {"points": list(f.points), "start": f.start} for f in fan_records
                ],
            },
            out,
        )
        return 0
    out.write("elements:" + "".join(" " + e for e in m.elements) + "\n")
    out.write(f"rank: {m.total_rank()}\n")
    for e in m.elements:
        out.write(f"element {e}: {kinds[e]}, lambda {lambdas[e]}\n")
    out.write(f"two_connected: {str(conn.is_2_connected(m)).lower()}\n")
    out.write(f"three_connected: {str(conn.is_3_connected(m)).lower()}\n")
    out.write(f"compact: {str(is_compact(m)).lower()}\n")
    out.write("prickly: " + (" | ".join(",".join(z) for z in prickly) or "-") + "\n")
    out.write("triangles: " + (" | ".join(",".join(t) for t in tris) or "-") + "\n")
    out.write("triads: " + (" | ".join(",".join(t) for t in trias) or "-") + "\n")
    out.write(
        "fans: "
        + (" | ".join(",".join(f.points) + f"({f.start})" for f in fan_records) or "-")
        + "\n"
    )
    return 0


def _cmd_apply(args, out):
    m = _load_polymatroid(args.file, args.graph_mode)
    for op, value in getattr(args, "pipeline", None) or []:
        if op == "delete":
            m = delete(m, _subset(value))
        elif op == "contract":
            m = contract(m, _subset(value))
        elif op == "compress":
            m = compress(m, value)
        elif op == "compactify_element":
            m = compactify_element(m, value)
        elif op == "compactified_delete":
            m = compactified_delete(m, _subset(value))
        elif op == "compactify":
            m = compactify(m)
        elif op == "dual":
            m = dual(m)
        elif op == "relabel":
            frm, _, to = value.partition("=")
            if not to:
                raise ParseError(0, f"bad relabel spec {value!r}")
            m = relabel(m, {frm: to})
    text = serialize(m)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


def _cmd_iso(args, out):
    m1 = _load_polymatroid(args.file_a, args.graph_mode)
    m2 = _load_polymatroid(args.file_b, args.graph_mode)
    w = is_isomorphic(m1, m2)
    if args.json:
        _print_json({"isomorphic": w is not None, "mapping": w.mapping if w else None}, out)
    elif w is None:
        out.write("not isomorphic\n")
    else:
        out.write(
            "isomorphic: " + " ".join(f"{a}->{b}" for a, b in sorted(w.mapping.items())) + "\n"
        )
    return 0 if w is not None else 1


def _cmd_minor(args, out):
    m = _load_polymatroid(args.host, args.graph_mode)
    n = _load_polymatroid(args.minor, args.graph_mode)
    mode = "up_to_iso" if args.mode == "iso" else "labelled"
    if args.kind == "c":
        w = minors.is_c_minor(m, n, mode)
    elif args.kind == "s":
        w = minors.is_s_minor(m, n, mode)
    else:
        w = minors.special_n_minor(m, n)
    if args.json:
        _print_json({"found": w is not None, "witness": _witness_dict(w) if w else None}, out)
    elif w is None:
        out.write("no witness\n")
    else:
        out.write(f"contract: {','.join(sorted(w.contract_set)) or '-'}\n")
        out.write(f"delete: {','.join(sorted(w.delete_set)) or '-'}\n")
        for pair, z in w.compression_chain:
            out.write(f"compress: {z} (pair {','.join(sorted(pair))})\n")
        if w.relabel:
            out.write(f"relabel: {w.relabel[0]}->{w.relabel[1]}\n")
    return 0 if w is not None else 1


def _cmd_verify_splitter(args, out):
    m = _load_polymatroid(args.host, args.graph_mode)
    n = _load_polymatroid(args.minor, args.graph_mode)
    if args.theorem == "c":
        result = splitter.verify_splitter_c(m, n, jobs=args.jobs)
    else:
        result = splitter.verify_splitter_s(m, n, jobs=args.jobs)
    return _emit_splitter_result(result, args.json, out)


def _cmd_verify_wwt(args, out):
    m = _load_polymatroid(args.file, args.graph_mode)
    result = splitter.verify_wwt(m)
    if isinstance(result, CounterexampleReport):
        if args.json:
            _print_json(
                {
                    "result": "counterexample",
                    "matrix": [
                        {"subject": s, "move": mv, "reason": why}
                        for s, mv, why in result.failure_matrix
                    ],
                },
                out,
            )
        else:
            out.write("counterexample\n")
        return 1
    if args.json:
        payload = {"result": "certificate", "outcome": result.outcome}
        if result.outcome == 1:
            payload["element"] = result.element
            payload["move"] = result.move
        elif result.outcome == 2:
            payload["kind"] = result.kind
            payload["size"] = result.size
        else:
            payload["prickly_sets"] = [list(z) for z in result.prickly_sets]
            payload["compress_checks"] = [
                {"element": z, "three_connected": t, "pure": p}
                for z, t, p in result.compress_checks
            ]
        _print_json(payload, out)
    else:
        if result.outcome == 1:
            out.write(f"outcome (i): {result.move} {result.element}\n")
        elif result.outcome == 2:
            out.write(f"outcome (ii): {result.kind} of rank {result.size}\n")
        else:
            sets = " | ".join(",".join(z) for z in result.prickly_sets)
            out.write(f"outcome (iii): pure with prickly sets {sets}\n")
    return 0


def _cmd_enumerate(args, out):
    insts = list(
        enumerate_small(args.n, filter=args.filter)
        if args.jobs <= 1
        else _enumerate_parallel(args.n, args.filter, args.jobs)
    )
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, m in enumerate(insts):
            (outdir / f"pm_{args.n}_{i:05d}.pm").write_text(
                serialize(m), encoding="utf-8"
            )
    out.write(f"{len(insts)}\n")
    return 0


def _enumerate_parallel(n, filter, jobs):
    from .construct import enumerate_small_parallel

    return enumerate_small_parallel(n, filter=filter, jobs=jobs)


def _cmd_identities(args, out):
    m = _load_polymatroid(args.file, args.graph_mode)
    report = splitter.identity_suite(m)
    if args.json:
        _print_json(
            {
                "all_passed": report.all_passed,
                "results": {
                    name: {
                        "checks": r.checks,
                        "failures": r.failures,
                        "first_failure": r.first_failure,
                    }
                    for name, r in report.results.items()
                },
            },
            out,
        )
    else:
        for line in report.summary_lines():
            out.write(line + "\n")
    return 0 if report.all_passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pm", description="integer 2-polymatroid toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, graph_mode=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if graph_mode:
            g = p.add_mutually_exclusive_group()
            g.add_argument(
                "--boolean",
                dest="graph_mode",
                action="store_const",
                const="boolean",
                help="interpret graph files through vertex-incidence rank",
            )
            g.add_argument(
                "--cycle",
                dest="graph_mode",
                action="store_const",
                const="cycle",
                help="interpret graph files through the cycle matroid",
            )
            p.set_defaults(graph_mode="boolean")

    p = sub.add_parser("validate", help="check a file against the axioms")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("info", help="kinds, connectivity, prickly sets, fans")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("apply", help="apply operations left to right")
    p.add_argument("file")
    p.add_argument("--delete", dest="delete", action=_Pipeline)
    p.add_argument("--contract", dest="contract", action=_Pipeline)
    p.add_argument("--compress", dest="compress", action=_Pipeline)
    p.add_argument("--compactify-element", dest="compactify_element", action=_Pipeline)
    p.add_argument(
        "--compactified-delete", dest="compactified_delete", action=_Pipeline
    )
    p.add_argument(
        "--compactify", dest="compactify", action=_Pipeline, nargs=0
    )
    p.add_argument("--dual", dest="dual", action=_Pipeline, nargs=0)
    p.add_argument("--relabel", dest="relabel", action=_Pipeline)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("iso", help="isomorphism test")
    p.add_argument("file_a")
    p.add_argument("file_b")
    common(p)
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("minor", help="minor search with witness")
    p.add_argument("host")
    p.add_argument("minor")
    p.add_argument("--kind", choices=["c", "s", "special"], default="c")
    p.add_argument("--mode", choices=["labelled", "iso"], default="labelled")
    common(p)
    p.set_defaults(func=_cmd_minor)

    p = sub.add_parser("verify-splitter", help="run a splitter verifier")
    p.add_argument("host")
    p.add_argument("minor")
    p.add_argument("--theorem", choices=["c", "s"], default="c")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_verify_splitter)

    p = sub.add_parser("verify-wwt", help="run the single-instance verifier")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_verify_wwt)

    p = sub.add_parser("enumerate", help="enumerate small instances")
    p.add_argument("-n", type=int, required=True)
    p.add_argument(
        "--filter",
        choices=["all", "two_connected", "three_connected", "compact"],
        default="all",
    )
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    common(p, graph_mode=False)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("identities", help="evaluate the identity catalog")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_identities)

    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args, out)
    except (ParseError, HypothesisViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PolymatroidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())
