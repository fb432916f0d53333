"""Command-line front end.

Exit codes: 0 on success / affineness established, 1 on usage or
configuration errors, 2 when a result is inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import b5
from .affineness import ALL_CRITERIA, BRAID_CRITERIA, verdict
from .classes import all_f_classes, cyclic_component, cyclic_neighbors, f_class_of, find_good, word_key
from .coxeter import GROUP_CAP, ROOT_CAP, CoxeterError, build_system, load_system, parse_automorphism

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


def _word_text(w) -> str:
    return ",".join(w.labels()) or "1"


def _system_and_aut(args):
    if args.matrix:
        W = load_system(args.matrix, root_cap=args.root_cap)
    elif args.type:
        W = build_system(args.type, root_cap=args.root_cap)
    else:
        raise CoxeterError("one of --type or --matrix is required")
    return W, parse_automorphism(W, args.aut)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def cmd_check(args) -> int:
    W, F = _system_and_aut(args)
    if args.word is None:
        raise CoxeterError("--word is required")
    w = W.parse_word(args.word)
    criteria = args.criteria.split(",") if args.criteria else ALL_CRITERIA
    v = verdict(w, F, criteria, d_max=args.dmax)
    if args.json:
        _emit(args, _dump(v.to_json()))
    else:
        data = v.to_json()
        lines = [f"element: {_word_text(w)} (length {w.length()})",
                 f"status: {data['status']}",
                 f"reduced support: {','.join(data['reduced_support']) or '-'}"]
        if data["reason"]:
            lines.append(f"reason: {data['reason']}" + (f" (d = {data['d']})" if data["d"] else ""))
        if data["path"]:
            lines.append("path: " + " -> ".join(",".join(p) or "1" for p in data["path"]))
        if data["witness"] is not None:
            witness = "".join("(" + ",".join(f) + ")" for f in data["witness"])
            lines.append(f"witness: {witness or '1'}")
        for a in data["attempts"]:
            lines.append(f"tried: {a}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if v.established else EXIT_INCONCLUSIVE


def class_records(W, F, max_group_size=GROUP_CAP, d_max=None) -> list[dict]:
    records = []
    for k, cls in enumerate(all_f_classes(W, F, max_group_size)):
        cert = find_good(cls, F)
        c_min = cls.sorted_c_min()
        components = 0
        remaining = set(c_min)
        while remaining:
            remaining -= cyclic_component(min(remaining, key=word_key), F)
            components += 1
        verdicts = [verdict(w, F, BRAID_CRITERIA, d_max=d_max) for w in c_min]
        records.append({
            "index": k,
            "representative": _word_text(cls.representative),
            "size": cls.size,
            "min_length": cls.min_length,
            "c_min_size": len(c_min),
            "c_min_components": components,
            "d": cls.d,
            "good": None if cert is None else _word_text(cert.element),
            "chain": None if cert is None else [W.subset_labels(I) for I in cert.chain],
            "verdicts": [{"element": _word_text(v.element), "status": v.status.value,
                          "reason": v.reason.kind if v.reason else None} for v in verdicts],
        })
    return records


def cmd_classes(args) -> int:
    W, F = _system_and_aut(args)
    records = class_records(W, F, args.max_group_size, args.dmax)
    if args.json:
        text = _dump(records)
    else:
        buf = io.StringIO()
        fields = ["index", "representative", "size", "min_length", "c_min_size",
                  "c_min_components", "d", "good", "chain", "established"]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in records:
            row = {f: r.get(f) for f in fields}
            row["chain"] = "|".join(",".join(I) for I in r["chain"]) if r["chain"] is not None else ""
            row["established"] = sum(v["status"] == "AffineEstablished" for v in r["verdicts"])
            writer.writerow(row)
        text = buf.getvalue()
    _emit(args, text)
    ok = all(r["good"] is not None and all(v["status"] == "AffineEstablished" for v in r["verdicts"])
             for r in records)
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def class_dot(cls, F) -> str:
    """DOT digraph of elementary cyclic shifts inside one class; C_min nodes doubled."""
    members = sorted(cls.members, key=word_key)
    ids = {w: f"n{i}" for i, w in enumerate(members)}
    lines = ["digraph cyclic_shift {"]
    for w in members:
        shape = "doublecircle" if w in cls.c_min else "ellipse"
        lines.append(f'  {ids[w]} [label="{_word_text(w)}", shape={shape}];')
    for w in members:
        for y in sorted(cyclic_neighbors(w, F), key=word_key):
            if y != w:
                lines.append(f"  {ids[w]} -> {ids[y]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_graph(args) -> int:
    W, F = _system_and_aut(args)
    if args.word is None:
        raise CoxeterError("--word is required")
    cls = f_class_of(W.parse_word(args.word), F)
    _emit(args, class_dot(cls, F))
    return EXIT_OK


def cmd_verify_b5(args) -> int:
    checks = b5.run_checks(args.word or b5.WORD)
    if args.json:
        _emit(args, _dump([c.to_json() for c in checks]))
    else:
        _emit(args, "".join(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}\n" for c in checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="type name such as A4, B5, D4, F4, G2, E6")
    common.add_argument("--matrix", help='JSON file {"labels": [...], "m": [[...]]}')
    common.add_argument("--aut", help="diagram automorphism as label pairs, e.g. s1:s3,s3:s1")
    common.add_argument("--word", help="comma-separated generator labels")
    common.add_argument("--dmax", type=int, help="largest twisted power scanned (default 2*d)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--max-group-size", type=int, default=GROUP_CAP)
    common.add_argument("--root-cap", type=int, default=ROOT_CAP)

    parser = argparse.ArgumentParser(prog="dlaffine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="affineness verdict for one element")
    p.add_argument("--criteria", help=f"comma-separated subset of {','.join(ALL_CRITERIA)}, in order")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("classes", parents=[common], help="atlas of all F-conjugacy classes (CSV, or --json)")
    p.set_defaults(func=cmd_classes)
    p = sub.add_parser("graph", parents=[common], help="DOT cyclic-shift graph of the class of --word")
    p.set_defaults(func=cmd_graph)
    p = sub.add_parser("verify-paper", parents=[common], help="replay the worked B5 example")
    p.set_defaults(func=cmd_verify_b5)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CoxeterError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
