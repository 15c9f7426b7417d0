"""Command line entry point: ``softtop <command> ...``.

Exit status is 0 when every check passes, 1 when a mathematical check fails
(the report carries the witness) and 2 on usage or parse errors.  Every
command accepts ``--json``; the JSON report holds the same fields as the
text report.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Sequence

from softtop import io, oracle
from softtop.continuity import METHODS, is_continuous
from softtop.embedding import verify_embedding_lemma
from softtop.errors import AxiomViolation, SoftTopError
from softtop.fuzz import run_fuzz
from softtop.oracle import OracleConfig
from softtop.product_topology import product_topology, projection_mapping
from softtop.topology import closure, verify_axioms

METHOD_FLAGS = {"pointwise": "pointwise", "open": "open_preimage", "closed": "closed_preimage"}


class Report:
    """Ordered fields plus a pass/fail status."""

    def __init__(self, command: str) -> None:
        self.fields: dict[str, Any] = {"command": command}
        self.ok = True

    def __setitem__(self, key: str, value: Any) -> None:
        self.fields[key] = value

    def check(self, name: str, passed: bool, witness: Any = None) -> None:
        entry: dict[str, Any] = {"passed": bool(passed)}
        if not passed and witness is not None:
            entry["witness"] = witness
        self.fields.setdefault("checks", {})[name] = entry
        self.ok = self.ok and bool(passed)

    def as_json(self) -> dict[str, Any]:
        return {**self.fields, "status": "pass" if self.ok else "fail"}


def _render(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, v in value.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{key}:")
            for item in v:
                lines.append(f"{pad}  -")
                lines.extend(_render(item, indent + 2))
        elif isinstance(v, list):
            lines.append(f"{pad}{key}: [{', '.join(_scalar(x) for x in v)}]")
        else:
            lines.append(f"{pad}{key}: {_scalar(v)}")
    return lines


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _emit(report: Report, as_json: bool) -> int:
    data = report.as_json()
    if as_json:
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(_render(data)) + "\n")
    return 0 if report.ok else 1


# --- commands ---------------------------------------------------------------


def cmd_check_topology(args: argparse.Namespace) -> Report:
    r = Report("check-topology")
    r["space"] = args.space
    try:
        S = io.parse_space(args.space)
    except AxiomViolation as exc:
        r.check("soft topology axioms", False, str(exc))
        return r
    r["universe"] = list(S.ctx.universe)
    r["params"] = list(S.ctx.params)
    r["open_sets"] = len(S.opens)
    r["closed_sets"] = len(S.topology.closed)
    verdict = verify_axioms(S.ctx, S.opens)
    r.check("soft topology axioms", verdict.ok, str(verdict))
    return r


def cmd_closure(args: argparse.Namespace) -> Report:
    r = Report("closure")
    S, named = io.parse_space_with_names(args.space)
    if args.set not in named:
        raise SoftTopError(f"no soft set named {args.set!r} in {args.space}")
    F = named[args.set]
    cl = closure(S, F)
    via_points = oracle.closure_via_adherence(S, F)
    r["set"] = args.set
    r["soft_set"] = str(F)
    r["closure"] = str(cl)
    r["closed"] = S.topology.is_closed(F)
    r.check("closure equals the soft set of adherent points", cl == via_points, str(via_points))
    return r


def cmd_continuity(args: argparse.Namespace) -> Report:
    r = Report("continuity")
    doc = io.mapping_document(io._load(args.mapping))
    src_path = args.src or (doc.src and str(io.resolve(args.mapping, doc.src)))
    dst_path = args.dst or (doc.dst and str(io.resolve(args.mapping, doc.dst)))
    if not src_path or not dst_path:
        raise SoftTopError("source and target spaces are required (--src/--dst or in the mapping document)")
    X, Y = io.parse_space(src_path), io.parse_space(dst_path)
    m = io.build_mapping(doc, X.ctx, Y.ctx)
    methods = METHODS if args.method == "all" else (METHOD_FLAGS[args.method],)
    r["mapping"] = args.mapping
    r["injective"] = m.injective
    r["surjective"] = m.surjective
    verdicts = {}
    for method in methods:
        rep = is_continuous(m, X, Y, method)
        verdicts[method] = rep.verdict
        r.check(f"continuous ({method.replace('_', ' ')})", rep.verdict, None if rep.witness is None else str(rep.witness))
    if len(methods) > 1:
        r.check("continuity criteria agree", len(set(verdicts.values())) == 1, verdicts)
    return r


def cmd_product(args: argparse.Namespace) -> Report:
    r = Report("product")
    spaces = [io.parse_space(p) for p in args.spaces]
    prod = product_topology(spaces)
    P = prod.ctx
    r["factors"] = list(args.spaces)
    r["elements"] = P.n_elems
    r["params"] = P.n_params
    r["open_sets"] = len(prod.opens)
    for via in ("base", "subbase"):
        other = product_topology(spaces, via=via)
        r.check(f"{'n-slab base' if via == 'base' else 'slab subbase'} gives the projection initial topology",
                other.topology == prod.topology)
    for i, S in enumerate(spaces):
        rep = is_continuous(projection_mapping(P, i), prod, S)
        r.check(f"projection {i} continuous", rep.verdict, None if rep.witness is None else str(rep.witness))
    if args.emit:
        io.write_space(prod, args.emit)
        r["emitted"] = args.emit
    return r


def cmd_embed_lemma(args: argparse.Namespace) -> Report:
    r = Report("embed-lemma")
    X, targets = io.parse_lemma_config(args.config)
    rep = verify_embedding_lemma(X, targets, raise_on_violation=False)
    cert = rep.diagonal
    sep = rep.separation
    r["targets"] = len(targets)
    hyp: dict[str, Any] = {
        "mappings continuous": list(rep.maps_continuous),
        "separates points": sep.separates_points,
        "separates points from closed sets": sep.separates_points_from_closed,
    }
    if sep.points_witness:
        hyp["points not separated"] = [str(p) for p in sep.points_witness]
    if sep.closed_witness:
        C, p = sep.closed_witness
        hyp["point not separated from closed set"] = [str(p), str(C)]
    r["hypotheses"] = hyp
    certificate: dict[str, Any] = {
        "continuous": cert.continuous,
        "injective": cert.injective,
        "closed onto image": cert.closed_into_image,
        "route": cert.route,
        "overall": cert.overall,
    }
    if cert.witness is not None:
        certificate["closed set with non-closed image"] = str(cert.witness)
    r["certificate"] = certificate
    r["product route"] = rep.product_route
    r.check("hypotheses imply the diagonal mapping is an embedding", not rep.hypotheses or cert.overall)
    r.check(
        "diagonal image inside product of images",
        rep.diagonal_image_inclusion,
        None if rep.inclusion_witness is None else str(rep.inclusion_witness),
    )
    return r


def cmd_fuzz(args: argparse.Namespace) -> Report:
    cfg = OracleConfig(
        max_universe=args.max_universe,
        max_params=args.max_params,
        max_subbase=args.max_subbase,
        seed=args.seed,
        iterations=args.iters,
    )
    result = run_fuzz(cfg)
    r = Report("fuzz")
    for key in ("seed", "iterations", "max_universe", "max_params", "max_subbase"):
        r[key] = result[key]
    r["properties"] = result["properties"]
    for name, tally in result["properties"].items():
        r.check(name, tally["failed_instances"] == 0)
    if result["failures"]:
        r["failures"] = result["failures"]
    return r


COMMANDS = {
    "check-topology": cmd_check_topology,
    "closure": cmd_closure,
    "continuity": cmd_continuity,
    "product": cmd_product,
    "embed-lemma": cmd_embed_lemma,
    "fuzz": cmd_fuzz,
}


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="softtop", description="Finite soft topology checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-topology", parents=[common], help="validate a space document")
    p.add_argument("space")

    p = sub.add_parser("closure", parents=[common], help="closure of a named soft set")
    p.add_argument("space")
    p.add_argument("--set", required=True, help="soft set name from the document")

    p = sub.add_parser("continuity", parents=[common], help="check a soft mapping for continuity")
    p.add_argument("mapping")
    p.add_argument("--src", help="source space (defaults to the mapping document's 'src')")
    p.add_argument("--dst", help="target space (defaults to the mapping document's 'dst')")
    p.add_argument("--method", choices=[*METHOD_FLAGS, "all"], default="all")

    p = sub.add_parser("product", parents=[common], help="soft product of spaces")
    p.add_argument("spaces", nargs="+")
    p.add_argument("--emit", help="write the product space document here")

    p = sub.add_parser("embed-lemma", parents=[common], help="verify the embedding lemma on a configuration")
    p.add_argument("config")

    p = sub.add_parser("fuzz", parents=[common], help="seeded property checks on random instances")
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--iters", type=_positive, default=100)
    p.add_argument("--max-universe", type=_positive, default=3)
    p.add_argument("--max-params", type=_positive, default=2)
    p.add_argument("--max-subbase", type=_nonnegative, default=4)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8", newline="\n")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        report = COMMANDS[args.command](args)
    except (SoftTopError, ValueError) as exc:
        sys.stderr.write(f"softtop {args.command}: error: {exc}\n")
        return 2
    return _emit(report, args.json)


if __name__ == "__main__":
    sys.exit(main())
