"""Command-line front end: bound analysis, certificate construction,
strong-property checks, spectrum-preserving lifts, and the exhaustive
surveys, all with deterministic JSON output.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .graphs import Graph, complement, graph6_decode, is_tree
from .spectra import DEFAULT_TOL, ToleranceConfig, dump_matrix, load_matrix
from .bounds import bound_report
from .constructions import Certificate, CertificateError, certificate_bank, \
    verify_certificate
from .strong import LiftError, StrongPropertyError, lift_to_supergraph, \
    strong_property_check
from .families import build_Tmn_complement_certificate, \
    certify_tree_complement, classify_tree, q_tree_complement, recognize_high_q
from .conjecture import SurveyError, filter_order8, survey_order7, verdict


@dataclass
class CliConfig:
    """Resolved global options shared by every subcommand."""

    tol: ToleranceConfig
    seed: int = 0
    threads: int = 1
    output: str = "json"


class UsageError(ValueError):
    pass


def _emit(payload, cfg: CliConfig, out) -> None:
    if cfg.output == "text":
        out.write(_as_text(payload) + "\n")
    else:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _as_text(payload, prefix="") -> str:
    if isinstance(payload, dict):
        lines = []
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{prefix}{k}:")
                lines.append(_as_text(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(_as_text(v, prefix) for v in payload)
    return f"{prefix}{payload}"


def _graphs_from_args(args) -> list:
    texts = []
    if getattr(args, "graph6", None):
        texts.append(args.graph6)
    if getattr(args, "file", None):
        with open(args.file) as fh:
            texts.extend(line.strip() for line in fh if line.strip())
    if not texts:
        raise UsageError("one of --graph6 or --file is required")
    out = []
    for t in texts:
        try:
            out.append((t, graph6_decode(t)))
        except ValueError as exc:
            raise UsageError(f"--graph6 {t!r}: {exc}")
    return out


def _certificate_payload(cert: Certificate) -> dict:
    payload = cert.to_json()
    payload["matrix"] = dump_matrix(cert.matrix)
    return payload


def _cmd_analyze(args, cfg: CliConfig, out) -> int:
    reports = []
    for text, g in _graphs_from_args(args):
        family = {"high_q": recognize_high_q(g).to_json(),
                  "tree": classify_tree(g).to_json() if is_tree(g) else None}
        reports.append({"graph6": text,
                        "bounds": bound_report(g).to_json(),
                        "family": family,
                        "verdict": verdict(g).to_json()})
    _emit(reports if len(reports) > 1 else reports[0], cfg, out)
    return 0


def _cmd_certify(args, cfg: CliConfig, out) -> int:
    if args.target == "tree-complement":
        payloads = []
        code = 0
        for text, t in _graphs_from_args(args):
            if not is_tree(t):
                raise UsageError(f"--graph6 {text!r}: not a tree")
            value, case = q_tree_complement(t)
            try:
                cert = certify_tree_complement(t, cfg.tol)
            except CertificateError as exc:
                payloads.append({"graph6": text, "error": str(exc)})
                code = 1
                continue
            payloads.append({"graph6": text, "q": value, "case": case,
                             "certificate": None if cert is None
                             else _certificate_payload(cert)})
        _emit(payloads if len(payloads) > 1 else payloads[0], cfg, out)
        return code
    # triangle tadpole complement
    if args.m is None or args.n is None:
        raise UsageError("certify tmn requires --m and --n")
    try:
        cert = build_Tmn_complement_certificate(args.m, args.n, cfg.tol,
                                                seed=cfg.seed)
    except (CertificateError, LiftError, ValueError) as exc:
        _emit({"error": str(exc)}, cfg, out)
        return 1
    _emit(_certificate_payload(cert), cfg, out)
    return 0


def _cmd_ssp(args, cfg: CliConfig, out) -> int:
    A = load_matrix(args.matrix)
    rep = strong_property_check(A, args.mode.upper(), cfg.tol)
    payload = rep.to_json()
    if rep.witness is not None:
        payload["witness"] = dump_matrix(rep.witness)
    _emit(payload, cfg, out)
    return 0 if rep.holds else 1


def _cmd_lift(args, cfg: CliConfig, out) -> int:
    A = load_matrix(args.matrix)
    g = graph6_decode(args.graph6)
    try:
        M = lift_to_supergraph(A, g, cfg.tol, seed=cfg.seed,
                               mode=args.mode.upper())
    except (LiftError, StrongPropertyError) as exc:
        _emit({"error": str(exc)}, cfg, out)
        return 1
    _emit({"graph6": args.graph6, "mode": args.mode.upper(),
           "matrix": dump_matrix(M)}, cfg, out)
    return 0


def _cmd_survey(args, cfg: CliConfig, out) -> int:
    run = survey_order7 if args.order == 7 else filter_order8
    try:
        rep = run()
    except SurveyError as exc:
        payload = {"error": str(exc)}
        if exc.report is not None:
            payload["report"] = exc.report.to_json()
        _emit(payload, cfg, out)
        return 1
    if cfg.output == "csv":
        out.write(rep.to_csv())
    else:
        _emit(rep.to_json(), cfg, out)
    return 0


def _cmd_bank(args, cfg: CliConfig, out) -> int:
    bank = certificate_bank()
    if args.action == "list":
        _emit(sorted(bank), cfg, out)
        return 0
    failures = {}
    entries = {}
    for name in sorted(bank):
        try:
            cert = verify_certificate(bank[name], cfg.tol)
            entries[name] = cert.to_json()
        except CertificateError as exc:
            failures[name] = str(exc)
    _emit({"entries": entries, "failures": failures}, cfg, out)
    return 1 if failures else 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qng",
        description="bounds, certificates and surveys for the minimum "
                    "number of distinct eigenvalues of a graph")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for lift randomization (default 0)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker count for survey sharding")
    p.add_argument("--eig-tol", type=float, default=None)
    p.add_argument("--rank-tol", type=float, default=None)
    p.add_argument("--entry-floor", type=float, default=None)
    p.add_argument("--output", choices=("json", "csv", "text"),
                   default="json")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="bounds, family tags and verdict")
    pa.add_argument("--graph6")
    pa.add_argument("--file", help="one graph6 string per line")

    pc = sub.add_parser("certify", help="build a verified certificate")
    pc.add_argument("target", choices=("tree-complement", "tmn"))
    pc.add_argument("--graph6")
    pc.add_argument("--file")
    pc.add_argument("--m", type=int)
    pc.add_argument("--n", type=int)

    ps = sub.add_parser("ssp", help="strong property check of a matrix file")
    ps.add_argument("--matrix", required=True)
    ps.add_argument("--mode", choices=("ssp", "smp"), default="ssp")

    pl = sub.add_parser("lift", help="move a matrix to a spanning supergraph")
    pl.add_argument("--matrix", required=True)
    pl.add_argument("--graph6", required=True)
    pl.add_argument("--mode", choices=("ssp", "smp"), default="ssp")

    pv = sub.add_parser("survey", help="order-7 survey / order-8 filter")
    pv.add_argument("--order", type=int, choices=(7, 8), required=True)

    pb = sub.add_parser("bank", help="inspect the certificate bank")
    pb.add_argument("action", choices=("list", "verify"))
    return p


_COMMANDS = {"analyze": _cmd_analyze, "certify": _cmd_certify,
             "ssp": _cmd_ssp, "lift": _cmd_lift,
             "survey": _cmd_survey, "bank": _cmd_bank}


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    base = DEFAULT_TOL
    try:
        tol = ToleranceConfig(
            eig_tol=args.eig_tol if args.eig_tol is not None
            else base.eig_tol,
            rank_tol=args.rank_tol if args.rank_tol is not None
            else base.rank_tol,
            entry_floor=args.entry_floor if args.entry_floor is not None
            else base.entry_floor)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.threads < 1:
        print("--threads must be at least 1", file=sys.stderr)
        return 2
    cfg = CliConfig(tol=tol, seed=args.seed, threads=args.threads,
                    output=args.output)
    try:
        return _COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
