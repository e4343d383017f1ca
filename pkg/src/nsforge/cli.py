"""Command-line surface: subcommands over the JSON wire formats.

Exit codes: 0 for a positive result, 1 for a well-posed negative answer
(for example a vanishing test that fails), 2 for any usage or input error.
Errors are emitted as one JSON document on stderr.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from . import jsonio
from .construct import (
    GluingSpec,
    PolarizedFactor,
    complementary_type,
    glue,
    is_realizable,
    standard_witness,
)
from .errors import NsforgeError, RangeError
from .exterior import check_class, check_class_mod_L, intersection_profile
from .errors import NotPrimitiveModL
from .humbert import eta_from_singular, humbert_relation, singular_from_eta
from .normend import analyze, norm_from_class, polynomial_certificate
from .riemann import (
    DEFAULT_TOL,
    PeriodMatrix,
    residual_matrix,
    scan_ppav,
    symbolic_relations,
    wedge_vanishes,
)
from .scan import EnumerationSpec, enumerate_classes
from .symplectic import act, random_symplectic


@dataclass
class CommandResult:
    status: str  # "ok" | "negative" | "error"
    payload: object
    diagnostics: list

    @property
    def exit_code(self):
        return {"ok": 0, "negative": 1, "error": 2}[self.status]


def _read_json(path):
    if path in (None, "-"):
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_type(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise RangeError(f"cannot parse type {text!r}")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="nsforge",
        description="Numerical divisor classes of abelian subvarieties: "
                    "detection, certification, and construction.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tau=False):
        p.add_argument("--in", dest="infile", help="input JSON file, '-' for stdin")
        p.add_argument("--out", dest="outfile", help="output file (default stdout)")
        p.add_argument("--n", type=int)
        p.add_argument("--u", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--bound", type=int)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--backend", choices=["exact", "float"], default=None,
                       help="force the period-matrix backend (float downgrades exact input)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--type", dest="type_divisors")
        p.add_argument("--word-length", type=int, default=12)
        if tau:
            p.add_argument("--tau", help="period matrix JSON file")
        return p

    common(sub.add_parser("profile", help="intersection numbers against the principal class"))
    common(sub.add_parser("check", help="profile certification and the mod-L invariants"))
    common(sub.add_parser("norm", help="norm matrix with polynomial certificates"))
    common(sub.add_parser("analyze", help="full subvariety report"))
    common(sub.add_parser("analytic", help="vanishing test against a period matrix"), tau=True)
    common(sub.add_parser("relations", help="polynomial relations on the half space"))
    common(sub.add_parser("glue", help="glue two polarized factors"))
    common(sub.add_parser("witness", help="standard witness or realizability check"))
    common(sub.add_parser("scan", help="detect bounded classes on a period matrix"), tau=True)
    common(sub.add_parser("enum", help="enumerate bounded candidate classes"))
    common(sub.add_parser("humbert", help="singular datum / class / relation dictionary"))
    p_act = common(sub.add_parser("act", help="apply an integral symplectic matrix"))
    p_act.add_argument("--s", dest="sfile", help="JSON file with {'S': [[...]]}")
    return parser


def _cmd_profile(args):
    eta = jsonio.two_form_from_json(_read_json(args.infile))
    prof = intersection_profile(eta)
    return CommandResult("ok", {"n": prof.n, "values": list(prof.values)}, [])


def _cmd_check(args):
    eta = jsonio.two_form_from_json(_read_json(args.infile))
    got = check_class(eta)
    if got is None:
        return CommandResult("negative", {"class": None}, ["profile does not certify"])
    u, d = got
    payload = {"u": u, "d": d}
    try:
        mod = check_class_mod_L(eta, u, d)
        payload["mod_L"] = {"congruence_ok": mod.congruence_ok, "qr_ok": mod.qr_ok}
    except NotPrimitiveModL:
        payload["mod_L"] = None
    return CommandResult("ok", payload, [])


def _cmd_norm(args):
    eta = jsonio.two_form_from_json(_read_json(args.infile))
    norm = norm_from_class(eta, args.u, args.d) if args.u and args.d else norm_from_class(eta)
    payload = jsonio.norm_to_json(norm)
    payload["certificate"] = polynomial_certificate(norm)
    return CommandResult("ok", payload, [])


def _cmd_analyze(args):
    eta = jsonio.two_form_from_json(_read_json(args.infile))
    return CommandResult("ok", jsonio.report_to_json(analyze(eta)), [])


def _load_tau(args):
    tau = jsonio.period_matrix_from_json(_read_json(args.tau))
    if args.backend == "float" and tau.backend == "exact":
        tau = tau.to_float()
    if args.backend == "exact" and tau.backend == "float":
        raise RangeError("cannot promote a float period matrix to the exact backend")
    return tau


def _cmd_analytic(args):
    eta = jsonio.two_form_from_json(_read_json(args.infile))
    if not args.tau:
        raise RangeError("analytic needs --tau")
    tau = _load_tau(args)
    vanishes = wedge_vanishes(eta, tau, tol=args.tol)
    residual = residual_matrix(eta, tau)
    payload = {
        "vanishes": vanishes,
        "residual": jsonio.complex_matrix_to_json(residual, tau.backend),
    }
    return CommandResult("ok" if vanishes else "negative", payload, [])


def _cmd_relations(args):
    eta = jsonio.two_form_from_json(_read_json(args.infile))
    return CommandResult("ok", jsonio.relation_set_to_json(symbolic_relations(eta)), [])


def _cmd_glue(args):
    obj = _read_json(args.infile)
    u = int(obj["u"])
    divisors = tuple(int(x) for x in obj["type"])
    tau_x = jsonio.period_matrix_from_json(obj["tauX"])
    tau_y = jsonio.period_matrix_from_json(obj["tauY"])
    n = tau_x.n + tau_y.n
    x_factor = PolarizedFactor(u, divisors, tau_x)
    y_factor = PolarizedFactor(n - u, complementary_type(n, u, divisors), tau_y)
    spec = GluingSpec(
        tuple(tuple(int(v) for v in row) for row in obj["f"]),
        tuple(tuple(int(v) for v in row) for row in obj["g"]),
    )
    tau, eta = glue(x_factor, y_factor, spec)
    payload = {"tau": jsonio.period_matrix_to_json(tau), "eta": jsonio.two_form_to_json(eta)}
    return CommandResult("ok", payload, [])


def _cmd_witness(args):
    if args.infile:
        eta = jsonio.two_form_from_json(_read_json(args.infile))
        result = is_realizable(eta)
        payload = {
            "realizable": bool(result),
            "tag": result.tag,
            "tau": jsonio.period_matrix_to_json(result.tau) if result.tau else None,
        }
        return CommandResult("ok" if result else "negative", payload, [])
    if not (args.n and args.u and args.type_divisors):
        raise RangeError("witness needs --in, or --n --u --type")
    tau, eta = standard_witness(args.n, args.u, _parse_type(args.type_divisors))
    payload = {"tau": jsonio.period_matrix_to_json(tau), "eta": jsonio.two_form_to_json(eta)}
    return CommandResult("ok", payload, [])


def _cmd_scan(args):
    if not args.tau:
        raise RangeError("scan needs --tau")
    if args.u is None or args.d is None or args.bound is None:
        raise RangeError("scan needs --u --d --bound")
    tau = _load_tau(args)
    reports = scan_ppav(tau, args.u, args.d, args.bound, tol=args.tol, jobs=args.jobs)
    return CommandResult("ok", {"classes": [jsonio.report_to_json(r) for r in reports]}, [])


def _cmd_enum(args):
    if args.infile:
        obj = _read_json(args.infile)
        spec = EnumerationSpec(
            int(obj["n"]), int(obj["u"]), int(obj["d"]), int(obj["bound"]),
            require_idempotent=bool(obj.get("require_idempotent", False)),
            require_type=tuple(obj["require_type"]) if obj.get("require_type") else None,
        )
    else:
        if args.n is None or args.u is None or args.d is None or args.bound is None:
            raise RangeError("enum needs --in, or --n --u --d --bound")
        spec = EnumerationSpec(args.n, args.u, args.d, args.bound)
    if args.jobs and args.jobs > 1:
        classes = _enum_parallel(spec, args.jobs)
    else:
        classes = enumerate_classes(spec)
    return CommandResult("ok", {"classes": [jsonio.two_form_to_json(e) for e in classes]}, [])


def _enum_block(payload):
    spec_fields, firsts = payload
    spec = EnumerationSpec(*spec_fields)
    return [jsonio.two_form_to_json(e) for e in enumerate_classes(spec, first_entry_values=firsts)]


def _enum_parallel(spec, jobs):
    import concurrent.futures

    span = list(range(-spec.bound, spec.bound + 1))
    chunks = [sorted(span[i::jobs]) for i in range(jobs)]
    chunks = [c for c in chunks if c]
    fields = (spec.n, spec.u, spec.d, spec.bound, spec.require_idempotent,
              spec.require_type, spec.use_prefilters, spec.allow_large)
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as ex:
        blocks = list(ex.map(_enum_block, [(fields, c) for c in chunks]))
    merged = []
    for b in blocks:
        merged.extend(b)
    from .jsonio import two_form_from_json

    classes = [two_form_from_json(obj) for obj in merged]
    classes.sort(key=lambda e: e.coefficient_vector())
    return classes


def _cmd_humbert(args):
    obj = _read_json(args.infile)
    if "a" in obj and "b" in obj:
        datum = jsonio.singular_from_json(obj)
        eta = eta_from_singular(datum)
        payload = {
            "datum": jsonio.singular_to_json(datum),
            "eta": jsonio.two_form_to_json(eta),
            "relation": jsonio.relation_set_to_json(humbert_relation(datum)),
            "locus": jsonio.relation_set_to_json(symbolic_relations(eta)),
        }
        return CommandResult("ok", payload, [])
    eta = jsonio.two_form_from_json(obj)
    datum = singular_from_eta(eta)
    payload = {
        "datum": jsonio.singular_to_json(datum),
        "locus": jsonio.relation_set_to_json(symbolic_relations(eta)),
    }
    return CommandResult("ok", payload, [])


def _cmd_act(args):
    obj = _read_json(args.infile)
    if "eta" in obj:
        eta = jsonio.two_form_from_json(obj["eta"])
        s_rows = obj.get("S")
    else:
        eta = jsonio.two_form_from_json(obj)
        s_rows = None
    if s_rows is None and args.sfile:
        s_rows = _read_json(args.sfile)["S"]
    if s_rows is not None:
        s_mat = [[int(v) for v in row] for row in s_rows]
    else:
        s_mat = [list(r) for r in
                 random_symplectic(eta.n, args.seed, args.word_length).mat]
    moved = act(s_mat, eta)
    return CommandResult("ok", {"eta": jsonio.two_form_to_json(moved), "S": s_mat}, [])


_COMMANDS = {
    "profile": _cmd_profile,
    "check": _cmd_check,
    "norm": _cmd_norm,
    "analyze": _cmd_analyze,
    "analytic": _cmd_analytic,
    "relations": _cmd_relations,
    "glue": _cmd_glue,
    "witness": _cmd_witness,
    "scan": _cmd_scan,
    "enum": _cmd_enum,
    "humbert": _cmd_humbert,
    "act": _cmd_act,
}


def run(argv):
    """Parse and execute; returns a CommandResult without touching streams."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:  # --help and friends
            raise
        return CommandResult("error", {"error": {"code": "Usage", "message": "bad arguments"}}, [])
    try:
        return _COMMANDS[args.command](args)
    except NsforgeError as exc:
        return CommandResult("error", {"error": {"code": exc.code, "message": str(exc)}}, [])
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        return CommandResult(
            "error",
            {"error": {"code": type(exc).__name__, "message": str(exc)}}, [])


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    outfile = None
    for i, token in enumerate(argv):
        if token == "--out" and i + 1 < len(argv):
            outfile = argv[i + 1]
        elif token.startswith("--out="):
            outfile = token[len("--out="):]
    result = run(argv)
    text = jsonio.dumps(result.payload)
    if result.status == "error":
        sys.stderr.write(text)
    elif outfile:
        with open(outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
