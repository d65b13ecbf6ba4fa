"""Command line front end.

Every command loads a TOML workspace, runs one computation or
verification, and prints a deterministic report.  Check lines have the
fixed shape ``CHECK <name>: PASS|FAIL <detail>``.  Exit status: 0 when
everything passes, 1 when a mathematical check fails or a computation
raises an expected failure, 2 for workspace or expression errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .descent import bidual_descent_check, is_invariant, verify_cover
from .errors import CorrformsError, ParseError, WorkspaceError
from .kaehler import equalizer_check, omega_module
from .textio import (field_from_text, format_form, format_presentation,
                     load_workspace)
from .transfer import (transfer_cycle, verify_composition,
                       verify_well_definedness)


class Report:
    """Accumulates output lines and named checks for one command."""

    def __init__(self, command):
        self.command = command
        self.lines = []
        self.checks = []

    def say(self, line):
        self.lines.append(line)

    def check(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), str(detail)))

    def extend(self, check_report):
        for name, ok, detail in check_report:
            self.check(name, ok, detail)

    @property
    def failed(self):
        return any(not ok for _, ok, _ in self.checks)

    def emit(self, as_json):
        if as_json:
            payload = {
                "command": self.command,
                "output": self.lines,
                "checks": [{"name": n, "ok": ok, "detail": d}
                           for n, ok, d in self.checks],
                "ok": not self.failed,
            }
            print(json.dumps(payload, sort_keys=True))
            return
        for line in self.lines:
            print(line)
        for name, ok, detail in self.checks:
            status = "PASS" if ok else "FAIL"
            if detail:
                print("CHECK %s: %s %s" % (name, status, detail))
            else:
                print("CHECK %s: %s" % (name, status))


def _base_hom(ws, variety, base_name):
    if variety.base is None:
        raise WorkspaceError(
            "variety %r declares no base; add base/base_images"
            % variety.name)
    base = ws.variety(base_name)
    if variety.base.source is not base.qring:
        raise WorkspaceError(
            "variety %r has a different declared base than %r"
            % (variety.name, base_name))
    return variety.base


def cmd_omega(ws, args, report):
    var = ws.variety(args.variety)
    base = None
    if args.base is not None:
        base = _base_hom(ws, var, args.base)
    module = omega_module(var.qring, args.p, base=base)
    report.say(format_presentation(var.qring, args.p, module, base=base))


def cmd_transfer(ws, args, report):
    cycle = ws.correspondence(args.correspondence)
    form = ws.form(args.form)
    if form.qring != cycle.target.qring:
        raise WorkspaceError(
            "form %r does not live on the target of %r"
            % (args.form, args.correspondence))
    out = transfer_cycle(cycle, form)
    report.say(format_form(out))


def cmd_verify_cover(ws, args, report):
    report.extend(verify_cover(ws.cover(args.name)))


def cmd_verify_descent(ws, args, report):
    report.extend(bidual_descent_check(ws.cover(args.name), args.p))


def cmd_verify_compose(ws, args, report):
    if args.name not in ws.fiber_witnesses:
        raise WorkspaceError("unknown fiber witness %r" % args.name)
    left, right, fw, samples = ws.fiber_witnesses[args.name]
    report.extend(verify_composition(left, right, fw, samples))


def cmd_verify_welldef(ws, args, report):
    if args.name not in ws.well_witnesses:
        raise WorkspaceError("unknown well-definedness witness %r" % args.name)
    corr, alt_cover, homs, f, samples = ws.well_witnesses[args.name]
    report.extend(verify_well_definedness(corr, alt_cover, homs, f, samples))


def cmd_verify_equalizer(ws, args, report):
    datum = ws.cover(args.name)
    res = equalizer_check(datum.inclusion, datum.basis)
    report.check("equalizer_rank", True, "restriction has rank %d" % res.rank)
    report.check(
        "equalizer", res.holds,
        "kernel gens %(kernel_gens)d, image gens %(image_gens)d, "
        "kernel in image %(kernel_in_image)s, image in kernel "
        "%(image_in_kernel)s" % res.detail)


def cmd_verify_counterexample(ws, args, report):
    datum = ws.cover(args.name)
    report.extend(verify_cover(datum))
    form = datum.invariant_form
    if form is None:
        report.check("invariant_form", False,
                     "cover declares no invariant form")
        return
    txt = format_form(form)
    fixed, witness = is_invariant(datum, form)
    report.check("invariant_form_invariant", fixed,
                 "%s is fixed by every group element" % txt if fixed
                 else "%s moves under %s" % (txt, witness))
    module = omega_module(datum.B, form.degree, base=datum.inclusion)
    vec = form.polynomial_vector()
    if vec is None:
        report.check("invariant_form_nonzero", False,
                     "form has no polynomial representative")
        return
    nonzero = not module.is_zero_element(vec)
    report.check(
        "invariant_form_nonzero", nonzero,
        "%s is %s in the relative differential module"
        % (txt, "nonzero" if nonzero else "zero"))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="corrforms",
        description="Exact transfers of differential forms along finite "
                    "correspondences of affine varieties.")
    parser.add_argument("--field", default=None, metavar="MINPOLY",
                        help="base-field minimal polynomial, overriding the "
                             "workspace [field] section")
    parser.add_argument("--order", choices=("degrevlex", "lex"),
                        default="degrevlex",
                        help="monomial order for workspace rings")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized specializations "
                             "(the exact algorithms used here ignore it)")
    parser.add_argument("--json", action="store_true",
                        help="print one JSON object instead of text lines")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("omega", help="print a differential-form module")
    p.add_argument("file")
    p.add_argument("variety")
    p.add_argument("p", type=int)
    p.add_argument("--base", default=None,
                   help="base variety name for relative differentials")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("transfer", help="transfer a form along a "
                                        "correspondence")
    p.add_argument("file")
    p.add_argument("correspondence")
    p.add_argument("form")
    p.set_defaults(func=cmd_transfer)

    v = sub.add_parser("verify", help="run a verification suite")
    vsub = v.add_subparsers(dest="verify_what", required=True)

    p = vsub.add_parser("cover", help="check a Galois cover datum")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(func=cmd_verify_cover)

    p = vsub.add_parser("descent",
                        help="check bidual descent along a cover")
    p.add_argument("file")
    p.add_argument("name")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_verify_descent)

    p = vsub.add_parser("compose",
                        help="check a composition fiber witness")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(func=cmd_verify_compose)

    p = vsub.add_parser("welldef",
                        help="check independence from the witness cover")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(func=cmd_verify_welldef)

    p = vsub.add_parser("equalizer",
                        help="check the etale equalizer property")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(func=cmd_verify_equalizer)

    p = vsub.add_parser("counterexample",
                        help="check the invariant-form counterexample data")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(func=cmd_verify_counterexample)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report(args.command if args.command != "verify"
                    else "verify %s" % args.verify_what)
    try:
        field = field_from_text(args.field) if args.field else None
        ws = load_workspace(args.file, order=args.order, field=field)
    except (WorkspaceError, ParseError) as e:
        print("ERROR %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 2
    try:
        args.func(ws, args, report)
    except (WorkspaceError, ParseError) as e:
        print("ERROR %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 2
    except CorrformsError as e:
        report.emit(args.json)
        print("ERROR %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1
    report.emit(args.json)
    return 1 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())
