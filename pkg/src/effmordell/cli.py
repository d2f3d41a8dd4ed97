"""Command line interface.

Exit status: 0 on success, 2 when tau <= 0 makes the height bound
inapplicable, 1 on any error.  ``@example`` names the bundled dossier.
"""
from __future__ import annotations

import argparse
import sys

from . import angles, dossier, fibre
from .errors import EffMordellError, ValidationError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INAPPLICABLE = 2


def _cmd_validate(args):
    D = dossier.load_dossier(args.file)
    print(f"{D.label}: ok ({len(D.fibres)} bad fibre(s))")
    for F in D.fibres:
        rep = fibre.validate_fibre(F, D.genus)
        print(f"  N(p) = {F.prime_norm}: {F.size} components, mu_p = {rep.mu_p}, genus from fibre = {rep.genus_from_fibre}")
    return EXIT_OK


def _cmd_phi(args):
    D = dossier.load_dossier(args.file)
    for fr in dossier.fibre_results(D):
        for k, v in sorted(fr.self_intersections.items()):
            print(f"Xi_{k + 1}({fr.prime_norm}) self-intersection = {v}")
        print(f"phi_p({fr.prime_norm}) = {fr.phi_p}")
    return EXIT_OK


def _cmd_tau(args):
    t = angles.tau(args.g, args.r, args.n)
    print(f"tau = {t.tau!r}")
    if t.cos_theta_lower is not None:
        print(f"cos_theta_lower = {t.cos_theta_lower!r}")
    print(f"method = {t.method}")
    print(f"conservative = {str(t.conservative).lower()}")
    return EXIT_OK if t.applicable else EXIT_INAPPLICABLE


def _cmd_bound(args):
    result = dossier.run_pipeline(dossier.load_dossier(args.file), search=False)
    out = dossier.render_json(result) if args.format == "json" else dossier.render_text(result)
    sys.stdout.write(out)
    return EXIT_OK if result.applicable else EXIT_INAPPLICABLE


def _cmd_search(args):
    D = dossier.load_dossier(args.file)
    s = dossier.run_search(D, args.bound, jobs=args.jobs, backend=args.backend)
    print(f"search bound {s.bound}, group order {s.group_order}, {len(s.points)} point(s)")
    for P in s.points:
        tag = "trivial" if P in s.trivial else "nontrivial"
        print(f"{P} {tag}-stabilizer")
    return EXIT_OK


def _cmd_report(args):
    result = dossier.run_pipeline(dossier.load_dossier(args.file), bound=args.bound,
                                  jobs=args.jobs, backend=args.backend, search=not args.no_search)
    out = dossier.render_json(result) if args.format == "json" else dossier.render_text(result)
    sys.stdout.write(out)
    return EXIT_OK if result.applicable else EXIT_INAPPLICABLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="effmordell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a dossier and check every fibre")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("phi", help="fibral invariants phi_p and the per-component self-intersections")
    p.add_argument("file")
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("tau", help="the angle constant tau(g, r, n)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_tau)

    p = sub.add_parser("bound", help="M(X), the Neron-Tate bound and the x-height bound")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_bound)

    for name, func, help_ in (("search", _cmd_search, "enumerate and classify rational points"),
                              ("report", _cmd_report, "full pipeline report")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--bound", type=int, default=None, help="override the dossier search_bound")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--backend", choices=("numba", "numpy"), default=None)
        if name == "report":
            p.add_argument("--format", choices=("text", "json"), default="text")
            p.add_argument("--no-search", action="store_true")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print("validation failed:", file=sys.stderr)
        for failure in exc.failures:
            print(f"  {failure}", file=sys.stderr)
        return EXIT_ERROR
    except (EffMordellError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
