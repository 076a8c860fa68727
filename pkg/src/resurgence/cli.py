"""Command-line front end.

Exit codes: 0 success (containment holds, all checks pass), 1 a failing
verdict or check, 2 bad flags or parameters, 3 resource cap reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .asymptotics import (
    Budget,
    CertificateMissing,
    HypothesisViolated,
    asymptotic_bracket,
    check_containment,
    resurgence_bracket,
    verify_theorem,
    waldschmidt_table,
)
from .fields import FieldSpec, NonPrimeField, QQ
from .groebner import ResourceCap
from .points import (
    BadN,
    CoincidentPoints,
    DegenerateParameter,
    NoLinesRecorded,
    NotPrime,
    PointConfiguration,
    RootsOfUnityUnavailable,
    all_but_one_config,
    chmn_config,
    fermat_config,
    incidence_audit,
    interpolation_profile,
    loads_config,
    points_hilbert_function,
)
from .poly import format_polynomial

COMMANDS = ("construct", "invariants", "containment", "waldschmidt", "resurgence", "verify", "audit")
THEOREMS = ("fermat", "chmn", "reg-lemma", "finite-field")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

_DOMAIN_ERRORS = (
    DegenerateParameter,
    CoincidentPoints,
    RootsOfUnityUnavailable,
    BadN,
    NotPrime,
    NonPrimeField,
    NoLinesRecorded,
    HypothesisViolated,
    CertificateMissing,
)


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resurgence", description="Symbolic powers of point ideals: containment, Waldschmidt and resurgence brackets.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="fermat | chmn | all-but-one | file:<path>")
    parser.add_argument("--config-file", help="same as --config file:<path>")
    parser.add_argument("--field", help="qq or fp:<p>")
    parser.add_argument("--theorem", choices=THEOREMS)
    parser.add_argument("--n", type=int)
    parser.add_argument("--t", help="parameter of the twelve-line configuration (integer, or a/b over qq)")
    parser.add_argument("--s", type=int)
    parser.add_argument("--N", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--r", type=int)
    parser.add_argument("--m-max", type=int, default=3)
    parser.add_argument("--r-max", type=int, default=4)
    parser.add_argument("--cases", help="comma separated subset of i,ii,iii")
    parser.add_argument("--family-t", type=int)
    parser.add_argument("--max-degree", type=int)
    parser.add_argument("--max-pairs", type=int)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--output", help="write the JSON report here instead of standard output")
    parser.add_argument("--no-timings", action="store_true", help="omit timings so reports are byte-for-byte reproducible")
    return parser


def _field(args, default: str | None = None) -> FieldSpec:
    text = args.field or default
    if text is None:
        raise UsageError("--field is required")
    try:
        return FieldSpec.parse(text)
    except NonPrimeField:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_t(text: str | None, field: FieldSpec):
    if text is None:
        raise UsageError("--t is required")
    try:
        if "/" in text:
            if field.characteristic:
                raise UsageError("rational --t is only accepted over qq")
            return Fraction(text)
        return field(int(text))
    except ValueError as exc:
        raise UsageError(f"bad --t {text!r}") from exc


def _positive(args, *names) -> None:
    for nm in names:
        v = getattr(args, nm)
        if v is None:
            raise UsageError(f"--{nm.replace('_', '-')} is required")
        if v < 1:
            raise UsageError(f"--{nm.replace('_', '-')} must be positive")


def _config(args) -> PointConfiguration:
    src = args.config
    if args.config_file is not None:
        if src is not None and src != f"file:{args.config_file}":
            raise UsageError("give either --config or --config-file, not both")
        src = f"file:{args.config_file}"
    if src is None:
        raise UsageError("--config is required")
    if src == "fermat":
        if args.n is None:
            raise UsageError("--n is required for fermat")
        return fermat_config(args.n, _field(args))
    if src == "chmn":
        fld = _field(args)
        return chmn_config(_parse_t(args.t, fld), fld)
    if src == "all-but-one":
        if args.s is None or args.N is None:
            raise UsageError("--s and --N are required for all-but-one")
        if args.field and FieldSpec.parse(args.field).characteristic != args.s:
            raise UsageError("all-but-one uses the field F_s")
        return all_but_one_config(args.s, args.N)
    if src.startswith("file:"):
        path = Path(src[5:])
        if not path.is_file():
            raise UsageError(f"no such configuration file: {path}")
        return loads_config(path.read_text(), FieldSpec.parse(args.field) if args.field else None)
    raise UsageError(f"unknown --config {src!r}")


def _budget(args) -> Budget:
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    return Budget(args.max_degree, args.max_pairs)


def _params(args) -> dict:
    keys = ("config", "config_file", "field", "theorem", "n", "t", "s", "N", "m", "r", "m_max", "r_max", "cases", "family_t", "max_degree", "max_pairs")
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k != "timing"}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _header(cfg: PointConfiguration, args) -> dict:
    return {"config": cfg.label, "field": str(cfg.field), "params": _params(args), "version": __version__}


def _cmd_construct(args):
    cfg = _config(args)
    out = _header(cfg, args)
    out["num_points"] = len(cfg)
    out["points"] = [str(p) for p in cfg.points]
    if cfg.point_names:
        out["point_names"] = list(cfg.point_names)
    if cfg.lines:
        out["lines"] = [format_polynomial(ln) for ln in cfg.lines]
    return out, EXIT_OK, f"{cfg.label}: {len(cfg)} points"


def _cmd_invariants(args):
    cfg = _config(args)
    m = args.m or 1
    prof = interpolation_profile(cfg, m)
    out = _header(cfg, args)
    out.update(
        {
            "m": m,
            "alpha": prof.alpha,
            "omega": prof.omega,
            "reg": prof.degree_bound,
            "num_generators": prof.num_generators,
            "generator_degrees": {str(k): v for k, v in sorted(prof.generator_degrees().items())},
            "hilbert_function": [points_hilbert_function(cfg, d, m) for d in range(prof.degree_bound + 1)],
            "ideal_dimensions": [prof.dims[d] for d in sorted(prof.dims)],
        }
    )
    if m == 1:
        out["generators"] = [format_polynomial(g) for g in cfg.ideal().generators]
    return out, EXIT_OK, f"alpha={prof.alpha} omega={prof.omega} reg={prof.degree_bound}"


def _cmd_containment(args):
    _positive(args, "m", "r")
    cfg = _config(args)
    rep = check_containment(cfg, args.m, args.r, budget=_budget(args))
    out = _header(cfg, args)
    out["report"] = rep.as_dict()
    code = EXIT_OK if rep.holds else EXIT_FAIL
    return out, code, f"I^({args.m}) in I^{args.r}: {rep.verdict} ({rep.method})"


def _cmd_waldschmidt(args):
    _positive(args, "m_max")
    cfg = _config(args)
    wb = waldschmidt_table(cfg, args.m_max)
    out = _header(cfg, args)
    out["waldschmidt"] = wb.as_dict()
    if wb.lower is not None:
        lo, hi = asymptotic_bracket(cfg, wb)
        out["asymptotic_bracket"] = [str(lo), str(hi)]
    note = "" if wb.certified else " (lower bound uncertified)"
    return out, EXIT_OK, f"Waldschmidt bracket [{wb.lower}, {wb.upper}]{note}"


def _cmd_resurgence(args):
    _positive(args, "r_max", "m_max")
    cfg = _config(args)
    br = resurgence_bracket(cfg, args.r_max, budget=_budget(args), m_max=args.m_max, jobs=args.jobs, family_t=args.family_t)
    out = _header(cfg, args)
    out["bracket"] = br.as_dict()
    code = EXIT_CAP if br.partial else EXIT_OK
    return out, code, f"rho in [{br.lower}, {br.upper}], asymptotic in [{br.hat_lower}, {br.hat_upper}]" + (" (partial)" if br.partial else "")


def _cmd_verify(args):
    th = args.theorem
    if th is None:
        raise UsageError("--theorem is required")
    budget = _budget(args)
    if th == "fermat":
        if args.n is None:
            raise UsageError("--n is required")
        fld = _field(args)
        if fld.characteristic == 0:
            raise HypothesisViolated("the Fermat configuration needs F_p with n | p - 1")
        led = verify_theorem("fermat", n=args.n, p=fld.characteristic, budget=budget, jobs=args.jobs)
    elif th == "chmn":
        fld = _field(args)
        led = verify_theorem("chmn", t=_parse_t(args.t, fld), field_spec=fld, budget=budget, jobs=args.jobs)
    elif th == "reg-lemma":
        _positive(args, "s", "N")
        led = verify_theorem("reg-lemma", s=args.s, N=args.N)
    else:
        _positive(args, "s", "N")
        cases = args.cases.split(",") if args.cases else None
        led = verify_theorem("finite-field", s=args.s, N=args.N, cases=cases, budget=budget, jobs=args.jobs, family_t=args.family_t)
    out = led.as_dict()
    out["params"] = _params(args)
    code = EXIT_OK if led.passed else (EXIT_CAP if led.partial and not any(c.verdict == "fail" for c in led.checks) else EXIT_FAIL)
    lines = [f"{c.verdict:>7}  {c.name}: {c.statement}" for c in led.checks]
    return out, code, "\n".join(lines)


def _cmd_audit(args):
    cfg = _config(args)
    a = incidence_audit(cfg)
    out = _header(cfg, args)
    out["audit"] = a.as_dict()
    return out, (EXIT_OK if a.passed else EXIT_FAIL), f"audit {'passed' if a.passed else 'failed'}"


HANDLERS = {
    "construct": _cmd_construct,
    "invariants": _cmd_invariants,
    "containment": _cmd_containment,
    "waldschmidt": _cmd_waldschmidt,
    "resurgence": _cmd_resurgence,
    "verify": _cmd_verify,
    "audit": _cmd_audit,
}


def run(argv: list[str] | None = None) -> int:
    """Run one command; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        out, code, summary = HANDLERS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DOMAIN_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCap as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        out = {"command": args.command, "params": _params(args), "version": __version__, "partial": True, "reason": str(exc)}
        _emit(out, args)
        return EXIT_CAP
    out = {"command": args.command, **out}
    _emit(out, args)
    print(summary, file=sys.stderr)
    return code


def _emit(out: dict, args) -> None:
    if args.no_timings:
        out = _strip_timings(out)
    text = json.dumps(out, sort_keys=True, indent=2, default=str) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
