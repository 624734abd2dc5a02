# cli.py - Command-line interface for bounds, zeros, verification runs and rho(lambda) data
"""
Commands:

    bounds  FAMILY -n N [-a A] [-b B] [-l L] [--oracle]
    zeros   FAMILY -n N [-a A] [-b B] [-l L]
    verify  [--grid NAME|FILE.json]
    fig1    [--from L0] [--to L1] [--step H] [-n N]

Shared flags: --digits, --exact, --out, --k, --threads, --log-level.
Exit codes: 0 success, 1 verification or certification failure, 2 usage error.
"""

import argparse
import csv
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
import logging
import math
import re
import sys
from typing import Iterable, List, Optional, Sequence

from pydantic import ValidationError

from closed_bounds import all_bounds, ratio_decomposition, rho
from config import Settings, configure_logging, load_settings
from euler_rayleigh import DEFAULT_K
from jacobi_models import (
    AuxiliaryCheck,
    BoundCheck,
    BoundSource,
    CertificationError,
    ConfigError,
    DomainError,
    ExtremalZerosError,
    Family,
    GegenbauerParams,
    GridError,
    GridSpec,
    IdentityViolationError,
    JacobiParams,
    LaguerreParams,
    OutputRecord,
    Scalar,
    as_scalar,
)
from poly_core import gegenbauer_as_jacobi
from verification import check_bound, checked_bounds, load_grid, rayleigh_bounds, run_grid
from zero_oracle import gegenbauer_zeros, jacobi_zeros, laguerre_zeros

logger = logging.getLogger(__name__)

FAMILIES = {"jacobi": Family.JACOBI, "gegenbauer": Family.GEGENBAUER, "laguerre": Family.LAGUERRE}


def status(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# ========================================================================
# 1. PARSING AND RENDERING
# ========================================================================


def parse_scalar(text: str, exact: bool = False) -> Scalar:
    """'p/q' and integers are exact; decimals are floats unless ``exact``"""
    value = as_scalar(text)
    if exact and isinstance(value, float):
        return Fraction(text.strip())
    return value


def render_scalar(value: Optional[Scalar], digits: int, rounding: str = ROUND_HALF_EVEN) -> str:
    """Decimal text with ``digits`` significant digits"""
    if value is None:
        return ""
    ctx = Context(prec=digits, rounding=rounding)
    if isinstance(value, Fraction):
        d = ctx.divide(Decimal(value.numerator), Decimal(value.denominator))
    else:
        d = ctx.plus(Decimal(float(value)))
    if d.is_zero():
        return "0"
    return format(d, "f") if -7 < d.adjusted() < 16 else format(d, "E")


def describe(params) -> str:
    fields = params.model_dump(exclude={"n"})
    return " ".join(f"{'lambda' if k == 'lam' else k}={v}" for k, v in fields.items())


def _rounding_for(check: BoundCheck) -> str:
    # brackets are rounded outward so the printed interval still encloses the quantity
    if check.bound.source is BoundSource.ER_LOWER:
        return ROUND_FLOOR
    if check.bound.source is BoundSource.ER_UPPER:
        return ROUND_CEILING
    return ROUND_HALF_EVEN


def _verdict(passed: Optional[bool], unresolved: bool = False) -> str:
    if unresolved:
        return "unresolved"
    return {True: "pass", False: "fail", None: "n/a"}[passed]


def bound_record(family: Family, params, check: BoundCheck, digits: int) -> OutputRecord:
    bound = check.bound
    return OutputRecord(
        family=family.value,
        n=params.n,
        parameters=describe(params),
        quantity=bound.quantity.value,
        method=bound.method,
        value=render_scalar(bound.value, digits, _rounding_for(check)),
        direction=bound.direction.value,
        applicable="true" if bound.applicable else "false",
        oracle=render_scalar(check.oracle, digits),
        passed=_verdict(check.passed, check.unresolved),
    )


def auxiliary_record(row: AuxiliaryCheck, digits: int) -> OutputRecord:
    return OutputRecord(family=row.family.value, n=row.n, parameters=row.parameters,
                        quantity=row.check, method=row.check,
                        value=render_scalar(row.value, digits), direction="",
                        applicable="true", oracle="", passed=_verdict(row.passed))


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def print_table(header: Sequence[str], rows: List[Sequence[str]]) -> None:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(str(c))) for w, c in zip(widths, row)]
    for row in [list(header)] + rows:
        print("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())


# ========================================================================
# 2. PARAMETERS FROM FLAGS
# ========================================================================


def params_from_args(args) -> tuple:
    family = FAMILIES[args.family]
    exact = args.exact

    def need(flag: str, value):
        if value is None:
            raise DomainError(f"{args.family} needs {flag}")
        return parse_scalar(value, exact)

    if family is Family.JACOBI:
        params = JacobiParams(alpha=need("-a", args.a), beta=need("-b", args.b), n=args.n)
    elif family is Family.GEGENBAUER:
        params = GegenbauerParams(lam=need("-l", args.l), n=args.n)
    else:
        params = LaguerreParams(alpha=need("-a", args.a), n=args.n)
    return family, params


# ========================================================================
# 3. COMMANDS
# ========================================================================


def cmd_bounds(args, settings: Settings) -> int:
    family, params = params_from_args(args)
    if params.n < 1:
        raise DomainError("bounds need n >= 1")
    digits = args.digits or settings.digits
    k = args.k or DEFAULT_K

    if args.oracle:
        checks = checked_bounds(family, params, [k])
    else:
        bounds = all_bounds(family, params)
        if family is Family.JACOBI:
            bounds += rayleigh_bounds(params, [k])
        elif family is Family.GEGENBAUER:
            bounds += rayleigh_bounds(gegenbauer_as_jacobi(params), [k])
        checks = [check_bound(bound, {}) for bound in bounds]
    records = [bound_record(family, params, check, digits) for check in checks]

    print_table(OutputRecord.COLUMNS, [r.as_row() for r in records])
    if args.out:
        write_csv(args.out, OutputRecord.COLUMNS, (r.as_row() for r in records))
        status(f"✅ wrote {len(records)} rows to {args.out}")

    unresolved = sum(c.unresolved for c in checks)
    if unresolved:
        status(f"⚠️ {unresolved} bound(s) within the oracle's certified error")
    failures = [c for c in checks if c.passed is False]
    if failures:
        status(f"❌ {len(failures)} bound(s) contradicted by the oracle")
        return 1
    return 0


def cmd_zeros(args, settings: Settings) -> int:
    family, params = params_from_args(args)
    digits = args.digits or settings.digits
    if family is Family.JACOBI:
        zero_set = jacobi_zeros(params)
    elif family is Family.GEGENBAUER:
        zero_set = gegenbauer_zeros(params)
    else:
        zero_set = laguerre_zeros(params)

    header = ("family", "n", "parameters", "index", "zero", "certified_abs_error")
    error = render_scalar(zero_set.certified_abs_error, 3, ROUND_CEILING)
    rows = [[family.value, str(params.n), describe(params), str(i + 1),
             render_scalar(x, digits), error]
            for i, x in enumerate(zero_set.zeros)]
    print_table(header, rows)
    if args.out:
        write_csv(args.out, header, rows)
        status(f"✅ wrote {len(rows)} zeros to {args.out}")
    return 0


def cmd_verify(args, settings: Settings) -> int:
    grid = load_grid(args.grid)
    if args.k:
        grid = GridSpec.model_validate({**dict(grid), "k_max": args.k})
    digits = args.digits or settings.digits
    threads = settings.threads if args.threads is None else args.threads

    status(f"🔍 verifying grid {args.grid!r}: {grid.size} instance(s)")
    report = run_grid(grid, threads=threads)

    records = [bound_record(inst.family, inst.params, check, digits)
               for inst in report.instances for check in inst.checks]
    records += [auxiliary_record(row, digits) for row in report.auxiliary]
    if args.out:
        write_csv(args.out, OutputRecord.COLUMNS, (r.as_row() for r in records))
        status(f"✅ wrote {len(records)} rows to {args.out}")

    aux_failed = sum(not row.passed for row in report.auxiliary)
    print(f"passed={report.passed} failed={report.failed} not_claimed={report.not_claimed} "
          f"unresolved={report.unresolved} auxiliary={len(report.auxiliary)} auxiliary_failed={aux_failed}")

    if report.ok:
        status("✅ all checks passed")
        return 0

    first = report.first_failure()
    if first is not None:
        inst, check = first
        row = bound_record(inst.family, inst.params, check, digits)
    else:
        row = auxiliary_record(next(r for r in report.auxiliary if not r.passed), digits)
    status("❌ first failure: " + ",".join(row.as_row()))
    return 1


def _lambda_range(start: Scalar, stop: Scalar, step: Scalar) -> List[Scalar]:
    if start <= Fraction(-1, 2):
        raise DomainError(f"lambda must exceed -1/2, got {start}")
    if step <= 0:
        raise DomainError(f"step must be positive, got {step}")
    if stop < start:
        raise DomainError(f"empty range: {start} > {stop}")
    count = math.floor((stop - start) / step + Fraction(1, 10 ** 9)) + 1
    return [start + i * step for i in range(count)]


def cmd_fig1(args, settings: Settings) -> int:
    digits = args.digits or settings.digits
    lams = _lambda_range(parse_scalar(args.start, args.exact), parse_scalar(args.stop, args.exact),
                         parse_scalar(args.step, args.exact))

    if args.n is None:
        header = ("lambda", "rho")
        rows = [[render_scalar(lam, digits), render_scalar(rho(lam), digits)] for lam in lams]
    else:
        header = ("lambda", "rho", "n", "phi", "r")
        rows = []
        for lam in lams:
            parts = ratio_decomposition(GegenbauerParams(lam=lam, n=args.n))
            rows.append([render_scalar(lam, digits), render_scalar(parts.rho, digits), str(args.n),
                         render_scalar(parts.phi, digits), render_scalar(parts.r, digits)])

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if args.out:
        write_csv(args.out, header, rows)
        status(f"✅ wrote {len(rows)} rows to {args.out}")
    return 0


# ========================================================================
# 4. PARSER AND ENTRY POINT
# ========================================================================


# flags whose value may be a negative number
NUMERIC_FLAGS = frozenset({"-a", "-b", "-l", "-n", "--from", "--to", "--step", "--k", "--digits", "--threads"})
NEGATIVE_NUMBER = re.compile(r"^-\.?\d")


def attach_negative_values(argv: Sequence[str]) -> List[str]:
    """'-a -1/2' becomes '-a=-1/2'; argparse reads '-1/2' alone as an unknown option"""
    out: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in NUMERIC_FLAGS and i + 1 < len(argv) and NEGATIVE_NUMBER.match(argv[i + 1]):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--digits", type=int, default=None, help="Significant digits in output (default 12).")
    shared.add_argument("--exact", action="store_true", help="Read decimal inputs as exact rationals.")
    shared.add_argument("--out", type=str, default="", help="Also write rows to this CSV file.")
    shared.add_argument("--k", type=int, default=None, help="Bracket order for bounds; k_max for verify.")
    shared.add_argument("--threads", type=int, default=None, help="Worker threads (0 = one per CPU).")
    shared.add_argument("--log-level", type=str, default=None, help="Logging level (default WARNING).")

    family_args = argparse.ArgumentParser(add_help=False)
    family_args.add_argument("family", choices=sorted(FAMILIES))
    family_args.add_argument("-n", type=int, required=True, help="Degree.")
    family_args.add_argument("-a", type=str, default=None, help="alpha (Jacobi, Laguerre).")
    family_args.add_argument("-b", type=str, default=None, help="beta (Jacobi).")
    family_args.add_argument("-l", type=str, default=None, help="lambda (Gegenbauer).")

    ap = argparse.ArgumentParser(prog="extremal-zeros",
                                 description="Euler-Rayleigh bounds for extreme zeros of classical orthogonal polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    bounds = sub.add_parser("bounds", parents=[shared, family_args], help="Closed-form bounds and the k-bracket.")
    bounds.add_argument("--oracle", action="store_true", help="Compare every bound with the zero oracle.")
    bounds.set_defaults(handler=cmd_bounds)

    zeros = sub.add_parser("zeros", parents=[shared, family_args], help="Certified zeros.")
    zeros.set_defaults(handler=cmd_zeros)

    verify = sub.add_parser("verify", parents=[shared], help="Run a verification grid.")
    verify.add_argument("--grid", type=str, default="default",
                        help="Built-in grid (default, smoke, gegenbauer, laguerre, empty) or a JSON file.")
    verify.set_defaults(handler=cmd_verify)

    fig1 = sub.add_parser("fig1", parents=[shared], help="rho(lambda) table, optionally phi and r at degree n.")
    fig1.add_argument("--from", dest="start", type=str, default="0", help="First lambda.")
    fig1.add_argument("--to", dest="stop", type=str, default="10", help="Last lambda.")
    fig1.add_argument("--step", type=str, default="1/2", help="Lambda step.")
    fig1.add_argument("-n", type=int, default=None, help="Also emit phi and r at this degree.")
    fig1.set_defaults(handler=cmd_fig1)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(attach_negative_values(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        settings = load_settings()
        configure_logging((args.log_level or settings.log_level).upper())
        if args.digits is not None and not 1 <= args.digits <= 40:
            raise DomainError(f"--digits must be in 1..40, got {args.digits}")
        if args.k is not None and args.k < 1:
            raise DomainError(f"--k must be >= 1, got {args.k}")
        if args.threads is not None and args.threads < 0:
            raise DomainError(f"--threads must be >= 0, got {args.threads}")
        logger.debug("running %s", args.command)
        return args.handler(args, settings)
    except (DomainError, GridError, ConfigError, ValidationError, ValueError) as exc:
        status(f"❌ {exc}")
        return 2
    except (CertificationError, IdentityViolationError) as exc:
        status(f"❌ {exc}")
        return 1
    except ExtremalZerosError as exc:
        status(f"❌ {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
