"""Command-line front end.

Exit codes: 0 ok, 1 not dominating, 2 parse or solver error, 3 validation
error, 4 size limit, 5 not found. Errors are written to stderr as JSON and
nothing is written to stdout on a failure path.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import bounds, domination, lpmodel
from .errors import AdjustmentViolation, DomainError, ExpdomError, NonpositiveKError, SizeLimitError
from .solver import EXACT, FLOAT, BranchBudget, check_certificate, solve_lp, solve_milp
from .torus import TorusDims

EXIT_OK, EXIT_NOT_DOMINATING, EXIT_ERROR, EXIT_INVALID, EXIT_SIZE, EXIT_NOT_FOUND = range(6)


class _Exit(Exception):
    def __init__(self, code: int, payload: dict):
        self.code = code
        self.payload = payload


def _fail(code: int, error: str, message: str, **details):
    raise _Exit(code, {"error": error, "message": message, "details": details})


def _exit_for(exc: ExpdomError) -> int:
    if isinstance(exc, SizeLimitError):
        return EXIT_SIZE
    if isinstance(exc, (AdjustmentViolation, NonpositiveKError, DomainError)):
        return EXIT_INVALID
    return EXIT_ERROR


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def _render(payload: dict, table: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flatten(payload))
        return buf.getvalue().rstrip("\n")
    return table


def _run(fn, fmt: str, output: str | None):
    """Call ``fn() -> (exit_code, payload, table)`` and route output and errors."""
    try:
        code, payload, table = fn()
    except _Exit as e:
        click.echo(json.dumps(e.payload), err=True)
        sys.exit(e.code)
    except ExpdomError as e:
        click.echo(json.dumps(e.to_dict(), default=str), err=True)
        sys.exit(_exit_for(e))
    text = _render(payload, table, fmt)
    if output:
        Path(output).write_text(text + "\n")
    else:
        click.echo(text)
    sys.exit(code)


def _dims(_ctx, _param, value):
    if value is None:
        return None
    try:
        return TorusDims.parse(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _odd_r(_ctx, _param, value):
    if value is not None and (value < 3 or value % 2 == 0):
        raise click.BadParameter("r must be odd and at least 3")
    return value


def _fraction(_ctx, _param, value):
    if value is None:
        return None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"not a rational number: {value!r}") from exc


def _mode(dims):
    return lpmodel.FINITE(dims) if dims is not None else lpmodel.ASYMPTOTIC


def _arith(name: str):
    return EXACT if name == "exact" else FLOAT()


def output_options(f):
    f = click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write to a file instead of stdout.")(f)
    f = click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table",
                     show_default=True)(f)
    f = click.option("--json", "as_json", is_flag=True, help="Shorthand for --format json.")(f)
    return f


@click.group()
def cli():
    """Exponential domination bounds on torus grids."""


def main(argv: list[str] | None = None):
    """Entry point; usage errors are reported as JSON like every other error."""
    try:
        cli.main(args=argv, prog_name="expdom", standalone_mode=False)
    except click.exceptions.NoArgsIsHelpError as exc:
        click.echo(exc.ctx.get_help())
        sys.exit(EXIT_OK)
    except click.ClickException as exc:
        click.echo(json.dumps({"error": "USAGE", "message": exc.format_message(), "details": {}}), err=True)
        sys.exit(EXIT_ERROR)
    except click.exceptions.Abort:
        sys.exit(EXIT_ERROR)


@cli.command()
@click.option("--r", type=int, default=bounds.MAIN_R, show_default=True, callback=_odd_r, help="Main window size.")
@click.option("--finite", "dims", callback=_dims, help="Use torus distances on an MxN torus.")
@click.option("--alpha", callback=_fraction, help="Fraction of isolated dominating vertices.")
@click.option("--isolated", is_flag=True, help="Mixed bound with isolated vertices (alpha defaults to 1).")
@click.option("--threshold", is_flag=True, help="Report the largest alpha compatible with --upper-density.")
@click.option("--upper-density", callback=_fraction, default="1/13", show_default=True)
@click.option("--rho", callback=_fraction, default="18", show_default=True, help="Weight budget per vertex.")
@click.option("--arith", type=click.Choice(["exact", "float"]), default="exact", show_default=True)
@click.option("--no-interior-caps", is_flag=True, help="Drop the upper caps on interior rows.")
@output_options
def bound(r, dims, alpha, isolated, threshold, upper_density, rho, arith, no_interior_caps, fmt, as_json, output):
    """Density lower bound from the window LPs."""
    mode, arithmetic, caps = _mode(dims), _arith(arith), not no_interior_caps
    fmt = "json" if as_json else fmt

    def go():
        if threshold:
            a = bounds.alpha_threshold(upper_density, mode, arithmetic, caps, rho, r)
            payload = {"alpha_threshold": bounds.number_json(a), "upper_density": str(upper_density), "mode": str(mode)}
            return EXIT_OK, payload, f"alpha threshold  {payload['alpha_threshold']['decimal']}"
        if isolated or alpha is not None:
            a = alpha if alpha is not None else Fraction(1)
            rep = bounds.run_genbound(a, mode, arithmetic, caps, rho, r)
        else:
            rep = bounds.run_main_theorem(mode, arithmetic, caps, rho, r)
        return EXIT_OK, rep.to_json(), rep.to_table()

    _run(go, fmt, output)


@cli.command()
@click.argument("set_file", type=click.Path(dir_okay=False))
@output_options
def verify(set_file, fmt, as_json, output):
    """Check whether a candidate set (JSON) dominates its torus."""
    fmt = "json" if as_json else fmt

    def go():
        try:
            D = domination.CandidateSet.from_json(json.loads(Path(set_file).read_text()))
        except (OSError, ValueError) as exc:
            _fail(EXIT_ERROR, "PARSE", str(exc), file=set_file)
        rep = domination.verify(D)
        payload = {"dims": str(D.dims), "size": len(D), "density": str(D.density), **rep.to_json()}
        lines = [f"torus        {D.dims}", f"size         {len(D)}", f"dominating   {rep.dominating}",
                 f"min weight   {rep.min_received}"]
        lines += [f"deficient    ({v.row}, {v.col})  {w}" for v, w in rep.deficient_vertices]
        return (EXIT_OK if rep.dominating else EXIT_NOT_DOMINATING), payload, "\n".join(lines)

    _run(go, fmt, output)


@cli.command()
@click.option("--dims", "dims", required=True, callback=_dims, help="Torus dimensions MxN.")
@click.option("--cap", type=click.IntRange(min=1), help="Largest set size to try.")
@click.option("--force", is_flag=True, help=f"Allow m*n > {domination.BRUTEFORCE_MAX_ORDER}.")
@output_options
def bruteforce(dims, cap, force, fmt, as_json, output):
    """Exact minimum dominating set size by exhaustive search."""
    fmt = "json" if as_json else fmt

    def go():
        res = domination.min_expdom_bruteforce(dims, cap, force)
        payload = res.to_json()
        if res.found:
            lines = [f"torus    {dims}", f"gamma    {res.gamma}",
                     "witness  " + " ".join(f"({v.row},{v.col})" for v in res.witness.sorted())]
        else:
            lines = [f"torus    {dims}", f"gamma    NOT_FOUND (size <= {cap})"]
        lines.append(f"nodes    {sum(res.nodes.values())}  time {res.seconds:.3f}s")
        return (EXIT_OK if res.found else EXIT_NOT_FOUND), payload, "\n".join(lines)

    _run(go, fmt, output)


@cli.command()
@click.option("--variant", type=click.Choice(sorted(lpmodel.ASSEMBLERS)), default="main", show_default=True)
@click.option("--r", type=int, default=None, callback=_odd_r, help="Window size (13 for main, 9 otherwise).")
@click.option("--finite", "dims", callback=_dims, help="Use torus distances on an MxN torus.")
@click.option("--no-interior-caps", is_flag=True, help="Drop the upper caps on interior rows.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write to a file instead of stdout.")
def export(variant, r, dims, no_interior_caps, output):
    """Write an LP instance as a JSON problem file."""

    def go():
        size = r if r is not None else (bounds.MAIN_R if variant == "main" else bounds.ISOLATED_R)
        try:
            p = lpmodel.ASSEMBLERS[variant](size, _mode(dims), not no_interior_caps)
        except ValueError as exc:
            _fail(EXIT_ERROR, "PARSE", str(exc))
        data = p.to_json()
        return EXIT_OK, data, json.dumps(data, indent=2)

    _run(go, "table", output)


@cli.command()
@click.argument("problem_file", type=click.Path(dir_okay=False))
@click.option("--arith", type=click.Choice(["exact", "float"]), default="exact", show_default=True)
@click.option("--max-nodes", type=click.IntRange(min=1), default=BranchBudget.max_nodes, show_default=True)
@click.option("--max-time", type=click.FloatRange(min=0, min_open=True), default=BranchBudget.max_time,
              show_default=True)
@output_options
def solve(problem_file, arith, max_nodes, max_time, fmt, as_json, output):
    """Solve a JSON problem file; integer-marked problems go to branch and bound."""
    fmt = "json" if as_json else fmt

    def go():
        try:
            p = lpmodel.LPInstance.from_json(json.loads(Path(problem_file).read_text()))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            _fail(EXIT_ERROR, "PARSE", str(exc), file=problem_file)
        arithmetic = _arith(arith)
        if p.integer_marks:
            s = solve_milp(p, arithmetic, BranchBudget(max_nodes, max_time))
            cert = None
        else:
            s = solve_lp(p, arithmetic)
            cert = check_certificate(p, s).ok if s.optimal else None
        payload = s.to_json(certificate=cert)
        payload["fingerprint"] = p.fingerprint()
        value = payload["value"]["decimal"] if payload["value"] else "-"
        lines = [f"problem      {p.name} ({p.num_vars} vars, {p.num_rows} rows)", f"status       {s.status.value}",
                 f"value        {value}"]
        if payload["value"] and payload["value"]["exact"]:
            lines.append(f"exact        {payload['value']['exact']}")
        lines.append(f"iterations   {s.iterations}")
        if p.integer_marks:
            lines.append(f"nodes        {s.nodes_explored}")
        if cert is not None:
            lines.append(f"certificate  {'ok' if cert else 'FAILED'}")
        return EXIT_OK, payload, "\n".join(lines)

    _run(go, fmt, output)


if __name__ == "__main__":  # pragma: no cover
    main()
