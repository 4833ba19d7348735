"""
Command-line surface for symcensus.

    symcensus dim --weight 12 --level 11 --new
    symcensus cm-count --weight 4 --level 49 --breakdown
    symcensus sym-cond --p 3 --variant sc --eta-spec 1/8@1 --n 4
    symcensus census --weight 12 --sym 2 --prime 13 --max-i 1 --format csv
    symcensus sweep --kind tunnell --prime 3 --max-conductor 3

Exit status is 0 on success, 2 on a usage error and 3 when a certified
bound or identity fails.
"""

import functools
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

import click

from .abelian      import GroupError
from .census       import census, RunReport, weight_mu
from .certificates import Certificate, InvariantViolation
from .cm           import cm_count_breakdown
from .config       import ConfigError, load_config
from .decorators   import handler_decorator
from .dirichlet    import adelize, characters
from .emit         import emit, emit_table, formats
from .local        import LocalFieldError, sweep_norm_conductor
from .modforms     import asymptotic_report, dimension_record
from .weil_deligne import (ParameterError, parse_eta_spec, PrincipalSeries,
    Special, Supercuspidal, sweep_isomorphism, sweep_principal_series,
    sweep_special, sweep_supercuspidal, sym_conductor)

__all__ = ["cli"]

log = logging.getLogger(__name__)

USAGE_ERRORS = (ValueError, ConfigError, GroupError, LocalFieldError,
    ParameterError)
EXIT_VIOLATION = 3

def _guarded(func: Callable[..., Any]) -> Callable[..., Any]:
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except InvariantViolation as e:
            click.echo(json.dumps(e.certificate.to_dict(), indent=2,
                default=str), err=True)
            ctx.exit(EXIT_VIOLATION)
        except USAGE_ERRORS as e:
            raise click.UsageError(str(e), ctx=ctx)
    return wrapper

def _format_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option("--format", "fmt", default=None,
        help=f"Output format ({', '.join(formats())})")(func)

def _echo(text: str):
    click.echo(text, nl=False)

@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
    help="key = value file with default sweep and census ranges")
@click.option("--jobs", type=int, default=None,
    help="Parallelism degree for sweeps and census runs")
@click.option("--verbose", is_flag=True, help="Log progress to stderr")
@click.pass_context
def cli(
        ctx:         click.Context,
        config_path: Optional[str],
        jobs:        Optional[int],
        verbose:     bool):
    """Conductor bounds for symmetric power lifts and the census built on
    them."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s",
        force=True)
    try:
        config = load_config(config_path)
    except ConfigError as e:
        raise click.UsageError(str(e), ctx=ctx)
    if jobs is not None:
        if jobs < 1:
            raise click.UsageError(f"--jobs must be at least 1, got {jobs}",
                ctx=ctx)
        config.jobs = jobs
    ctx.obj = config

@cli.command()
@click.option("--weight", "-k", type=int, required=True)
@click.option("--level", "-N", "levels", type=int, multiple=True,
    required=True)
@click.option("--new", is_flag=True, help="Dimension of the new subspace")
@click.option("--table", is_flag=True, help="Emit k, N, dim_full, dim_new")
@_format_option
@click.pass_obj
@_guarded
def dim(config, weight: int, levels: Sequence[int], new: bool, table: bool,
        fmt: Optional[str]):
    """Dimensions of S_k(Gamma_1(N))."""
    records = [dimension_record(weight, N) for N in levels]
    if table:
        _echo(emit_table(["k", "N", "dim_full", "dim_new"],
            [[r.k, r.N, r.dim_full, r.dim_new] for r in records],
            fmt or "csv"))
        return
    for record in records:
        click.echo(record.dim_new if new else record.dim_full)

@cli.command()
@click.option("--weight", "-k", type=int, required=True)
@click.option("--level", "-N", "levels", type=int, multiple=True,
    required=True)
@_format_option
@click.pass_obj
@_guarded
def asymptotics(config, weight: int, levels: Sequence[int],
        fmt: Optional[str]):
    """dim S_k(Gamma_1(N))/N^2 against its exact leading term."""
    rows = asymptotic_report(weight, list(levels))
    _echo(emit_table(["k", "N", "dim_full", "ratio", "leading", "averaged",
        "relative_error"],
        [[r.k, r.N, r.dimension, f"{r.ratio:.8f}", f"{r.leading:.8f}",
            f"{r.averaged:.8f}", f"{r.relative_error:.8f}"] for r in rows],
        fmt or config.format))

@cli.command("cm-count")
@click.option("--weight", "-k", type=int, required=True)
@click.option("--level", "-N", type=int, required=True)
@click.option("--breakdown", is_flag=True,
    help="One row per (discriminant, modulus norm)")
@_format_option
@click.pass_obj
@_guarded
def cm_count_command(config, weight: int, level: int, breakdown: bool,
        fmt: Optional[str]):
    """Newforms of weight k and level N with complex multiplication."""
    count = cm_count_breakdown(weight, level)
    if breakdown:
        _echo(emit_table(["d", "norm", "count"],
            [list(row) for row in count.breakdown], fmt or "csv"))
    else:
        click.echo(count.total)

@cli.command("characters")
@click.option("--modulus", "-N", type=int, required=True)
@click.option("--prime", "-p", type=int, default=None,
    help="Also adelize each character at this prime")
@_format_option
@click.pass_obj
@_guarded
def characters_command(config, modulus: int, prime: Optional[int],
        fmt: Optional[str]):
    """Dirichlet characters mod N with their conductors."""
    fields = ["modulus", "images", "order", "conductor", "even"]
    if prime is not None:
        fields += ["local_exponent", "local_conductor", "uniformizer_value"]
    rows: List[List[Any]] = []
    for epsilon in characters(modulus):
        row: List[Any] = [modulus,
            " ".join(epsilon.to_dict()["images"]), epsilon.order(),
            epsilon.conductor(), int(epsilon.is_even())]
        if prime is not None:
            local = adelize(epsilon, prime)
            row += [local.exponent, local.conductor_exponent(),
                str(local.uniformizer_value)]
        rows.append(row)
    _echo(emit_table(fields, rows, fmt or config.format))

@cli.command("sym-cond")
@click.option("--p", "p", type=int, required=True)
@click.option("--variant", type=click.Choice(["ps", "sp", "sc"]),
    required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--field", default="unramified",
    type=click.Choice(["unramified", "ramified", "ramified-twisted"]),
    help="Quadratic extension carrying eta (sc only)")
@click.option("--eta-spec", default=None,
    help="images@level[:uniformizer] for eta (sc only)")
@click.option("--mu-spec", "mu_specs", multiple=True,
    help="images@level[:uniformizer] over Q_p; twice for ps, once for sp")
@click.pass_obj
@_guarded
def sym_cond(config, p: int, variant: str, n: int, field: str,
        eta_spec: Optional[str], mu_specs: Sequence[str]):
    """Certified conductor exponent of sym^n of one local parameter."""
    mus = [parse_eta_spec(p, "base", spec) for spec in mu_specs]
    if variant == "ps":
        if len(mus) != 2:
            raise ValueError("a principal series needs two --mu-spec")
        pi: Any = PrincipalSeries(mus[0], mus[1])
    elif variant == "sp":
        if len(mus) != 1:
            raise ValueError("a special parameter needs one --mu-spec")
        pi = Special(mus[0])
    else:
        if eta_spec is None:
            raise ValueError("a supercuspidal parameter needs --eta-spec")
        eta = parse_eta_spec(p, field, eta_spec)
        pi  = Supercuspidal(eta.field, eta)
    _, certificate = sym_conductor(pi, n)
    click.echo(json.dumps(certificate.to_dict(), indent=2, default=str))

@cli.command("census")
@click.option("--weight", "-k", "weights", type=int, multiple=True)
@click.option("--sym", "-n", "syms", type=int, multiple=True)
@click.option("--prime", "-p", "primes", type=int, multiple=True)
@click.option("--max-i", type=int, default=None)
@click.option("--jobs", type=int, default=None)
@_format_option
@click.pass_obj
@_guarded
def census_command(config, weights: Sequence[int], syms: Sequence[int],
        primes: Sequence[int], max_i: Optional[int], jobs: Optional[int],
        fmt: Optional[str]):
    """Lower bounds for the number of forms lifting to level p^j."""
    report = RunReport("census")
    rows   = []
    for k in weights or config.weights:
        for n in syms or config.census_syms:
            for p in primes or config.census_primes:
                rows += census(k, n, p, max_i or config.max_i,
                    jobs or config.jobs)
    report.finish(len(rows))
    _echo(emit(rows, fmt or config.format))

@cli.command()
@click.option("--weight", "-k", type=int, required=True)
@click.option("--sym", "-n", type=int, required=True)
@click.pass_obj
@_guarded
def weights(config, weight: int, sym: int):
    """The weight vector carrying sym^n of weight k."""
    click.echo(" ".join(str(e) for e in weight_mu(weight, sym).entries))

SWEEPS: Dict[str, Callable[[int, int, int, int], List[Certificate]]] = {}
_sweep = handler_decorator(SWEEPS)

SYM_FIELDS = ["p", "variant", "conductor", "n", "sym_conductor", "bound"]
SWEEP_FIELDS: Dict[str, List[str]] = {
    "sc":          SYM_FIELDS,
    "ps":          SYM_FIELDS,
    "sp":          SYM_FIELDS,
    "tunnell":     ["p", "field", "conductor", "lhs", "rhs"],
    "isomorphism": ["p", "variant", "conductor", "n", "value",
        "isomorphic_pairs"]
}

@_sweep("sc")
def _sweep_sc(p: int, max_conductor: int, max_n: int, jobs: int):
    return sweep_supercuspidal(p, max_conductor, max_n, jobs)
@_sweep("ps")
def _sweep_ps(p: int, max_conductor: int, max_n: int, jobs: int):
    return sweep_principal_series(p, max_conductor, max_n, jobs)
@_sweep("sp")
def _sweep_sp(p: int, max_conductor: int, max_n: int, jobs: int):
    return sweep_special(p, max_conductor, max_n, jobs)
@_sweep("tunnell")
def _sweep_tunnell(p: int, max_conductor: int, max_n: int, jobs: int):
    return sweep_norm_conductor(p, max_conductor)
@_sweep("isomorphism")
def _sweep_isomorphism(p: int, max_conductor: int, max_n: int, jobs: int):
    return sweep_isomorphism(p, max_conductor, max_n)

def _certificate_row(certificate: Certificate, fields: List[str]
        ) -> List[Any]:
    data = certificate.to_dict()
    data.update(certificate.details or {})
    row  = [data.get(field, "") for field in fields]
    row.append(",".join(certificate.flags or []))
    return row

@cli.command()
@click.option("--kind", type=click.Choice(sorted(SWEEPS)), required=True)
@click.option("--prime", "-p", "primes", type=int, multiple=True)
@click.option("--max-conductor", type=int, default=None)
@click.option("--max-n", type=int, default=None)
@_format_option
@click.pass_obj
@_guarded
def sweep(config, kind: str, primes: Sequence[int],
        max_conductor: Optional[int], max_n: Optional[int],
        fmt: Optional[str]):
    """Exhaustive certified sweeps over local parameters."""
    runner = SWEEPS[kind]
    fields = SWEEP_FIELDS[kind]
    report = RunReport(f"{kind} sweep")
    rows   = []
    for p in primes or config.primes:
        for certificate in runner(p, max_conductor or config.max_eta_conductor,
                max_n or config.max_sym, config.jobs):
            rows.append(_certificate_row(certificate, fields))
    report.finish(len(rows))
    _echo(emit_table(fields + ["flags"], rows, fmt or config.format))
