"""
Command-line interface for padicmzv
"""
from __future__ import annotations

import json
import logging
import sys
from contextlib import contextmanager
from fractions import Fraction

from . import ConfigError, ConvergenceError, MissingEntryError, PrecisionError, WordError
from .arith import Padic, PadicBackend, RationalBackend
from .config import BACKENDS, FORMATS, RunConfig
from .engine import SIGNS, build_table, compute_zeta, padic_json
from .harmonic import bmhs_table
from .verify import SUITES, fast_suites, run_suite
from .words import parse_index, parse_word

import click

logger = logging.getLogger(__name__)


def _run_options(fn):
    opts = [
        click.option("--p", "p", type=int, help="The prime."),
        click.option("--prec", type=int, help="Target precision, in p-adic digits."),
        click.option("--nmax", type=int, help="Use the levels p^1 … p^NMAX."),
        click.option(
            "--extra-levels",
            "extra_levels",
            type=int,
            help="Levels beyond NMAX to add while precision is short.",
        ),
        click.option("--weight", "--W", "weight", type=int, help="Weight cap."),
        click.option("--backend", type=click.Choice(BACKENDS)),
        click.option("--format", "format_", type=click.Choice(FORMATS)),
        click.option("--seed", type=int, help="Seed for the verification suites."),
        click.option("--sign", type=click.Choice(SIGNS), help="Sign convention."),
        click.option("-v", "--verbose", is_flag=True, help="Also print every level."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _config(cfg: RunConfig, kw: dict) -> RunConfig:
    kw = dict(kw)
    kw["format"] = kw.pop("format_", None)
    if not kw.get("verbose"):
        kw["verbose"] = None
    try:
        return cfg.merged(**kw)
    except ConfigError as exc:
        raise click.UsageError(str(exc)) from exc


@contextmanager
def _exit_codes():
    "map errors to exit codes: 2 usage, 3 convergence and precision"
    try:
        yield
    except (WordError, ConfigError) as exc:
        raise click.UsageError(str(exc)) from exc
    except ConvergenceError as exc:
        click.echo(f"Error: {exc}", err=True)
        for n, v in exc.levels:
            click.echo(f"  N={n}: {v}", err=True)
        sys.exit(3)
    except (PrecisionError, MissingEntryError) as exc:
        click.echo(f"Error: {exc}", err=True)
        sys.exit(3)


def _emit(cfg: RunConfig, data, lines):
    if cfg.format == "json":
        click.echo(json.dumps(data))
    else:
        for line in lines:
            click.echo(line)


@click.group()
@click.option("-d", "--debug", is_flag=True)
@click.option(
    "-c",
    "--config",
    "config_file",
    type=click.Path(dir_okay=False, readable=True, exists=True),
    help="File with key=value settings. Flags win.",
)
@click.pass_context
def main(ctx, debug, config_file):
    "compute p-adic multiple zeta values"
    logging.basicConfig(level=logging.DEBUG if debug else logging.WARNING)
    try:
        ctx.obj = RunConfig.from_file(config_file) if config_file else RunConfig()
    except ConfigError as exc:
        raise click.UsageError(str(exc)) from exc


@main.command()
@click.option("--index", "index_", help="Comma-separated index, e.g. 1,2.")
@click.option("--word", help="A word of 0 and 1, read left to right.")
@_run_options
@click.pass_obj
def zeta(obj, index_, word, **kw):
    "compute one value"
    cfg = _config(obj, kw)
    if (index_ is None) == (word is None):
        raise click.UsageError("Use exactly one of --index and --word.")
    with _exit_codes(), cfg.activated():
        target = parse_index(index_) if index_ is not None else parse_word(word)
        rep = compute_zeta(
            target, cfg.p, cfg.prec, cfg.n_max, sign=cfg.sign, extra_levels=cfg.extra_levels
        )

    name = f"zeta{rep.index!r}" if rep.index is not None else f"zeta[{rep.word}]"
    lines = [
        f"{name} = {rep.value}",
        f"p={rep.prime} valuation={rep.value.valuation} digits={rep.value.digits()}"
        f" precision={rep.precision}",
    ]
    if cfg.verbose:
        for (n, v), a in zip(rep.levels, [None, *rep.valuations]):
            lines.append(f"  N={n}: {v}" + ("" if a is None else f"  agreement {a}"))
    _emit(cfg, rep.as_dict(), lines)


@main.command()
@_run_options
@click.pass_obj
def table(obj, **kw):
    "compute all values up to a weight"
    cfg = _config(obj, kw)
    with _exit_codes(), cfg.activated():
        tab = build_table(
            cfg.p,
            cfg.weight,
            cfg.prec,
            cfg.n_max,
            sign=cfg.sign,
            extra_levels=cfg.extra_levels,
        )

    data = []
    lines = [f"# p={cfg.p} weight<={cfg.weight} sign={tab.sign}"]
    for idx, v in tab.items():
        rep = tab.reports[idx]
        data.append({"index": list(idx), **padic_json(rep.value), "precision": rep.precision})
        lines.append(f"zeta{idx!r} = {v}")
    _emit(cfg, data, lines)


def _render(v):
    if isinstance(v, Padic):
        return padic_json(v)
    return str(Fraction(v))


@main.command()
@click.option("--word", required=True, help="A word of 0 and 1; '-' is the empty word.")
@click.option("--M", "--bound", "bound", type=int, default=10, help="Last index.")
@_run_options
@click.pass_obj
def bmhs(obj, word, bound, **kw):
    "dump h^B_word(0…M)"
    cfg = _config(obj, kw)
    if bound < 0:
        raise click.UsageError("--M must not be negative")
    with _exit_codes():
        w = parse_word(word)
        if cfg.backend == "padic":
            bk = PadicBackend(cfg.p, cfg.prec)
        else:
            bk = RationalBackend()
        vals = [bk(v) for v in bmhs_table(w, bound, bk).values[: bound + 1]]

    data = {"word": w, "backend": cfg.backend, "values": [_render(v) for v in vals]}
    lines = [f"{m}: {v}" for m, v in enumerate(vals)]
    _emit(cfg, data, lines)


def _report(cfg: RunConfig, names) -> bool:
    results = [run_suite(n, cfg) for n in names]
    lines = [f"# seed {cfg.seed}"]
    for r in results:
        state = "PASS" if r.ok else "FAIL"
        lines.append(f"{r.name}: {state} ({r.checked} checks): {r.anchor}")
        if not r.ok:
            lines.append(f"  first counterexample: {r.failures[0]}")
    _emit(cfg, {"seed": cfg.seed, "suites": [r.as_dict() for r in results]}, lines)
    return all(r.ok for r in results)


@main.command()
@click.argument("suite", type=click.Choice(sorted(SUITES)))
@_run_options
@click.pass_obj
def verify(obj, suite, **kw):
    "run one verification suite"
    cfg = _config(obj, kw)
    with _exit_codes(), cfg.activated():
        ok = _report(cfg, [suite])
    if not ok:
        sys.exit(1)


@main.command()
@_run_options
@click.pass_obj
def selftest(obj, **kw):
    "run all fast verification suites"
    cfg = _config(obj, kw)
    with _exit_codes(), cfg.activated():
        ok = _report(cfg, fast_suites())
    if not ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
