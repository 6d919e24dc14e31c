"""
krecon command-line interface.
Results go to standard output, log messages and errors to standard error.
Exit codes: 0 success, 1 unexpected failure, 2 input error, 3 resource guard, 4 unsupported.
"""

import csv
import logging
import sys
from contextlib import contextmanager
from typing import Optional

import typer

from .base_types import format_word
from .bench import (
    SUMMARY_COLUMNS,
    ExperimentConfig,
    gen_random_set,
    run_experiment,
    summarize,
    summary_row,
)
from .bootstrap import bootstrap, env
from .config import SearchStrategy
from .core import (
    is_1_reconstructible,
    is_2_reconstructible,
    is_member,
    is_perfect_at,
    perfect_point,
    point_of_no_information,
    sparsity_bound,
)
from .errors import InputError, ReconError, UnsupportedError
from .formats import format_string_set, read_hitting_set, read_string_set
from .hitting_set import approx_d, min_exclusion_k, solve_exact, solve_fpt
from .overlap import build_graph, dump_graph, dump_matrix, order_columns, prune_unique
from .writers import CsvRecordWriter

cli_app = typer.Typer(no_args_is_help=True, add_completion=False)


@contextmanager
def handle_errors():
    """Maps expected failures to their exit codes; --debug lets tracebacks through."""
    try:
        yield
    except (typer.Exit, typer.Abort):
        raise
    except ReconError as e:
        if env.debug:
            raise
        logging.error(e)
        raise typer.Exit(code=e.exit_code) from e
    except Exception as e:  # pylint: disable=broad-exception-caught
        if env.debug:
            raise
        logging.error("%s: %s", type(e).__name__, e)
        raise typer.Exit(code=1) from e


DatasetArg = typer.Argument(..., help="Dataset file: one string per line, digits as symbols")
AlphabetOpt = typer.Option(None, "--alphabet", "-a", help="Alphabet size (default: inferred)")


@cli_app.callback()
def main(
    config: Optional[str] = typer.Option(
        None, help="Path to the configuration file (default: ./krecon.toml if present)"
    ),
    debug: Optional[bool] = typer.Option(None, help="Enable debug mode (more verbose logging)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress messages"),
    env_file: Optional[str] = typer.Option(
        ".env",
        "--env",
        "--env-file",
        "--env_file",
        help="Set the .env file to load ENV vars from",
    ),
    threads: Optional[int] = typer.Option(None, min=1, help="Worker pool size cap"),
):
    """Reconstruct string sets from their k-way projections."""
    with handle_errors():
        try:
            bootstrap(config=config, env_file=env_file, debug=debug, verbose=verbose)
        except (ValueError, TypeError, OSError) as e:
            raise InputError(f"Can't load configuration: {e}") from e
        if threads:
            env.config = env.config.model_copy(update={"threads": threads})


@cli_app.command()
def recon(
    dataset: str = DatasetArg,
    k: int = typer.Option(..., "-k", help="Window size"),
    engine: Optional[str] = typer.Option(None, help="Engine name (default from config)"),
    alphabet: Optional[int] = AlphabetOpt,
):
    """Print Recon_k of the dataset, one string per line, then extras=E."""
    with handle_errors():
        s = read_string_set(dataset, alphabet)
        report = env.engine(engine or env.config.default_engine).recon(s, k)
        logging.info("Engine counters: %s", report.counters)
        typer.echo(format_string_set(report.members), nl=False)
        typer.echo(f"extras={report.extras}")


@cli_app.command("perfect-point")
def perfect_point_cmd(
    dataset: str = DatasetArg,
    engine: Optional[str] = typer.Option(None, help="Engine used for k >= 3"),
    search: Optional[SearchStrategy] = typer.Option(None, help="Search over k"),
    at: Optional[int] = typer.Option(
        None, "--at", help="Only decide whether Recon_K = S at this K; prints yes or no"
    ),
    fast_path: bool = typer.Option(
        False, help="With --at 1 or 2: use only the linear-time or 2-SAT test"
    ),
    alphabet: Optional[int] = AlphabetOpt,
):
    """Print the least k with Recon_k(S) = S."""
    with handle_errors():
        s = read_string_set(dataset, alphabet)
        if at is None:
            if fast_path:
                raise InputError("--fast-path needs --at")
            typer.echo(perfect_point(s, engine, search))
            return
        if fast_path:
            if at == 1:
                perfect = is_1_reconstructible(s)
            elif at == 2:
                perfect = is_2_reconstructible(s)
            else:
                raise UnsupportedError(f"No fast path decides k={at}; fast paths cover k=1, 2")
        else:
            perfect = is_perfect_at(s, at, engine)
        typer.echo("yes" if perfect else "no")


@cli_app.command("noinfo-point")
def noinfo_point(
    dataset: str = DatasetArg,
    search: Optional[SearchStrategy] = typer.Option(None, help="Search over k"),
    alphabet: Optional[int] = AlphabetOpt,
):
    """Print the largest k at which every k-window projection is complete (0 if none)."""
    with handle_errors():
        typer.echo(point_of_no_information(read_string_set(dataset, alphabet), search))


@cli_app.command()
def contains(
    dataset: str = DatasetArg,
    k: int = typer.Option(..., "-k", help="Window size"),
    x: str = typer.Option(..., "-x", help="Candidate string"),
    alphabet: Optional[int] = AlphabetOpt,
):
    """Print 'yes' if x is in Recon_k(S), else 'no witness=<0-based window>'."""
    with handle_errors():
        result = is_member(read_string_set(dataset, alphabet), x, k)
        typer.echo("yes" if result else f"no witness={result.witness}")


@cli_app.command("min-k")
def min_k(
    dataset: str = DatasetArg,
    x: str = typer.Option(..., "-x", help="Candidate string"),
    alphabet: Optional[int] = AlphabetOpt,
):
    """Print the least k with x outside Recon_k(S), or 'never' when x is in S."""
    with handle_errors():
        result = min_exclusion_k(read_string_set(dataset, alphabet), x)
        typer.echo("never" if result is None else result)


@cli_app.command("sparsity-bound")
def sparsity_bound_cmd(dataset: str = DatasetArg, alphabet: Optional[int] = AlphabetOpt):
    """Print bound=B witness=W, W being a string of Recon_B(S)."""
    with handle_errors():
        result = sparsity_bound(read_string_set(dataset, alphabet))
        typer.echo(f"bound={result.bound} witness={format_word(result.witness)}")


@cli_app.command("hs-solve")
def hs_solve(
    instance: str = typer.Argument(..., help="Hitting Set instance file ('n m' header)"),
    k: Optional[int] = typer.Option(None, "--k", "-k", help="Budget"),
    fpt: bool = typer.Option(False, "--fpt", help="Bounded search for a solution of size <= k"),
    approx: bool = typer.Option(False, "--approx", help="d-approximation"),
):
    """Solve a Hitting Set instance; prints hitters=<elements> and size=<count>."""
    with handle_errors():
        if fpt and approx:
            raise InputError("--fpt and --approx are mutually exclusive")
        h = read_hitting_set(instance)
        if h.unhittable:
            typer.echo("unhittable")
            return
        if fpt:
            if k is None:
                raise InputError("--fpt needs a budget (--k)")
            solution = solve_fpt(h, k)
        elif approx:
            solution = approx_d(h)
        else:
            solution = solve_exact(h)
        logging.info("Search nodes: %d", solution.nodes)
        if not solution.feasible:
            typer.echo("infeasible")
            return
        typer.echo(f"hitters={','.join(map(str, solution.elements))}")
        typer.echo(f"size={solution.size}")
        if approx:
            typer.echo(f"selected={','.join(map(str, solution.selected))}")
        if k is not None and not fpt:
            typer.echo(f"within_k={'yes' if solution.size <= k else 'no'}")


@cli_app.command()
def bench(
    config_file: Optional[str] = typer.Option(
        None, "--config", "-c", help="Experiment file (toml / json / yaml / py)"
    ),
    n: Optional[str] = typer.Option(None, "-n", help="String lengths, e.g. '10..20:2'"),
    m: Optional[str] = typer.Option(None, "-m", help="Set sizes, e.g. '40,90'"),
    k: Optional[str] = typer.Option(None, "-k", help="Window sizes, e.g. '2..11'"),
    trials: Optional[int] = typer.Option(None, min=1, help="Trials per cell"),
    seed: Optional[int] = typer.Option(None, min=0, help="Master seed"),
    engine: Optional[list[str]] = typer.Option(None, help="Engines to run (repeatable)"),
    output: Optional[str] = typer.Option(None, "--output", "-o", help="CSV file (default: stdout)"),
    summary: bool = typer.Option(False, help="Print per-cell medians instead of raw records"),
    no_timing: bool = typer.Option(False, help="Leave out the wall-clock columns"),
):
    """Run timed experiments on random sets and emit CSV records."""
    with handle_errors():
        fields = {}
        if config_file:
            fields = ExperimentConfig.load(config_file).model_dump(exclude_unset=True)
        overrides = {"n": n, "m": m, "k": k, "trials": trials, "seed": seed, "engines": engine}
        fields.update({key: v for key, v in overrides.items() if v not in (None, [], ())})
        try:
            cfg = ExperimentConfig(**fields)
        except ValueError as e:
            raise InputError(f"Invalid experiment: {e}") from e
        for name in cfg.engines:
            env.engine(name)

        writers = list(env.writers)
        csv_writer = None
        if output or not summary:
            csv_writer = CsvRecordWriter(file_name=output, drop_timing=no_timing)
            writers.insert(0, csv_writer)
        records = []
        try:
            for record in run_experiment(cfg):
                for write in writers:
                    write(record)
                if summary:
                    records.append(record)
        finally:
            if csv_writer:
                csv_writer.close()
        if summary:
            out = csv.writer(sys.stdout, lineterminator="\n")
            out.writerow(SUMMARY_COLUMNS)
            for row in summarize(records):
                out.writerow(summary_row(row))


@cli_app.command()
def gen(
    n: int = typer.Option(..., "-n", help="String length"),
    m: int = typer.Option(..., "-m", help="Number of distinct strings"),
    seed: int = typer.Option(0, min=0, help="Seed"),
):
    """Print a random binary dataset."""
    with handle_errors():
        typer.echo(format_string_set(gen_random_set(n, m, seed)), nl=False)


@cli_app.command("graph-dump")
def graph_dump(
    dataset: str = DatasetArg,
    k: int = typer.Option(..., "-k", help="Window size"),
    identity_order: bool = typer.Option(False, help="Keep the natural column order"),
    prune: bool = typer.Option(False, help="Dump the graph after pruning"),
    matrix: bool = typer.Option(False, help="Print the adjacency matrix instead"),
    power: Optional[int] = typer.Option(None, help="With --matrix: print A^POWER"),
    alphabet: Optional[int] = AlphabetOpt,
):
    """Print the overlap graph as 'layer node kmer -> successors'."""
    with handle_errors():
        s = read_string_set(dataset, alphabet)
        g = build_graph(s, k, order_columns(s, identity=identity_order))
        if prune:
            g = prune_unique(g, s)
        lines = dump_matrix(g, power or 1) if matrix else dump_graph(g)
        for line in lines:
            typer.echo(line)


if __name__ == "__main__":
    cli_app()
