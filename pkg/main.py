"""
PHEE Influence Maximization - Command Line Interface
Main Controller - Application Entry Point
"""

import functools
import json
import logging
import sys
from pathlib import Path

import click
import numpy as np
import pandas as pd
import toml
from pydantic import ValidationError

from models.params import AlgorithmConfig, DiffusionParams, PheeParams
from models.ranking import RankingMethod
from services.baselines import celf_im, degree_topk, greedy_im, mc_oracle, random_seed_set
from services.experiment_runner import ExperimentRunner, sweep_plan
from services.ic_diffusion import edv, estimate_spread
from services.phee_pipeline import PheePipeline
from services.report_writer import ExperimentReport, read_results
from services.statistics import friedman_ranks, wilcoxon_table
from services.vertex_ranking import rank_vertices
from utils.config import APP_CONFIG, DIFFUSION_DEFAULTS, PATHS, PHEE_DEFAULTS, load_config_file, merge_settings, setup_logging
from utils.file_handler import load_graph, load_plan, read_seed_file
from utils.formatters import console, decision_style, print_frame
from utils.validators import PheeError

logger = logging.getLogger(__name__)

EXIT_FAILED_CELLS = 1
EXIT_USAGE_ERROR = 2

ALGORITHM_CHOICES = ['phee', 'phee-mdd', 'phee-gci', 'phee-kshell', 'phee-degree',
                     'celf', 'greedy', 'degree', 'random']


def handle_errors(func):
    """Library and validation errors become a red message and exit code 2"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (PheeError, ValidationError, FileNotFoundError, toml.TomlDecodeError) as e:
            console.print(f"[red]❌ {type(e).__name__}: {e}[/red]")
            sys.exit(EXIT_USAGE_ERROR)
    return wrapper


def _load(graph_path: str, directed: bool, as_undirected: bool):
    return load_graph(graph_path, directed=directed,
                      direction_mode='as-undirected' if as_undirected else 'directed')


def _emit(text: str, out: str = None):
    if out:
        Path(out).write_text(text, encoding='utf-8')
        console.print(f"💾 Saved to {out}")
    else:
        click.echo(text, nl=not text.endswith('\n'))


def _parse_value(text: str):
    """TOML literal ('0.5', '[0.1, 0.3]', '"gci"'), falling back to the raw string"""
    try:
        return toml.loads(f"v = {text}")['v']
    except toml.TomlDecodeError:
        return text


graph_options = [
    click.argument('graph', type=click.Path(exists=True, dir_okay=False)),
    click.option('--directed/--undirected', default=False, help='Read edges as arcs'),
    click.option('--as-undirected', is_flag=True, help='Load a directed file, then drop directions'),
]


def with_graph_options(func):
    for option in reversed(graph_options):
        func = option(func)
    return func


@click.group()
@click.option('--log-level', default=None, help='DEBUG, INFO, WARNING (default from PHEE_LOG_LEVEL)')
@click.version_option(APP_CONFIG['version'], prog_name=APP_CONFIG['name'])
def cli(log_level):
    """Influence maximization with ranked evolutionary search and adaptive annealing"""
    setup_logging(log_level)


# ============================================================================
# RANK
# ============================================================================

@cli.command()
@with_graph_options
@click.option('--method', type=click.Choice([m.value for m in RankingMethod]), default=PHEE_DEFAULTS['ranking'])
@click.option('--lambda', 'lam', type=float, default=PHEE_DEFAULTS['lambda'], show_default=True)
@click.option('--radius', type=int, default=PHEE_DEFAULTS['gci_radius'], show_default=True)
@click.option('--top', type=int, default=None, help='Only the first N vertices')
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@handle_errors
def rank(graph, directed, as_undirected, method, lam, radius, top, out):
    """Vertex ordering (SVet) as CSV: position, vertex, score"""
    g = _load(graph, directed, as_undirected)
    ordering = rank_vertices(g, method, lam=lam, radius=radius)
    order = ordering.order if top is None else ordering.order[:top]
    frame = pd.DataFrame({
        'position': range(1, len(order) + 1),
        'vertex': [g.original_id(v) for v in order],
        'score': [ordering.scores[v] for v in order],
    })
    _emit(frame.to_csv(index=False), out)


# ============================================================================
# SEED
# ============================================================================

def _phee_params(algo: str, k: int, ap: float, master_seed, config_path, overrides) -> PheeParams:
    file_values = load_config_file(config_path) if config_path else {}
    file_values = {key: value for key, value in file_values.items() if not isinstance(value, dict)}
    settings = merge_settings(file_values, overrides)
    if algo != 'phee':
        settings.update(AlgorithmConfig.from_name(algo).overrides)
    settings = merge_settings(settings, {'k': k, 'activation_probability': ap, 'master_seed': master_seed})
    return PheeParams(**settings)


@cli.command()
@with_graph_options
@click.option('--algo', type=click.Choice(ALGORITHM_CHOICES), default='phee', show_default=True)
@click.option('-k', '--k', 'k', type=int, required=True, help='Seed set size')
@click.option('--ap', type=float, default=DIFFUSION_DEFAULTS['activation_probability'], show_default=True,
              help='Activation probability')
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='TOML file with PHEE parameters')
@click.option('--stage', type=click.Choice(['rde', 'saa']), default='saa', show_default=True,
              help='Stop after RandRDE and print the candidate set')
@click.option('--master-seed', type=int, default=DIFFUSION_DEFAULTS['master_seed'], show_default=True)
@click.option('--mc-runs', type=int, default=DIFFUSION_DEFAULTS['runs'], show_default=True,
              help='Monte-Carlo runs for the spread estimate (0 to skip)')
@click.option('--celf-runs', type=int, default=DIFFUSION_DEFAULTS['celf_runs'], show_default=True)
@click.option('--workers', type=int, default=DIFFUSION_DEFAULTS['workers'], show_default=True)
@click.option('--lambda', 'lam', type=float, default=None)
@click.option('--pop', type=int, default=None)
@click.option('--gmax', type=int, default=None)
@click.option('--div-factor', type=float, default=None)
@click.option('--mp', type=float, default=None)
@click.option('--cp', type=float, default=None)
@click.option('--p-range', type=(float, float), default=None)
@click.option('--t-initial', 'T_i', type=float, default=None)
@click.option('--t-final', 'T_f', type=float, default=None)
@click.option('--theta', type=float, default=None)
@click.option('--moves', 'N', type=int, default=None, help='Neighbourhood moves per temperature level')
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@handle_errors
def seed(graph, directed, as_undirected, algo, k, ap, config_path, stage, master_seed, mc_runs, celf_runs,
         workers, lam, pop, gmax, div_factor, mp, cp, p_range, T_i, T_f, theta, N, out):
    """Select k seeds with PHEE or a baseline; prints JSON"""
    g = _load(graph, directed, as_undirected)
    result = {'algorithm': algo, 'k': k}

    if algo.startswith('phee'):
        overrides = {'lambda': lam, 'pop': pop, 'gmax': gmax, 'div_factor': div_factor, 'mp': mp, 'cp': cp,
                     'p_range': p_range, 'T_i': T_i, 'T_f': T_f, 'theta': theta, 'N': N}
        params = _phee_params(algo, k, ap, master_seed, config_path, overrides)
        pipeline = PheePipeline(g, params)
        outcome = pipeline.run(stop_after=stage)
        if stage == 'rde':
            frame = pd.DataFrame({
                'vertex': [g.original_id(v) for v in outcome.csset.vertices],
                'count': list(outcome.csset.counts),
            })
            _emit(frame.to_csv(index=False), out)
            return
        seeds = outcome.seeds
        result['initial_edv'] = outcome.initial_edv
        result['annealing'] = {'levels': outcome.annealing.levels, 'moves': outcome.annealing.moves,
                               'accepted': outcome.annealing.accepted}
    elif algo in ('celf', 'greedy'):
        runs = celf_runs if algo == 'celf' else max(mc_runs, 1)
        oracle = mc_oracle(g, DiffusionParams(p=ap, runs=runs, master_seed=master_seed), workers)
        seeds, trace = (celf_im if algo == 'celf' else greedy_im)(g, k, oracle)
        result['evaluations'] = trace.evaluations
    elif algo == 'degree':
        seeds = degree_topk(g, k)
    else:
        seeds = random_seed_set(g, k, np.random.default_rng(master_seed))

    result['seeds'] = [g.original_id(v) for v in seeds.members]
    result['edv'] = edv(g, seeds.members, ap)
    if mc_runs > 0:
        estimate = estimate_spread(g, seeds.members, DiffusionParams(p=ap, runs=mc_runs, master_seed=master_seed),
                                   workers=workers)
        result['spread'] = estimate.to_dict()
    _emit(json.dumps(result, indent=2) + '\n', out)


# ============================================================================
# SIMULATE
# ============================================================================

@cli.command()
@with_graph_options
@click.option('--seeds', 'seed_file', type=click.Path(exists=True, dir_okay=False), required=True,
              help='File of original vertex ids')
@click.option('--p', type=float, default=DIFFUSION_DEFAULTS['activation_probability'], show_default=True)
@click.option('--runs', type=int, default=DIFFUSION_DEFAULTS['runs'], show_default=True)
@click.option('--master-seed', type=int, default=DIFFUSION_DEFAULTS['master_seed'], show_default=True)
@click.option('--workers', type=int, default=DIFFUSION_DEFAULTS['workers'], show_default=True)
@handle_errors
def simulate(graph, directed, as_undirected, seed_file, p, runs, master_seed, workers):
    """Monte-Carlo IC spread of a seed set; prints JSON {mean, std_error, runs}"""
    g = _load(graph, directed, as_undirected)
    seeds = read_seed_file(seed_file, g)
    params = DiffusionParams(p=p, runs=runs, master_seed=master_seed)
    estimate = estimate_spread(g, seeds, params, workers=workers)
    click.echo(json.dumps(estimate.to_dict()))


# ============================================================================
# EXPERIMENT
# ============================================================================

@cli.group()
def experiment():
    """Batch runs over datasets x algorithms x seed sizes"""


def _plan_overrides(master_seed, mc_runs, workers, no_timing):
    return {'master_seed': master_seed, 'mc_runs': mc_runs, 'workers': workers,
            'record_timing': False if no_timing else None}


def _finish_experiment(runner: ExperimentRunner, table, plan, out_dir, quiet):
    if table is None:
        for error in runner.get_errors():
            console.print(f"[red]❌ {error}[/red]")
        sys.exit(EXIT_FAILED_CELLS)
    report = ExperimentReport(table, plan)
    report.add_errors(runner.get_errors())
    algorithms = list(pd.unique(table['algorithm']))
    try:
        ranks = friedman_ranks(table)
        report.add_ranks(ranks)
        if not quiet:
            print_frame(ranks.to_frame(), title='Mean ranks (higher is better)', index=True)
    except PheeError as e:
        logger.warning(f"⚠️ Ranks not computed: {e}")
    if len(plan.seed_sizes) >= 5:
        for other in algorithms[1:]:
            try:
                report.add_wilcoxon(algorithms[0], other, wilcoxon_table(table, algorithms[0], other))
            except PheeError as e:
                logger.warning(f"⚠️ Wilcoxon {algorithms[0]} vs {other} skipped: {e}")
    report.write(out_dir)
    if runner.failed_cells():
        console.print(f"[red]❌ {runner.failed_cells()} cells failed[/red]")
        sys.exit(EXIT_FAILED_CELLS)


experiment_options = [
    click.argument('plan_path', type=click.Path(exists=True, dir_okay=False)),
    click.option('--out', 'out_dir', type=click.Path(file_okay=False), default=PATHS['reports_dir'], show_default=True),
    click.option('--master-seed', type=int, default=None),
    click.option('--mc-runs', type=int, default=None),
    click.option('--workers', type=int, default=None),
    click.option('--no-timing', is_flag=True, help='Leave the seconds column empty (byte-stable output)'),
    click.option('--quiet', is_flag=True, help='No progress bar or tables'),
]


def with_experiment_options(func):
    for option in reversed(experiment_options):
        func = option(func)
    return func


@experiment.command('run')
@with_experiment_options
@handle_errors
def experiment_run(plan_path, out_dir, master_seed, mc_runs, workers, no_timing, quiet):
    """Run a TOML plan and write CSV/JSON reports"""
    plan, base_dir = load_plan(plan_path, _plan_overrides(master_seed, mc_runs, workers, no_timing))
    runner = ExperimentRunner(plan, base_dir, progress=not quiet)
    table = runner.run()
    _finish_experiment(runner, table, plan, out_dir, quiet)


@experiment.command('sweep')
@with_experiment_options
@click.option('--base', default='phee-mdd', show_default=True, help='PHEE variant to vary')
@click.option('--parameter', required=True, help='e.g. lambda, gmax, mp, cp, p_range')
@click.option('--value', 'values', multiple=True, required=True, help='One value per option (TOML literal)')
@handle_errors
def experiment_sweep(plan_path, out_dir, master_seed, mc_runs, workers, no_timing, quiet, base, parameter, values):
    """Parameter-sensitivity sweep: one PHEE column per value"""
    plan, base_dir = load_plan(plan_path, _plan_overrides(master_seed, mc_runs, workers, no_timing))
    plan = sweep_plan(plan, base, parameter, [_parse_value(v) for v in values])
    runner = ExperimentRunner(plan, base_dir, progress=not quiet)
    table = runner.run()
    _finish_experiment(runner, table, plan, out_dir, quiet)


# ============================================================================
# STATS
# ============================================================================

@cli.group()
def stats():
    """Friedman ranks and Wilcoxon tests over a result CSV"""


@stats.command('friedman')
@click.argument('results', type=click.Path(exists=True, dir_okay=False))
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@handle_errors
def stats_friedman(results, out):
    """Mean ranks per dataset and overall (CSV)"""
    report = friedman_ranks(read_results(results))
    frame = report.to_frame()
    _emit(frame.to_csv(), out)
    for dataset, (statistic, p_value) in report.statistics.items():
        console.print(f"🔍 {dataset}: Friedman chi2={statistic:.4f}, p={p_value:.4g}")


@stats.command('wilcoxon')
@click.argument('results', type=click.Path(exists=True, dir_okay=False))
@click.option('--pair', required=True, help='Two algorithm names, comma separated: A,B')
@click.option('--alpha', type=float, default=0.05, show_default=True)
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@handle_errors
def stats_wilcoxon(results, pair, alpha, out):
    """Signed-rank test of A against B per dataset (CSV)"""
    names = [name.strip() for name in pair.split(',')]
    if len(names) != 2 or not all(names):
        raise click.BadParameter("expected two algorithm names, e.g. --pair phee-mdd,celf", param_hint='--pair')
    rows = wilcoxon_table(read_results(results), names[0], names[1], alpha)
    _emit(rows.to_csv(index=False), out)
    for _, row in rows.iterrows():
        style = decision_style(row['decision'])
        console.print(f"[{style}]{row['dataset']}: {row['better']}/{row['worse']}, "
                      f"p={row['p_value']:.4g} {row['decision']}[/{style}]")


if __name__ == '__main__':
    cli()
