import json

import pandas as pd
import pytest
from click.testing import CliRunner

from main import cli, experiment_run
from services.experiment_runner import ExperimentRunner
from utils.config import PATHS

QUIET = ['--log-level', 'ERROR']


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, QUIET + [str(a) for a in args])


def write_plan(folder, graph_name, seed_sizes, algorithms, extra_dataset=''):
    path = folder / 'plan.toml'
    path.write_text(
        f'seed_sizes = {seed_sizes}\n'
        'mc_runs = 20\n'
        'master_seed = 3\n'
        f'algorithms = {json.dumps(algorithms)}\n'
        '\n'
        '[datasets.karate]\n'
        f'path = "{graph_name}"\n'
        'activation_probability = 0.05\n'
        + extra_dataset,
        encoding='utf-8',
    )
    return path


class TestRankCommand:
    def test_writes_csv(self, runner, karate_file, tmp_path):
        out = tmp_path / 'rank.csv'
        result = invoke(runner, 'rank', karate_file, '--method', 'degree', '--out', out)
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out)
        assert list(frame.columns) == ['position', 'vertex', 'score']
        assert len(frame) == 34
        assert frame.loc[0, 'vertex'] == 34

    def test_top(self, runner, karate_file, tmp_path):
        out = tmp_path / 'rank.csv'
        result = invoke(runner, 'rank', karate_file, '--top', 5, '--out', out)
        assert result.exit_code == 0, result.output
        assert len(pd.read_csv(out)) == 5


class TestSeedCommand:
    def test_degree_baseline(self, runner, karate_file, tmp_path):
        out = tmp_path / 'seeds.json'
        result = invoke(runner, 'seed', karate_file, '--algo', 'degree', '-k', 2, '--ap', 0.05,
                        '--mc-runs', 20, '--out', out)
        assert result.exit_code == 0, result.output
        payload = json.loads(out.read_text(encoding='utf-8'))
        assert payload['seeds'] == [34, 1]
        assert payload['edv'] >= 2
        assert payload['spread']['runs'] == 20

    def test_phee_without_spread(self, runner, karate_file, tmp_path):
        out = tmp_path / 'seeds.json'
        result = invoke(runner, 'seed', karate_file, '-k', 3, '--ap', 0.05, '--pop', 4, '--gmax', 3,
                        '--t-initial', 50, '--moves', 3, '--mc-runs', 0, '--out', out)
        assert result.exit_code == 0, result.output
        payload = json.loads(out.read_text(encoding='utf-8'))
        assert len(payload['seeds']) == 3
        assert 'spread' not in payload
        assert payload['edv'] >= payload['initial_edv']
        assert payload['annealing']['levels'] > 0

    def test_candidate_set_stage(self, runner, karate_file, tmp_path):
        out = tmp_path / 'csset.csv'
        result = invoke(runner, 'seed', karate_file, '-k', 3, '--pop', 4, '--gmax', 3, '--stage', 'rde',
                        '--out', out)
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out)
        assert list(frame.columns) == ['vertex', 'count']
        assert frame['count'].is_monotonic_decreasing

    def test_config_file(self, runner, karate_file, tmp_path):
        config = tmp_path / 'phee.toml'
        config.write_text('pop = 3\ngmax = 2\nT_i = 40.0\n', encoding='utf-8')
        out = tmp_path / 'seeds.json'
        result = invoke(runner, 'seed', karate_file, '--algo', 'phee-gci', '-k', 2, '--config', config,
                        '--mc-runs', 0, '--out', out)
        assert result.exit_code == 0, result.output
        assert len(json.loads(out.read_text(encoding='utf-8'))['seeds']) == 2

    def test_too_many_seeds_is_usage_error(self, runner, karate_file):
        result = invoke(runner, 'seed', karate_file, '-k', 100, '--mc-runs', 0)
        assert result.exit_code == 2

    def test_invalid_parameter_is_usage_error(self, runner, karate_file):
        result = invoke(runner, 'seed', karate_file, '-k', 2, '--lambda', 3.0, '--mc-runs', 0)
        assert result.exit_code == 2


class TestSimulateCommand:
    def test_prints_estimate(self, runner, karate_file, tmp_path):
        seeds = tmp_path / 'seeds.txt'
        seeds.write_text('# hubs\n1, 34\n', encoding='utf-8')
        result = invoke(runner, 'simulate', karate_file, '--seeds', seeds, '--p', 0.0, '--runs', 10)
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload == {'mean': 2.0, 'std_error': 0.0, 'runs': 10}

    def test_unknown_vertex(self, runner, karate_file, tmp_path):
        seeds = tmp_path / 'seeds.txt'
        seeds.write_text('99\n', encoding='utf-8')
        result = invoke(runner, 'simulate', karate_file, '--seeds', seeds)
        assert result.exit_code == 2


class TestExperimentCommands:
    def test_run_writes_reports(self, runner, karate_file, tmp_path):
        plan = write_plan(karate_file.parent, karate_file.name, [1, 2, 3, 4, 5], ['degree', 'random'])
        out = tmp_path / 'reports'
        result = invoke(runner, 'experiment', 'run', plan, '--out', out, '--no-timing', '--quiet')
        assert result.exit_code == 0, result.output
        for name in ('results.csv', 'spread_curves.csv', 'friedman_ranks.csv', 'wilcoxon.csv', 'report.json'):
            assert (out / name).exists()
        table = pd.read_csv(out / 'results.csv')
        assert len(table) == 10
        assert table['seconds'].isna().all()

    def test_failed_cells_exit_code(self, runner, karate_file, tmp_path):
        ghost = '\n[datasets.ghost]\npath = "missing.edges"\nactivation_probability = 0.05\n'
        plan = write_plan(karate_file.parent, karate_file.name, [2], ['degree'], extra_dataset=ghost)
        out = tmp_path / 'reports'
        result = invoke(runner, 'experiment', 'run', plan, '--out', out, '--quiet')
        assert result.exit_code == 1
        table = pd.read_csv(out / 'results.csv')
        assert len(table) == 2
        assert table.loc[table['dataset'] == 'ghost', 'spread_mean'].isna().all()

    def test_sweep(self, runner, karate_file, tmp_path):
        plan = write_plan(karate_file.parent, karate_file.name, [2], ['degree'])
        out = tmp_path / 'sweep'
        result = invoke(runner, 'experiment', 'sweep', plan, '--out', out, '--quiet',
                        '--parameter', 'gmax', '--value', 2, '--value', 3)
        assert result.exit_code == 0, result.output
        table = pd.read_csv(out / 'results.csv')
        assert list(table['algorithm']) == ['phee-mdd[gmax=2]', 'phee-mdd[gmax=3]']

    def test_bad_plan_is_usage_error(self, runner, tmp_path):
        plan = tmp_path / 'plan.toml'
        plan.write_text('seed_sizes = [2, 1]\nalgorithms = ["degree"]\n[datasets.x]\npath = "x"\n',
                        encoding='utf-8')
        result = invoke(runner, 'experiment', 'run', plan, '--out', tmp_path / 'out', '--quiet')
        assert result.exit_code == 2

    def test_aborted_run_reports_errors(self, runner, karate_file, tmp_path, monkeypatch):
        def broken(self):
            raise RuntimeError('cell stage exploded')

        monkeypatch.setattr(ExperimentRunner, '_stage_run_cells', broken)
        plan = write_plan(karate_file.parent, karate_file.name, [2], ['degree'])
        out = tmp_path / 'reports'
        result = invoke(runner, 'experiment', 'run', plan, '--out', out, '--quiet')
        assert result.exit_code == 1
        assert not (out / 'results.csv').exists()

    def test_report_folder_defaults_to_configured_dir(self):
        out = next(param for param in experiment_run.params if param.name == 'out_dir')
        assert out.default == PATHS['reports_dir']


class TestStatsCommands:
    @pytest.fixture
    def results_csv(self, tmp_path):
        rows = []
        for algorithm, bonus in (('phee', 1.0), ('celf', 0.0), ('degree', -1.0)):
            for i in range(6):
                rows.append({'dataset': 'net', 'algorithm': algorithm, 'k': 10 * (i + 1),
                             'spread_mean': 10.0 + i + bonus * (i + 1), 'spread_stderr': 0.1, 'seconds': ''})
        path = tmp_path / 'results.csv'
        pd.DataFrame(rows).to_csv(path, index=False)
        return path

    def test_friedman(self, runner, results_csv, tmp_path):
        out = tmp_path / 'ranks.csv'
        result = invoke(runner, 'stats', 'friedman', results_csv, '--out', out)
        assert result.exit_code == 0, result.output
        ranks = pd.read_csv(out).set_index('algorithm')
        assert ranks.loc['phee', 'overall'] == 3.0
        assert ranks.loc['degree', 'overall'] == 1.0

    def test_wilcoxon(self, runner, results_csv, tmp_path):
        out = tmp_path / 'wilcoxon.csv'
        result = invoke(runner, 'stats', 'wilcoxon', results_csv, '--pair', 'phee,degree', '--out', out)
        assert result.exit_code == 0, result.output
        rows = pd.read_csv(out)
        assert rows.loc[0, 'decision'] == '+'

    def test_wilcoxon_needs_two_names(self, runner, results_csv):
        result = invoke(runner, 'stats', 'wilcoxon', results_csv, '--pair', 'phee')
        assert result.exit_code == 2
