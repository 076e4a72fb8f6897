import json

import pandas as pd
import pytest

from models.params import AlgorithmConfig, DatasetSpec, ExperimentPlan
from services.report_writer import ExperimentReport, emit_report, read_results, spread_curves
from services.statistics import friedman_ranks, wilcoxon_table


def plan(record_timing: bool = True) -> ExperimentPlan:
    return ExperimentPlan(
        datasets=[DatasetSpec(name='net', path='net.edges'), DatasetSpec(name='mail', path='mail.edges')],
        algorithms=[AlgorithmConfig.from_name('phee'), AlgorithmConfig.from_name('celf')],
        seed_sizes=[10, 20, 30, 40, 50],
        master_seed=1234,
        record_timing=record_timing,
    )


@pytest.fixture
def table():
    rows = []
    for dataset in ('net', 'mail'):
        for algorithm, bonus in (('phee', 1.0), ('celf', 0.0)):
            for i, k in enumerate([10, 20, 30, 40, 50]):
                rows.append({'dataset': dataset, 'algorithm': algorithm, 'k': k,
                             'spread_mean': 5.0 * (i + 1) + bonus * (i + 1), 'spread_stderr': 0.1,
                             'seconds': 0.5, 'status': 'ok', 'error': '', 'seeds': '1 2'})
    return pd.DataFrame(rows)


class TestEmitReport:
    def test_writes_every_artefact(self, table, tmp_path):
        ranks = friedman_ranks(table)
        wilcoxon = {('phee', 'celf'): wilcoxon_table(table, 'phee', 'celf')}
        written = emit_report(table, ranks, wilcoxon, tmp_path / 'out', plan())
        assert set(written) == {'results', 'curves', 'ranks', 'wilcoxon', 'report'}
        assert all(path.exists() for path in written.values())

    def test_result_header(self, table, tmp_path):
        written = emit_report(table, None, None, tmp_path, plan())
        header = written['results'].read_text(encoding='utf-8').splitlines()[0]
        assert header == 'dataset,algorithm,k,spread_mean,spread_stderr,seconds'

    def test_json_carries_master_seed_and_plan(self, table, tmp_path):
        written = emit_report(table, friedman_ranks(table), None, tmp_path, plan(), errors=['boom'])
        report = json.loads(written['report'].read_text(encoding='utf-8'))
        assert report['master_seed'] == 1234
        assert report['plan']['seed_sizes'] == [10, 20, 30, 40, 50]
        assert report['errors'] == ['boom']
        assert report['ranks']['overall']['phee'] == 2.0
        assert 'numpy' in report['versions']
        assert 'generated_at' in report

    def test_untimed_report_is_stable(self, table, tmp_path):
        untimed = table.assign(seconds=float('nan'))
        first = emit_report(untimed, None, None, tmp_path / 'a', plan(record_timing=False))
        second = emit_report(untimed, None, None, tmp_path / 'b', plan(record_timing=False))
        for name in ('results', 'report'):
            assert first[name].read_bytes() == second[name].read_bytes()
        report = json.loads(first['report'].read_text(encoding='utf-8'))
        assert 'generated_at' not in report
        assert report['results'][0]['seconds'] is None

    def test_rank_csv_shape(self, table, tmp_path):
        written = emit_report(table, friedman_ranks(table), None, tmp_path, plan())
        ranks = pd.read_csv(written['ranks'])
        assert list(ranks.columns) == ['algorithm', 'net', 'mail', 'overall']
        assert list(ranks['algorithm']) == ['phee', 'celf']

    def test_wilcoxon_csv_names_pair(self, table, tmp_path):
        report = ExperimentReport(table, plan())
        report.add_wilcoxon('phee', 'celf', wilcoxon_table(table, 'phee', 'celf'))
        written = report.write(tmp_path)
        rows = pd.read_csv(written['wilcoxon'])
        assert set(rows['first']) == {'phee'}
        assert set(rows['second']) == {'celf'}
        assert list(rows['better']) == [5, 5]


class TestResultFiles:
    def test_read_back(self, table, tmp_path):
        written = emit_report(table, None, None, tmp_path, plan())
        again = read_results(written['results'])
        assert len(again) == len(table)
        assert again['k'].dtype.kind == 'i'
        assert friedman_ranks(again).overall['phee'] == 2.0

    def test_rejects_other_csv(self, tmp_path):
        path = tmp_path / 'other.csv'
        path.write_text('a,b\n1,2\n', encoding='utf-8')
        with pytest.raises(ValueError):
            read_results(path)

    def test_curves_sorted_long_format(self, table):
        curves = spread_curves(table.sample(frac=1.0, random_state=0))
        assert list(curves.columns) == ['dataset', 'algorithm', 'k', 'spread_mean', 'spread_stderr']
        first = curves[(curves['dataset'] == 'mail') & (curves['algorithm'] == 'celf')]
        assert list(first['k']) == [10, 20, 30, 40, 50]
