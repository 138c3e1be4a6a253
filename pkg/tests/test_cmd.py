"""Test the command line entry point, figure tables and strength sweeps."""

import json
import math
import numpy as np
import pytest

from qrevsim.cmd import main, parse_observers
from qrevsim.Errors import InvalidParameter
from qrevsim.analysis import FINE_MIN
from qrevsim.figures import FigureTable, tradeoff_table, fine_table, mutual_information_table, sweep_table, \
    FIGURE_FILES


def test_tradeoff_table():
    table = tradeoff_table(201)
    assert table.header() == "d_rel,d_rev_K1,d_rev_K10,d_rev_K100"
    assert table.column('d_rev_K1')[0] == 1.0
    assert table.column('d_rev_K10')[0] == pytest.approx(1.0 / math.sqrt(10.0))
    assert table.column('d_rev_K100')[0] == pytest.approx(0.1)
    assert table.column('d_rev_K1')[-1] == 0.0
    assert np.allclose(table.column('d_rev_K1') ** 2 + table.column('d_rel') ** 2, 1.0, atol=1e-12)


def test_fine_table():
    table = fine_table(201)
    fine = table.column('fine_K1')
    assert fine.min() == pytest.approx(FINE_MIN, abs=1e-4)
    assert table.column('d_rel')[np.argmin(fine)] == pytest.approx(math.sqrt(0.5), abs=0.005)
    assert fine[0] == 0.5 and fine[-1] == 0.5


def test_mutual_information_table():
    table = mutual_information_table(101)
    information = table.column('mutual_info')
    assert information[0] == 0.0
    assert information[-1] == 1.0
    assert np.all(np.diff(information) > 0)


def test_grid_too_small():
    with pytest.raises(InvalidParameter):
        tradeoff_table(1)


def test_sweep_table_with_optimum():
    c0 = math.exp(-2.0)
    table = sweep_table(c0, 11, include_optimum=True)
    assert len(table) == 12
    eta = table.column('eta')
    assert np.all(np.diff(eta) > 0)
    index = int(np.argmin(np.abs(eta - math.log(2.0) / 4.0)))
    assert table.column('fine')[index] == pytest.approx(FINE_MIN, abs=1e-12)
    assert np.all(table.column('residual') < 1e-12)


def test_parse_observers():
    assert parse_observers('') == ((), ())
    assert parse_observers('0.1, eve:0.2') == (('observer2', 'eve'), (0.1, 0.2))
    with pytest.raises(InvalidParameter):
        parse_observers('eve:x')
    with pytest.raises(InvalidParameter):
        parse_observers('eve:0.1,eve:0.2')


def test_figures_command(tmp_path):
    assert main(['-v', '-o', str(tmp_path), 'figures', '-g', '51']) == 0
    for name, file_name in FIGURE_FILES.items():
        content = (tmp_path / file_name).read_bytes()
        assert b'\r' not in content
        assert content.count(b'\n') == 52
        table = FigureTable.read_csv(name, str(tmp_path / file_name))
        assert len(table) == 51
    metadata = json.loads((tmp_path / "figures.json").read_text())
    assert metadata['schema_version'] == 1
    assert set(metadata['figures']) == set(FIGURE_FILES)
    assert (tmp_path / "qrevsim.log").exists()


def test_sweep_command(tmp_path):
    output = tmp_path / "sweep.csv"
    assert main(['-v', '-o', str(tmp_path), 'sweep', '--n', '2', '--epsilon', '0.5', '-g', '21',
                 '--include_optimum', '--output', str(output)]) == 0
    table = FigureTable.read_csv('sweep', str(output))
    assert table.header() == "eta,c,p_error,fidelity,d_rel,d_rev,theta,fine,residual"
    assert len(table) == 22
    assert table.column('fine').min() == pytest.approx(FINE_MIN, abs=1e-12)


@pytest.mark.parametrize("arguments", [
    ['sweep', '--c0', '1.5'],
    ['sweep', '--c0', '0.5', '--n', '2', '--epsilon', '0.5'],
    ['sweep', '--n', '2'],
    ['simulate', '--eta', '0.5', '--observers', '0.6'],
    ['simulate', '--n', '0'],
    ['verify', '--grid_name', 'missing'],
])
def test_invalid_arguments(tmp_path, capsys, arguments):
    assert main(['-v', '-o', str(tmp_path)] + arguments) == 2
    assert capsys.readouterr().err.startswith("qrevsim: ")


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        main(['nothing'])


def _simulate(tmp_path, capsys, *arguments):
    status = main(['-v', '-o', str(tmp_path), 'simulate', '--runs', '2000', '--seed', '42'] + list(arguments))
    return status, capsys.readouterr().out


def test_simulate_json_is_deterministic(tmp_path, capsys):
    status, first = _simulate(tmp_path, capsys, '--json')
    _, second = _simulate(tmp_path, capsys, '--json')
    assert status == 0
    assert first == second
    report = json.loads(first)
    assert report['schema_version'] == 1
    assert report['parameters']['seed'] == 42
    assert report['parameters']['n_runs'] == 2000
    assert report['expected']['p_error'] == pytest.approx(0.0350632525, abs=1e-10)
    assert report['counts']['spin_checks'] + report['counts']['bell_checks'] == 2000


def test_simulate_csv(tmp_path, capsys):
    status, output = _simulate(tmp_path, capsys, '--csv')
    lines = output.splitlines()
    assert status == 0
    assert lines[0] == "quantity,empirical,half_width,expected,z"
    assert [line.split(',')[0] for line in lines[1:]] == ['p_error', 'fidelity', 'mean_fine_per_run']


def test_simulate_text(tmp_path, capsys):
    status, output = _simulate(tmp_path, capsys)
    assert status == 0
    assert "closed form" in output
    assert "tradeoff" in output


def test_simulate_writes_run_log(tmp_path, capsys):
    _simulate(tmp_path, capsys, '--json')
    lines = (tmp_path / "runs.log").read_text().splitlines()
    assert lines[0] == "run,bob_outcome,bob_spin,alice_choice,alice_result,fine"
    assert len(lines) == 2001
    assert lines[1].startswith("0,")


def test_simulate_without_measurement(tmp_path, capsys):
    status, output = _simulate(tmp_path, capsys, '--json', '--eta', '0')
    report = json.loads(output)
    assert status == 0
    assert report['empirical']['fidelity'] == 1.0
    assert report['counts']['yes'] == report['counts']['bell_checks']


def test_simulate_with_observers(tmp_path, capsys):
    status, output = _simulate(tmp_path, capsys, '--json', '--eta', '0.3', '--observers', 'eve:0.2')
    report = json.loads(output)
    assert status == 0
    assert report['parameters']['observers'] == {'eve': 0.2}
    assert report['observers']['eve']['p_error'] == pytest.approx(report['observers']['eve']['expected_p_error'],
                                                                  abs=1e-12)


def test_options_file_and_overrides(tmp_path, capsys):
    options_file = tmp_path / "options.json"
    options_file.write_text(json.dumps({'alice_check_probability': 1.0}))
    status = main(['-v', '-c', str(options_file), '-o', str(tmp_path), 'simulate', '--runs', '500', '--json'])
    report = json.loads(capsys.readouterr().out)
    assert status == 0
    assert report['counts']['bell_checks'] == 0
    main(['-v', '-c', str(options_file), '-x', 'alice_check_probability=0.0', '-o', str(tmp_path),
          'simulate', '--runs', '500', '--json'])
    report = json.loads(capsys.readouterr().out)
    assert report['counts']['spin_checks'] == 0


def test_verify_command(tmp_path, capsys):
    assert main(['-v', '-o', str(tmp_path), 'verify', '--grid_name', 'quick']) == 0
    output = capsys.readouterr().out
    assert "FAIL" not in output
    assert output.rstrip().endswith("checks passed")
    assert (tmp_path / "checks.log").read_text().startswith("check,result,deviation,tolerance,detail")


def test_verify_command_detects_fault(tmp_path, capsys):
    assert main(['-v', '-o', str(tmp_path), 'verify', '--grid_name', 'quick', '--inject-fault']) == 1
    assert "FAIL" in capsys.readouterr().out
