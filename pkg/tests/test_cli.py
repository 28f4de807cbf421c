import json
import tomllib

import pytest

from cut_selector.main import EXIT_LIMIT, EXIT_NO_TWO_QUBIT, EXIT_OK, EXIT_PARSE, main
from cut_selector.storage import columns


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_select_picks_the_barbell_bridge(capsys, write, barbell_text):
    code, out, _ = run(capsys, 'select', write('barbell.txt', barbell_text))
    assert code == EXIT_OK
    result = json.loads(out)
    assert result['method'] == 'tw2s'
    assert result['edge'] == [2, 3]
    assert result['gate_index'] == 3
    assert len(result['shortlist']) == 7


def test_select_explain_and_interaction_dump(capsys, write, tmp_path, barbell_text):
    dump = tmp_path / 'interaction.txt'
    code, out, _ = run(capsys, 'select', write('b.txt', barbell_text), '--explain', '--dump-interaction', str(dump))
    assert code == EXIT_OK
    trace = json.loads(out)['trace']
    assert len(trace) == 6
    assert dump.read_text().startswith('6 7\n')


def test_random_selection_is_reproducible(capsys, write, barbell_text):
    path = write('b.txt', barbell_text)
    _, first, _ = run(capsys, 'select', path, '--method', 'random', '--seed', '11')
    _, second, _ = run(capsys, 'select', path, '--method', 'random', '--seed', '11')
    assert first == second
    assert json.loads(first)['seed'] == 11


def test_malformed_circuit_reports_the_line(capsys, write):
    code, _, err = run(capsys, 'select', write('bad.txt', 'qubits 2\nh 0\nfoo 0 1\n'))
    assert code == EXIT_PARSE
    assert 'line 3' in err


def test_circuit_without_two_qubit_gates(capsys, write):
    code, _, err = run(capsys, 'select', write('local.txt', 'qubits 2\nh 0\nh 1\n'))
    assert code == EXIT_NO_TWO_QUBIT
    assert 'two-qubit' in err


def test_route_reports_each_seed(capsys, write, barbell_text):
    code, out, _ = run(capsys, 'route', write('b.txt', barbell_text), '--coupling', 'heavyhex:3', '--seeds', '1,2')
    assert code == EXIT_OK
    result = json.loads(out)
    assert result['seeds'] == [1, 2]
    assert len(result['ecr_counts']) == 2
    assert all(count >= 7 for count in result['ecr_counts'])


def test_estimate_exact_direct_and_cut(capsys, write):
    circuit = write('c.txt', 'qubits 2\nx 0\ncx 0 1\n')
    obs = write('o.txt', '1.0 ZZ\n')
    code, out, _ = run(capsys, 'estimate', circuit, obs, '--strategy', 'direct')
    assert code == EXIT_OK
    assert json.loads(out)['value'] == pytest.approx(1.0)
    code, out, _ = run(capsys, 'estimate', circuit, obs, '--cut-gate', '1')
    assert code == EXIT_OK
    result = json.loads(out)
    assert result['value'] == pytest.approx(1.0)
    assert len(result['per_branch']) == 6


def test_estimate_rejects_a_local_cut_gate(capsys, write):
    code, _, err = run(capsys, 'estimate', write('c.txt', 'qubits 2\nx 0\ncx 0 1\n'), write('o.txt', '1 ZZ\n'),
                       '--cut-gate', '0')
    assert code == EXIT_PARSE
    assert 'cut-gate' in err


def test_estimate_beyond_the_simulator_width(capsys, write):
    code, _, _ = run(capsys, 'estimate', write('wide.txt', 'qubits 13\nh 0\n'), write('o.txt', '1 ' + 'Z' * 13 + '\n'),
                     '--strategy', 'direct')
    assert code == EXIT_LIMIT


def test_generate_graph_and_circuit(capsys):
    code, out, _ = run(capsys, 'generate', 'barbell', '--param', 'k=3')
    assert code == EXIT_OK
    assert out.startswith('6 7\n')
    code, out, _ = run(capsys, 'generate', 'barbell', '--param', 'k=3', '--circuit')
    assert code == EXIT_OK
    assert out.startswith('qubits 6')


def test_generate_rejects_invalid_parameters(capsys):
    code, _, err = run(capsys, 'generate', 'barbell', '--param', 'k=0')
    assert code == EXIT_PARSE
    assert 'Invalid k' in err


def test_breakeven_writes_infinite_rows(capsys, tmp_path):
    code, out, _ = run(capsys, '--results-dir', str(tmp_path), '--storage', 'csv', 'breakeven')
    assert code == EXIT_OK
    assert json.loads(out)['rows'] == 48
    text = (tmp_path / 'breakeven.csv').read_text()
    assert text.splitlines()[0].split(',') == columns('breakeven')
    assert ',inf' in text


def test_config_prints_toml(capsys, tmp_path):
    code, out, _ = run(capsys, '--results-dir', str(tmp_path), 'config')
    assert code == EXIT_OK
    data = tomllib.loads(out)
    assert data['results_dir'] == str(tmp_path)
    assert data['selection']['k'] == 3


def test_bench_with_an_empty_configuration(capsys, write, tmp_path):
    config = write('run.toml', 'coupling = "heavyhex:3"\nrouting_seeds = [1]\n')
    out_dir = tmp_path / 'out'
    code, out, _ = run(capsys, '--config', config, '--results-dir', str(out_dir), '--storage', 'csv', 'bench')
    assert code == EXIT_OK
    assert json.loads(out)['rows'] == 0
    assert (out_dir / 'experiments.csv').read_text() == ','.join(columns('experiments')) + '\n'


def test_bench_runs_configured_families(capsys, write, tmp_path):
    config = write(
        'run.toml',
        'coupling = "heavyhex:3"\nrouting_seeds = [1]\n\n[bench]\nrandom_trials = 1\n\n'
        '[[bench.families]]\nseeds = [0]\n\n[bench.families.spec]\nfamily = "barbell"\nk = 3\n',
    )
    code, out, _ = run(capsys, '--config', config, '--results-dir', str(tmp_path), '--storage', 'sqlite', 'bench')
    assert code == EXIT_OK
    assert json.loads(out)['rows'] == 1
    assert (tmp_path / 'experiments.db').exists()


def test_bad_config_file(capsys, write):
    code, _, err = run(capsys, '--config', write('bad.toml', '[selection]\nk = 0\n'), 'config')
    assert code == EXIT_PARSE
    assert 'selection.k' in err
