import argparse
import json
import logging
import statistics
import sys
from pathlib import Path
from typing import Optional

# Load environment variables from .env file if it exists
try:
    from dotenv import load_dotenv
    env_file = Path(__file__).parent.parent.parent / '.env'
    if env_file.exists():
        load_dotenv(env_file)
except ImportError:
    pass  # python-dotenv not available, continue with system env vars

from pydantic import TypeAdapter, ValidationError

from .analysis.breakeven import breakeven_grid
from .analysis.experiments import run_bench, summarize
from .analysis.failure import failure_sweep, tfim_crossover
from .circuit.builders import circuit_from_graph
from .circuit.interaction import extract, write_interaction
from .circuit.observable import parse_observable
from .circuit.text_format import CircuitParser, FileReader, emit_circuit
from .config import Config, dump_run_config, load_run_config
from .exceptions import (
    CircuitFormatError,
    GraphFormatError,
    NoTwoQubitGatesError,
    ObservableFormatError,
    ParameterError,
    RoutingError,
    SimulationLimitError,
)
from .graphs.generators import generate
from .graphs.ugraph import write_graph
from .models.base import CutSelection, GraphFamilySpec, NoiseModel, RunConfig, as_parameter_error
from .routing.coupling import load_coupling
from .routing.sabre import route
from .selection.elimination import min_fill_trace, trace_to_jsonl
from .selection.selector import random_cut, select_cut, select_stage1_only
from .simulation.estimation import DirectEstimator, QpdEstimator
from .storage import ResultsStoreFactory, default_store_kwargs

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_NO_TWO_QUBIT = 3
EXIT_LIMIT = 4

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: str = Config.LOG_LEVEL, log_file: Optional[str] = Config.LOG_FILE) -> logging.Logger:
    """Configure the package logger: stderr, plus a file when requested."""
    root = logging.getLogger('cut_selector')
    root.setLevel(level)
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT)

    # Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    root.addHandler(console_handler)

    # File handler
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    return root


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _read_circuit(path: str):
    return CircuitParser().parse_file(Path(path))


def _run_config(args) -> RunConfig:
    """Config file (or defaults) with the global flags applied on top."""
    cfg = load_run_config(args.config) if args.config else RunConfig(
        routing_seeds=Config.ROUTING_SEEDS, results_dir=Config.RESULTS_DIR, storage=Config.STORAGE_TYPE
    )
    overrides = {}
    if args.results_dir:
        overrides['results_dir'] = args.results_dir
    if args.storage:
        overrides['storage'] = args.storage
    return cfg.model_copy(update=overrides)


def _store(cfg: RunConfig, args):
    # an explicit --results-dir also moves the sqlite file
    sqlite_path = None if args.results_dir else Config.SQLITE_PATH
    return ResultsStoreFactory.create_store(cfg.storage, **default_store_kwargs(cfg.storage, cfg.results_dir, sqlite_path))


def _seeds(raw: Optional[str], default: list[int]) -> list[int]:
    if not raw:
        return list(default)
    try:
        return [int(s) for s in raw.split(',') if s.strip()]
    except ValueError:
        raise ParameterError('seeds', f'{raw!r} is not a comma separated list of integers') from None


# commands


def cmd_select(args) -> int:
    c = _read_circuit(args.circuit)
    if args.dump_interaction:
        FileReader.write_content(Path(args.dump_interaction), write_interaction(extract(c)))

    if args.method == 'random':
        selection: CutSelection = random_cut(c, args.seed)
    elif args.method == 'stage1_only':
        selection = select_stage1_only(c, args.k, args.alpha, args.beta)
    else:
        selection = select_cut(c, args.k, args.alpha, args.beta, args.alpha2, args.beta2)

    output = selection.to_output()
    if args.method == 'random':
        output['seed'] = args.seed
    if args.explain:
        trace = min_fill_trace(extract(c).base)
        output['trace'] = [json.loads(line) for line in trace_to_jsonl(trace).splitlines()]
    _emit_json(output)
    return EXIT_OK


def cmd_route(args) -> int:
    c = _read_circuit(args.circuit)
    cm = load_coupling(args.coupling)
    seeds = _seeds(args.seeds, Config.ROUTING_SEEDS)
    results = [route(c, cm, seed) for seed in seeds]
    if args.dump_routed:
        FileReader.write_content(Path(args.dump_routed), emit_circuit(results[0].circuit))
    _emit_json(
        {
            'circuit': c.name,
            'coupling': cm.name,
            'seeds': seeds,
            'ecr_counts': [r.ecr_count for r in results],
            'swaps': [r.n_swaps for r in results],
            'ecr_mean': statistics.fmean(r.ecr_count for r in results),
        }
    )
    return EXIT_OK


def cmd_estimate(args) -> int:
    c = _read_circuit(args.circuit)
    obs = parse_observable(FileReader.read_full_content(Path(args.observable)))
    noise = NoiseModel(p_ecr=args.p_ecr, p_meas=args.p_meas)
    cm = load_coupling(args.coupling) if args.routed else None
    routing_seed = _seeds(args.seeds, Config.ROUTING_SEEDS)[0]

    if args.strategy == 'direct':
        estimator = DirectEstimator(c, obs, noise, cm, routing_seed)
        result = estimator.exact() if args.shots is None else estimator.estimate(args.shots, args.seed)
    else:
        if args.cut_gate is None:
            cut = select_cut(c)
        else:
            if not 0 <= args.cut_gate < len(c.gates) or not c.gates[args.cut_gate].is_two_qubit:
                raise ParameterError('cut-gate', f'{args.cut_gate} is not the index of a two-qubit gate')
            cut = CutSelection(gate_index=args.cut_gate, edge=c.gates[args.cut_gate].pair, method='tw2s')
        qpd = QpdEstimator(c, cut, obs, noise, cm, routing_seed)
        result = qpd.exact(args.strategy) if args.shots is None else qpd.estimate(args.shots, args.strategy, args.seed)
    _emit_json({'value': result.value, 'per_branch': result.per_branch, 'shots': result.shots, 'strategy': result.strategy})
    return EXIT_OK


def _parse_param(raw: str) -> tuple[str, object]:
    key, sep, value = raw.partition('=')
    if not sep:
        raise ParameterError('param', f'{raw!r} is not key=value')
    for cast in (int, float):
        try:
            return key, cast(value)
        except ValueError:
            continue
    return key, value


def cmd_generate(args) -> int:
    data = dict(_parse_param(p) for p in args.param)
    data.update(family=args.family, seed=args.seed)
    spec = TypeAdapter(GraphFamilySpec).validate_python(data)
    g = generate(spec)
    text = emit_circuit(circuit_from_graph(g, name=spec.condition)) if args.circuit else write_graph(g)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _run_config(args)
    cm = load_coupling(cfg.coupling)
    records = run_bench(cfg, cm)
    store = _store(cfg, args)
    _emit_json(
        {
            'experiments': store.write_experiments(records),
            'summary': store.write_summary(summarize(records)),
            'rows': len(records),
            'failed': sum(1 for r in records if r.error),
        }
    )
    return EXIT_OK


def cmd_breakeven(args) -> int:
    cfg = _run_config(args)
    be = cfg.breakeven
    rows = breakeven_grid(be.p, be.n_ecr, be.sigma_h, be.delta_n, be.h_ideal, be.gamma)
    _emit_json({'breakeven': _store(cfg, args).write_breakeven(rows), 'rows': len(rows)})
    return EXIT_OK


def cmd_failure_sweep(args) -> int:
    cfg = _run_config(args)
    overrides = {}
    if args.repetitions is not None:
        overrides['repetitions'] = args.repetitions
    if args.n:
        overrides['n_values'] = args.n
    if args.steps:
        overrides['trotter_steps'] = args.steps
    if args.budgets:
        overrides['budgets'] = args.budgets
    sweep = cfg.failure_sweep.model_copy(update=overrides)

    cm = load_coupling(cfg.coupling)
    store = _store(cfg, args)
    rows = failure_sweep(sweep, cm, cfg.routing_seeds, cfg.selection)
    output = {'winrate': store.write_winrate(rows), 'rows': len(rows)}
    if sweep.p_meas_sweep:
        output['crossover'] = store.write_crossover(tfim_crossover(sweep, cfg.selection))
    _emit_json(output)
    return EXIT_OK


def cmd_config(args) -> int:
    sys.stdout.write(dump_run_config(_run_config(args)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='cut-selector', description='Select a two-qubit gate to cut and benchmark the routing savings'
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging')
    parser.add_argument('--log-file', default=Config.LOG_FILE, help='Also write the log to this file')
    parser.add_argument('--config', help='TOML run configuration')
    parser.add_argument('--results-dir', help='Directory for result files')
    parser.add_argument('--storage', choices=['csv', 'sqlite'], help='Result sink')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('select', help='Pick the gate to cut')
    p.add_argument('circuit')
    p.add_argument('--method', choices=['tw2s', 'stage1_only', 'random'], default='tw2s')
    p.add_argument('--seed', type=int, default=0, help='Seed for --method random')
    p.add_argument('--k', type=int, default=Config.SHORTLIST_K)
    p.add_argument('--alpha', type=float, default=Config.ALPHA)
    p.add_argument('--beta', type=float, default=Config.BETA)
    p.add_argument('--alpha2', type=float, default=Config.ALPHA2)
    p.add_argument('--beta2', type=float, default=Config.BETA2)
    p.add_argument('--explain', action='store_true', help='Include the elimination trace')
    p.add_argument('--dump-interaction', help='Write the weighted interaction graph here')
    p.set_defaults(handler=cmd_select)

    p = sub.add_parser('route', help='Routed ECR count of a circuit')
    p.add_argument('circuit')
    p.add_argument('--seeds', help='Comma separated routing seeds')
    p.add_argument('--coupling', default='heavyhex127', help='heavyhex127, heavyhex:<d> or a graph file')
    p.add_argument('--dump-routed', help='Write the routed circuit of the first seed here')
    p.set_defaults(handler=cmd_route)

    p = sub.add_parser('estimate', help='Estimate an observable, optionally through a cut')
    p.add_argument('circuit')
    p.add_argument('observable')
    p.add_argument('--strategy', choices=['direct', 'shared', 'per_subcircuit_1_5x'], default='shared')
    p.add_argument('--cut-gate', type=int, help='Gate index to cut (default: TW2S choice)')
    p.add_argument('--shots', type=int, help='Shots per measurement setting (default: exact)')
    p.add_argument('--p-ecr', type=float, default=0.0)
    p.add_argument('--p-meas', type=float, default=0.0)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--routed', action='store_true', help='Simulate the routed circuit')
    p.add_argument('--coupling', default='heavyhex127')
    p.add_argument('--seeds', help='Routing seed (first is used)')
    p.set_defaults(handler=cmd_estimate)

    p = sub.add_parser('generate', help='Emit a benchmark graph or its circuit')
    p.add_argument('family', choices=['grid', 'watts_strogatz', 'barbell', 'sbm', 'erdos_renyi', 'j1j2_ring'])
    p.add_argument('--param', action='append', default=[], help='key=value family parameter')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--circuit', action='store_true', help='Emit the CX circuit instead of the graph')
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser('bench', help='Run the family benchmark of the configuration')
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser('breakeven', help='Breakeven shot counts over the configured grid')
    p.set_defaults(handler=cmd_breakeven)

    p = sub.add_parser('failure-sweep', help='Noisy win rates of the cut TFIM circuits')
    p.add_argument('--repetitions', type=int)
    p.add_argument('--n', type=int, nargs='+')
    p.add_argument('--steps', type=int, nargs='+')
    p.add_argument('--budgets', type=int, nargs='+')
    p.set_defaults(handler=cmd_failure_sweep)

    p = sub.add_parser('config', help='Print the effective run configuration as TOML')
    p.set_defaults(handler=cmd_config)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging('DEBUG' if args.verbose else Config.LOG_LEVEL, args.log_file)

    try:
        Config.validate_config()
        return args.handler(args)
    except (CircuitFormatError, GraphFormatError, ObservableFormatError) as exc:
        logger.error('%s', exc)
        return EXIT_PARSE
    except ValidationError as exc:
        logger.error('%s', as_parameter_error(exc))
        return EXIT_PARSE
    except ParameterError as exc:
        logger.error('%s', exc)
        return EXIT_PARSE
    except NoTwoQubitGatesError as exc:
        logger.error('%s', exc)
        return EXIT_NO_TWO_QUBIT
    except (SimulationLimitError, RoutingError) as exc:
        logger.error('%s', exc)
        return EXIT_LIMIT
    except Exception:
        logger.exception('unexpected error')
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
