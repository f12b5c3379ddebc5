"""``ppqc`` command-line front end.

Every subcommand resolves a config (defaults, then ``--config`` JSON, then
flags), validates it completely, computes all rows, and only then writes
CSV (or JSON with ``--json``) to ``--out`` or stdout.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Any, Callable

from ppqc.entanglement import empirical_threshold, find_witness_pair, ppt_check, separability_bound
from ppqc.errors import ConfigError, IoError, PPQCError
from ppqc.estimation import expected_repetitions, monte_carlo_repetitions, nmr_scaling_table
from ppqc.oracles import parse_oracle
from ppqc.protocols import MAX_ORDER_FINDING_N, order_finding_registers, run_deutsch_jozsa, run_order_finding
from ppqc.states import MAX_QUBITS, werner

COMMANDS = ("run", "threshold", "werner-scan", "nmr-scaling", "repetitions")

COLUMNS = {
    "run": ["protocol", "n1", "n2", "epsilon", "success_probability", "expected_repetitions"],
    "threshold": ["n1", "n2", "oracle", "empirical_threshold", "closed_form_bound", "abs_difference"],
    "werner-scan": ["delta", "min_pt_eigenvalue", "entangled"],
    "nmr-scaling": ["n", "epsilon", "sample_lower_bound"],
    "repetitions": ["p", "trials", "seed", "expected", "monte_carlo_mean", "stderr"],
}

DEFAULTS: dict[str, dict[str, Any]] = {
    "run": {
        "protocol": "deutsch-jozsa",
        "n1": 2,
        "oracle": "constant:0",
        "epsilon": [1.0],
        "N": 15,
        "a": 7,
        "shots": 10,
        "seed": 0,
    },
    "threshold": {"n1": 2, "n2": [1], "oracle": "parity", "tol": 1e-9},
    "werner-scan": {"steps": 101, "tol": 1e-10},
    "nmr-scaling": {"max_n": 16},
    "repetitions": {"p": [0.5, 0.25, 0.125], "trials": 100000, "seed": 0},
}


@dataclass
class ExperimentConfig:
    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    output_path: str | None = None
    as_json: bool = False


def _floats(value, name) -> list[float]:
    if isinstance(value, (int, float)):
        value = [value]
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    try:
        return [float(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected a list of numbers, got {value!r}") from None


def _ints(value, name) -> list[int]:
    out = []
    for v in _floats(value, name):
        if v != int(v):
            raise ConfigError(f"{name}: expected integers, got {v!r}")
        out.append(int(v))
    return out


def _int(params, name, lo=None, hi=None) -> int:
    vals = _ints(params[name], name)
    if len(vals) != 1:
        raise ConfigError(f"{name}: expected a single integer")
    v = vals[0]
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        raise ConfigError(f"{name}={v} outside [{lo}, {hi}]")
    return v


def _threads() -> int:
    raw = os.environ.get("PPQC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"PPQC_THREADS must be an integer, got {raw!r}") from None


def _sweep(fn: Callable, items: list) -> list:
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(fn, items))


def _oracle(spec, n1, n2):
    try:
        return parse_oracle(str(spec), n1, n2)
    except IoError:
        raise
    except PPQCError as exc:
        raise ConfigError(f"oracle: {exc}") from exc


def _plan_run(p: dict) -> Callable[[], list[dict]]:
    protocol = p["protocol"]
    epsilons = _floats(p["epsilon"], "epsilon")
    if not epsilons:
        raise ConfigError("epsilon: need at least one value")
    for e in epsilons:
        if not 0.0 <= e <= 1.0:
            raise ConfigError(f"epsilon={e!r} outside [0, 1]")
    if protocol == "deutsch-jozsa":
        n1 = _int(p, "n1", 1, MAX_QUBITS - 1)
        f = _oracle(p["oracle"], n1, 1)
        if not (f.is_constant() or f.is_balanced()):
            raise ConfigError(f"oracle {p['oracle']!r} is neither constant nor balanced")

        def compute():
            rows = []
            for eps in epsilons:
                res = run_deutsch_jozsa(n1, f, eps)
                rows.append(_run_row("deutsch-jozsa", n1, 1, eps, res.success_probability))
            return rows

        return compute
    if protocol == "order-finding":
        spec = str(p.get("oracle", ""))
        modulus, a = _int(p, "N", 2, MAX_ORDER_FINDING_N), _int(p, "a", 1)
        if spec.startswith("modexp:"):
            try:
                a, modulus = (int(v) for v in spec.split(":")[1:])
            except ValueError:
                raise ConfigError(f"bad modexp oracle spec {spec!r}") from None
        if not 2 <= modulus <= MAX_ORDER_FINDING_N:
            raise ConfigError(f"N={modulus} outside [2, {MAX_ORDER_FINDING_N}]")
        if gcd(a, modulus) != 1:
            raise ConfigError(f"gcd({a}, {modulus}) != 1")
        shots, seed = _int(p, "shots", 1), _int(p, "seed", 0, 2**64 - 1)
        n1, n2 = order_finding_registers(modulus)

        def compute():
            rows = []
            for eps in epsilons:
                res = run_order_finding(modulus, a, eps, shots=shots, seed=seed)
                rows.append(_run_row("order-finding", n1, n2, eps, res.success_probability))
            return rows

        return compute
    raise ConfigError(f"unknown protocol {protocol!r}")


def _run_row(protocol, n1, n2, eps, prob) -> dict:
    reps = expected_repetitions(prob) if prob > 0 else float("inf")
    return dict(protocol=protocol, n1=n1, n2=n2, epsilon=eps, success_probability=prob, expected_repetitions=reps)


def _plan_threshold(p: dict) -> Callable[[], list[dict]]:
    n1 = _int(p, "n1", 1, MAX_QUBITS - 1)
    n2s = _ints(p["n2"], "n2")
    tol = float(p["tol"])
    if not tol > 0:
        raise ConfigError(f"tol must be positive, got {tol!r}")
    jobs = []
    for n2 in n2s:
        if n2 < 1 or n1 + n2 > MAX_QUBITS:
            raise ConfigError(f"n1={n1}, n2={n2} exceeds the {MAX_QUBITS}-qubit budget")
        f = _oracle(p["oracle"], n1, n2)
        try:
            find_witness_pair(f)
        except PPQCError as exc:
            raise ConfigError(f"oracle {p['oracle']!r}: {exc}") from exc
        jobs.append((n2, f))

    def one(job):
        n2, f = job
        emp = empirical_threshold(f, n1, n2, tol)
        bound = separability_bound(n2)
        return dict(
            n1=n1, n2=n2, oracle=str(p["oracle"]), empirical_threshold=emp,
            closed_form_bound=bound, abs_difference=abs(emp - bound),
        )

    return lambda: sorted(_sweep(one, jobs), key=lambda r: r["n2"])


def _plan_werner(p: dict) -> Callable[[], list[dict]]:
    steps = _int(p, "steps", 2)
    tol = float(p["tol"])

    def compute():
        rows = []
        for i in range(steps):
            delta = i / (steps - 1)
            v = ppt_check(werner(delta), tol)
            rows.append(dict(delta=delta, min_pt_eigenvalue=v.min_pt_eigenvalue, entangled=v.entangled))
        return rows

    return compute


def _plan_nmr(p: dict) -> Callable[[], list[dict]]:
    max_n = _int(p, "max_n", 1, 64)

    def compute():
        return [
            dict(n=r.n, epsilon=r.epsilon, sample_lower_bound=r.sample_lower_bound)
            for r in nmr_scaling_table(max_n)
        ]

    return compute


def _plan_repetitions(p: dict) -> Callable[[], list[dict]]:
    ps = _floats(p["p"], "p")
    for v in ps:
        if not 0.0 < v <= 1.0:
            raise ConfigError(f"p={v!r} outside (0, 1]")
    trials = _int(p, "trials", 1)
    seed = _int(p, "seed", 0, 2**64 - 1)

    def one(prob):
        est = monte_carlo_repetitions(prob, trials, seed)
        return dict(
            p=est.p, trials=est.trials, seed=est.seed, expected=est.expected_repetitions,
            monte_carlo_mean=est.monte_carlo_mean, stderr=est.stderr,
        )

    def compute():
        order = {v: i for i, v in enumerate(ps)}
        return sorted(_sweep(one, ps), key=lambda r: order[r["p"]])

    return compute


PLANNERS = {
    "run": _plan_run,
    "threshold": _plan_threshold,
    "werner-scan": _plan_werner,
    "nmr-scaling": _plan_nmr,
    "repetitions": _plan_repetitions,
}


def _cmd(name):
    def cmd(config: ExperimentConfig) -> list[dict]:
        return PLANNERS[name](resolve_parameters(config))()

    cmd.__name__ = "cmd_" + name.replace("-", "_")
    return cmd


cmd_run = _cmd("run")
cmd_threshold = _cmd("threshold")
cmd_werner_scan = _cmd("werner-scan")
cmd_nmr_scaling = _cmd("nmr-scaling")
cmd_repetitions = _cmd("repetitions")


def resolve_parameters(config: ExperimentConfig) -> dict:
    if config.command not in COMMANDS:
        raise ConfigError(f"unknown command {config.command!r}")
    params = dict(DEFAULTS[config.command])
    unknown = set(config.parameters) - set(params) - {"seed", "tol"}
    if unknown:
        raise ConfigError(f"unknown parameter(s) for {config.command}: {', '.join(sorted(unknown))}")
    params.update(config.parameters)
    return params


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(format_value(r[c]) for c in columns) + "\n")
    return buf.getvalue()


def to_json(rows: list[dict], columns: list[str]) -> str:
    return json.dumps([{c: r[c] for c in columns} for r in rows], indent=2) + "\n"


def render(config: ExperimentConfig) -> str:
    """Validate, compute and serialize; nothing is written here."""
    compute = PLANNERS[config.command](resolve_parameters(config))
    rows = compute()
    columns = COLUMNS[config.command]
    return to_json(rows, columns) if config.as_json else to_csv(rows, columns)


def load_config_file(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise IoError(path, exc.strerror or str(exc)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top-level JSON value must be an object")
    return data


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message.replace("\n", " "))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--out", default=S, help="output file (default: stdout)")
    common.add_argument("--config", default=S, help="JSON file of parameters; flags override it")
    common.add_argument("--json", action="store_true", default=S, help="emit a JSON array instead of CSV")
    common.add_argument("--seed", type=int, default=S)
    common.add_argument("--tol", type=float, default=S)

    parser = _Parser(prog="ppqc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", parents=[common], help="protocol success probabilities")
    run.add_argument("--protocol", choices=["deutsch-jozsa", "order-finding"], default=S)
    run.add_argument("--n1", type=int, default=S)
    run.add_argument("--oracle", default=S)
    run.add_argument("--epsilon", default=S, help="comma-separated list")
    run.add_argument("--N", dest="N", type=int, default=S)
    run.add_argument("--a", type=int, default=S)
    run.add_argument("--shots", type=int, default=S)

    thr = sub.add_parser("threshold", parents=[common], help="bisected separability threshold")
    thr.add_argument("--n1", type=int, default=S)
    thr.add_argument("--n2", default=S, help="comma-separated list")
    thr.add_argument("--oracle", default=S)

    ws = sub.add_parser("werner-scan", parents=[common], help="PPT scan of the Werner family")
    ws.add_argument("--steps", type=int, default=S)

    nmr = sub.add_parser("nmr-scaling", parents=[common], help="epsilon ~ n/2^n sample-size table")
    nmr.add_argument("--max-n", dest="max_n", type=int, default=S)

    rep = sub.add_parser("repetitions", parents=[common], help="Monte Carlo check of 1/p repetitions")
    rep.add_argument("--p", default=S, help="comma-separated list")
    rep.add_argument("--trials", type=int, default=S)
    return parser


def config_from_args(argv) -> ExperimentConfig:
    ns = vars(build_parser().parse_args(argv))
    command = ns.pop("command")
    out = ns.pop("out", None)
    as_json = ns.pop("json", False)
    params = load_config_file(ns.pop("config")) if "config" in ns else {}
    out = params.pop("out", out) if out is None else out
    as_json = bool(params.pop("json", False)) or as_json
    params.update(ns)
    return ExperimentConfig(command, params, out, as_json)


def main(argv=None) -> int:
    try:
        config = config_from_args(sys.argv[1:] if argv is None else argv)
        text = render(config)
        if config.output_path:
            try:
                with open(config.output_path, "w", newline="\n") as fh:
                    fh.write(text)
            except OSError as exc:
                raise IoError(config.output_path, exc.strerror or str(exc)) from exc
        else:
            sys.stdout.write(text)
    except PPQCError as exc:
        msg = " ".join(str(exc).split())
        print(f"ppqc: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
