"""Declarative scenarios: config parsing, presets, solver dispatch and output.

A scenario file is INI-style text with up to four sections::

    [noise]     a, A_abs, phi, deltaA12, beta_delta
    [coherent]  Delta, J, psi, deltaJ12, drive_amplitude, drive_omega, drive_duration
    [run]       init, solver, alpha, t_max, dt, sample_count, name
    [sweep]     param, values

Numbers accept arithmetic with ``pi``, ``inf``, ``j`` and ``sqrt/exp/cos/sin``.
``drive_omega = auto`` resolves to the achiral resonance and
``drive_duration = auto`` calibrates the pulse before the run.
"""
from __future__ import annotations

import ast
import cmath
import configparser
import csv
import io
import json
import math
import operator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import analytic, basis
from .integrator import EvolutionSpec, TimeSeries, calibrate_pulse, propagate
from .model import CoherentModel, CPViolationError, Drive, ModelError, NoiseModel, achiral_resonance, validate_cp

SOLVERS = ("analytic", "numeric", "both")

CSV_HEADER = (
    "t", "trace", "N123", "N1", "N2", "N3", "F_W0",
    "p_uuu", "p_W0", "p_Wp", "p_Wm", "p_V0", "p_Vp", "p_Vm", "p_ddd",
)
# eigenbasis index of each population column
_POP_COLUMNS = (0, 1, 3, 2, 4, 6, 5, 7)

TRACE_GATE = 1e-8
POSITIVITY_GATE = -1e-8
HERMITIAN_GATE = 1e-8
ORACLE_GATE = 1e-6

# flat parameter name -> (section, field)
FIELDS = {
    "a": ("noise", "a"),
    "A_abs": ("noise", "A_abs"),
    "phi": ("noise", "phi"),
    "deltaA12": ("noise", "deltaA12"),
    "beta_delta": ("noise", "beta_delta"),
    "Delta": ("coherent", "Delta"),
    "J": ("coherent", "J"),
    "psi": ("coherent", "psi"),
    "deltaJ12": ("coherent", "deltaJ12"),
    "drive_amplitude": ("coherent", "drive_amplitude"),
    "drive_omega": ("coherent", "drive_omega"),
    "drive_duration": ("coherent", "drive_duration"),
    "init": ("run", "init"),
    "solver": ("run", "solver"),
    "alpha": ("run", "alpha"),
    "t_max": ("run", "t_max"),
    "dt": ("run", "dt"),
    "sample_count": ("run", "sample_count"),
    "name": ("run", "name"),
}
ALIASES = {"A": "A_abs", "abs_A": "A_abs", "beta": "beta_delta", "betaDelta": "beta_delta", "delta": "Delta"}
_STRING_FIELDS = {"init", "solver", "name"}
_AUTO_FIELDS = {"drive_omega", "drive_duration"}


class ScenarioError(ValueError):
    """Malformed scenario: unknown keys, bad values, unsupported solver choice."""


# ---- expression parsing ---------------------------------------------------

_CONSTANTS = {"pi": math.pi, "inf": math.inf, "e": math.e}
_FUNCS = {"sqrt": cmath.sqrt, "exp": cmath.exp, "cos": cmath.cos, "sin": cmath.sin}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def _eval_node(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.Name) and node.id in _CONSTANTS:
        return _CONSTANTS[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS and not node.keywords:
        return _FUNCS[node.func.id](*(_eval_node(a) for a in node.args))
    raise ScenarioError(f"unsupported expression element: {ast.dump(node)}")


def parse_number(text: str) -> complex | float:
    """Evaluate a numeric expression such as ``pi/3`` or ``0.05*exp(1j*pi)``."""
    try:
        tree = ast.parse(str(text).strip(), mode="eval")
    except SyntaxError as exc:
        raise ScenarioError(f"cannot parse number {text!r}") from exc
    v = _eval_node(tree.body)
    if isinstance(v, complex) and abs(v.imag) <= 1e-15 * max(1.0, abs(v.real)):
        return float(v.real)
    return v


def _real(value, key: str) -> float:
    if isinstance(value, complex):
        raise ScenarioError(f"{key} must be real, got {value}")
    return float(value)


def parse_values(text: str, param: str) -> list:
    """Sweep values: a comma list of expressions, or ``linspace(start, stop, n)``."""
    key = canonical_key(param)
    raw = str(text).strip()
    if key in _STRING_FIELDS:
        return [v.strip().strip("\"'") for v in raw.split(",") if v.strip()]
    if raw.startswith("linspace"):
        tree = ast.parse(raw, mode="eval").body
        if not (isinstance(tree, ast.Call) and len(tree.args) == 3):
            raise ScenarioError("linspace takes (start, stop, count)")
        lo, hi, n = (_eval_node(a) for a in tree.args)
        return [float(x) for x in np.linspace(_real(lo, key), _real(hi, key), int(_real(n, key)))]
    try:
        tree = ast.parse(raw, mode="eval").body
    except SyntaxError as exc:
        raise ScenarioError(f"cannot parse sweep values {text!r}") from exc
    items = tree.elts if isinstance(tree, (ast.Tuple, ast.List)) else [tree]
    out = []
    for node in items:
        v = _eval_node(node)
        if isinstance(v, complex) and abs(v.imag) <= 1e-15 * max(1.0, abs(v.real)):
            v = float(v.real)
        out.append(v)
    if not out:
        raise ScenarioError("sweep needs at least one value")
    return out


def canonical_key(key: str) -> str:
    key = key.strip()
    key = ALIASES.get(key, key)
    if key not in FIELDS:
        raise ScenarioError(f"unknown parameter {key!r}")
    return key


# ---- scenario type --------------------------------------------------------


@dataclass(frozen=True)
class Sweep:
    param: str
    values: tuple


@dataclass(frozen=True)
class Scenario:
    noise: NoiseModel = field(default_factory=NoiseModel)
    coherent: CoherentModel = field(default_factory=CoherentModel)
    init: str = "duu"
    solver: str = "numeric"
    alpha: float = 0.0
    t_max: float = 20.0
    dt: float | None = None
    sample_count: int = 400
    calibrate_drive: bool = False
    sweep: Sweep | None = None
    name: str = "run"

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise ScenarioError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ScenarioError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.t_max <= 0:
            raise ScenarioError("t_max must be positive")
        if self.sample_count < 2:
            raise ScenarioError("sample_count must be at least 2")
        try:
            basis.state(self.init)
        except ValueError as exc:
            raise ScenarioError(f"invalid init {self.init!r}: {exc}") from exc
        if self.calibrate_drive and self.coherent.drive is None:
            raise ScenarioError("drive_duration = auto needs a drive amplitude")
        if self.solver != "numeric" and self.sweep is None:
            self._check_analytic()

    def _check_analytic(self):
        reasons = []
        if not math.isinf(self.noise.beta_delta):
            reasons.append("finite temperature")
        if self.alpha:
            reasons.append("alpha > 0")
        if not self.noise.homogeneous:
            reasons.append("deltaA12 != 0")
        if self.coherent.deltaJ12:
            reasons.append("deltaJ12 != 0")
        if self.coherent.drive is not None:
            reasons.append("drive")
        if not reasons:
            try:
                analytic.classify(basis.pauli_to_eigen(basis.density(self.init)).data)
            except analytic.AnalyticUnsupported as exc:
                reasons.append(str(exc))
        if reasons:
            raise ScenarioError(f"solver={self.solver} not available: " + ", ".join(reasons))

    def flat(self) -> dict:
        """Flat parameter dictionary (complex values as [re, im])."""
        d = self.coherent.drive
        out = {
            "a": self.noise.a,
            "A_abs": self.noise.A_abs,
            "phi": self.noise.phi,
            "deltaA12": [self.noise.deltaA12.real, self.noise.deltaA12.imag],
            "beta_delta": self.noise.beta_delta,
            "Delta": self.coherent.Delta,
            "J": self.coherent.J,
            "psi": self.coherent.psi,
            "deltaJ12": self.coherent.deltaJ12,
            "drive_amplitude": d.amplitude if d else 0.0,
            "drive_omega": d.omega if d else None,
            "drive_duration": "auto" if self.calibrate_drive else (d.duration if d else None),
            "init": self.init,
            "solver": self.solver,
            "alpha": self.alpha,
            "t_max": self.t_max,
            "dt": self.dt,
            "sample_count": self.sample_count,
            "name": self.name,
        }
        if self.sweep is not None:
            out["sweep"] = {"param": self.sweep.param, "values": [_jsonable(v) for v in self.sweep.values]}
        return {k: _jsonable(v) for k, v in out.items()}


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def build_scenario(params: dict, sweep: Sweep | None = None) -> Scenario:
    """Build a Scenario from flat parameters; missing keys take the defaults."""
    p = {canonical_key(k): v for k, v in params.items()}
    noise_kw = {f: p[k] for k, (sec, f) in FIELDS.items() if sec == "noise" and k in p}
    if "deltaA12" in noise_kw:
        noise_kw["deltaA12"] = complex(noise_kw["deltaA12"])
    for k in ("a", "A_abs", "phi", "beta_delta"):
        if k in noise_kw:
            noise_kw[k] = _real(noise_kw[k], k)
    coh_kw = {k: _real(p[k], k) for k in ("Delta", "J", "psi", "deltaJ12") if k in p}
    try:
        noise = NoiseModel(**noise_kw)
        drive, calibrate = None, False
        amp = _real(p.get("drive_amplitude", 0.0), "drive_amplitude")
        if amp > 0:
            base = CoherentModel(**coh_kw)
            omega = p.get("drive_omega", "auto")
            omega = achiral_resonance(base) if omega == "auto" else _real(omega, "drive_omega")
            duration = p.get("drive_duration", "auto")
            calibrate = duration == "auto"
            duration = math.inf if calibrate else _real(duration, "drive_duration")
            drive = Drive(amp, omega, duration)
        coherent = CoherentModel(**coh_kw, drive=drive)
    except ModelError as exc:
        if isinstance(exc, CPViolationError):
            raise
        raise ScenarioError(str(exc)) from exc
    ok, lowest = validate_cp(noise)
    if not ok:
        raise CPViolationError(
            f"complete positivity violated: rate matrix eigenvalue {lowest:.6g} < 0"
        )
    run_kw = {}
    for k in ("init", "solver", "name"):
        if k in p:
            run_kw[k] = str(p[k])
    for k in ("alpha", "t_max"):
        if k in p:
            run_kw[k] = _real(p[k], k)
    if p.get("dt") is not None:
        run_kw["dt"] = _real(p["dt"], "dt")
    if "sample_count" in p:
        run_kw["sample_count"] = int(_real(p["sample_count"], "sample_count"))
    return Scenario(noise=noise, coherent=coherent, calibrate_drive=calibrate, sweep=sweep, **run_kw)


def _read_config(text: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.MissingSectionHeaderError:
        # bare key = value lines are read as the [run] section
        cp.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ScenarioError(f"malformed scenario file: {exc}") from exc
    return cp


def parse_scenario_text(text: str) -> Scenario:
    cp = _read_config(text)
    params, sweep_sec = {}, None
    for section in cp.sections():
        if section == "sweep":
            sweep_sec = dict(cp[section])
            continue
        if section not in ("noise", "coherent", "run"):
            raise ScenarioError(f"unknown section [{section}]")
        for raw_key, raw in cp[section].items():
            key = canonical_key(raw_key)
            if FIELDS[key][0] != section:
                raise ScenarioError(f"key {raw_key!r} belongs in [{FIELDS[key][0]}], not [{section}]")
            value = raw.strip().strip("\"'")
            if key in _STRING_FIELDS or (key in _AUTO_FIELDS and value == "auto"):
                params[key] = value
            elif key == "dt" and value in ("", "auto", "none"):
                params[key] = None
            else:
                params[key] = parse_number(value)
    sweep = None
    if sweep_sec is not None:
        extra = set(sweep_sec) - {"param", "values"}
        if extra or "param" not in sweep_sec or "values" not in sweep_sec:
            raise ScenarioError("[sweep] needs exactly 'param' and 'values'")
        param = canonical_key(sweep_sec["param"])
        sweep = Sweep(param, tuple(parse_values(sweep_sec["values"], param)))
    scenario = build_scenario(params, sweep)
    if sweep is not None:
        expand(scenario)  # validates every child
    return scenario


def parse_scenario(path) -> Scenario:
    """Read and validate a scenario file."""
    p = Path(path)
    if not p.is_file():
        raise ScenarioError(f"scenario file not found: {p}")
    return parse_scenario_text(p.read_text())


def format_value(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, complex):
        return f"{abs(v):.6g}e{cmath.phase(v):+.6g}j"
    return f"{v:.6g}"


def with_param(s: Scenario, key: str, value) -> Scenario:
    """Copy of ``s`` with one flat parameter replaced (sweep dropped)."""
    key = canonical_key(key)
    params = _params_of(s)
    params[key] = value
    return build_scenario(params)


def _params_of(s: Scenario) -> dict:
    d = s.coherent.drive
    params = {
        "a": s.noise.a, "A_abs": s.noise.A_abs, "phi": s.noise.phi,
        "deltaA12": s.noise.deltaA12, "beta_delta": s.noise.beta_delta,
        "Delta": s.coherent.Delta, "J": s.coherent.J, "psi": s.coherent.psi,
        "deltaJ12": s.coherent.deltaJ12,
        "init": s.init, "solver": s.solver, "alpha": s.alpha, "t_max": s.t_max,
        "dt": s.dt, "sample_count": s.sample_count, "name": s.name,
    }
    if d is not None:
        params.update(
            drive_amplitude=d.amplitude,
            drive_omega=d.omega,
            drive_duration="auto" if s.calibrate_drive else d.duration,
        )
    return params


def expand(s: Scenario) -> list[Scenario]:
    """Child scenarios of a sweep, in the order of the value list."""
    if s.sweep is None:
        return [s]
    children = []
    for i, v in enumerate(s.sweep.values):
        params = _params_of(s)
        params[s.sweep.param] = v
        params["name"] = f"{s.name}_{i:03d}"
        children.append(build_scenario(params))
    return children


# ---- presets --------------------------------------------------------------

GRID_POINTS = 50


def _preset_params(**kw) -> dict:
    base = {"a": 1.0, "A_abs": 0.5, "phi": math.pi, "Delta": 100.0, "J": 0.0, "t_max": 20.0, "sample_count": 400}
    base.update(kw)
    return base


def figure_preset(name: str) -> Scenario:
    """Scenario (usually a sweep) reproducing one of the reference plots."""
    A = 0.5 * cmath.exp(1j * math.pi)
    presets = {
        "fig2a": (_preset_params(init="duu", solver="both"), Sweep("phi", (math.pi, 2.0, math.pi / 3))),
        "fig2b": (
            _preset_params(init="duu", solver="analytic"),
            Sweep("A_abs", tuple(float(x) for x in np.linspace(0, 0.5, GRID_POINTS))),
        ),
        "fig2c": (
            _preset_params(init="duu", solver="analytic"),
            Sweep("J", tuple(float(x) for x in np.linspace(0, 10, GRID_POINTS))),
        ),
        "fig2d": (_preset_params(init="udd", solver="both"), Sweep("init", ("udd", "ddd"))),
        "fig3b": (_preset_params(init="duu", solver="numeric"), Sweep("alpha", (0.0, 0.25, 0.5, 0.75, 1.0))),
        "fig3d": (
            _preset_params(
                init="uuu", solver="numeric", J=10.0, drive_amplitude=1.0, drive_omega="auto", drive_duration="auto"
            ),
            Sweep("A_abs", (0.5, 0.4, 0.25)),
        ),
        "s1a": (
            _preset_params(init="duu", solver="numeric"),
            Sweep("deltaA12", tuple(r * A for r in (0.0, 0.05, 0.1, 0.15, 0.2))),
        ),
        "s1b": (
            _preset_params(init="duu", solver="numeric"),
            Sweep("deltaA12", tuple(A - 0.5 * cmath.exp(1j * (math.pi + d)) for d in (0.0, 0.05, 0.1, 0.2))),
        ),
        "s2": (
            _preset_params(init="W0", solver="numeric", J=1.0),
            Sweep("deltaJ12", (0.0, 0.05, 0.1, 0.2)),
        ),
        "s3": (
            _preset_params(init="W0", solver="numeric"),
            Sweep("beta_delta", (math.inf, 10.0, 5.0, 3.0, 1.0)),
        ),
    }
    if name not in presets:
        raise ScenarioError(f"unknown preset {name!r}; choose from {sorted(presets)}")
    params, sweep = presets[name]
    params["name"] = name
    return build_scenario(params, sweep)


def preset_children(name: str) -> list[Scenario]:
    """Expanded preset; ``s2`` is the product of its deltaJ12 list with psi in {0, pi/3}."""
    s = figure_preset(name)
    kids = expand(s)
    if name == "s2":
        out = []
        for psi_tag, psi in (("psi0", 0.0), ("psi60", math.pi / 3)):
            for k in kids:
                out.append(replace(with_param(k, "psi", psi), name=f"{k.name}_{psi_tag}"))
        return out
    return kids


# ---- running --------------------------------------------------------------


@dataclass
class RunRecord:
    scenario: dict
    solver: str
    started: str
    finished: str
    gates: dict
    outputs: dict
    calibration: dict | None = None

    @property
    def passed(self) -> bool:
        g = self.gates
        ok = g["trace"] and g["positivity"] and g.get("hermiticity", True)
        if g.get("oracle_dev") is not None:
            ok = ok and g["oracle_dev"] < ORACLE_GATE
        return ok

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


@dataclass
class RunResult:
    record: RunRecord
    series: TimeSeries
    analytic_series: TimeSeries | None = None


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def sample_grid(s: Scenario) -> np.ndarray:
    return np.linspace(0.0, s.t_max, s.sample_count)


def _analytic_series(s: Scenario, times: np.ndarray) -> TimeSeries:
    rates = analytic.sector_rates(s.noise, s.coherent)
    rho0 = basis.pauli_to_eigen(basis.density(s.init)).data
    states = [basis.eigen_to_pauli(analytic.evolve(rho0, rates, t)).data for t in times]
    return TimeSeries.from_states(times, states)


def resolve_drive(s: Scenario) -> tuple[Scenario, dict | None]:
    """Fix an automatic pulse duration by calibration."""
    if not s.calibrate_drive:
        return s, None
    cal = calibrate_pulse(s.noise, s.coherent, dt=s.dt)
    drive = replace(s.coherent.drive, duration=cal.tau)
    fixed = replace(s, coherent=replace(s.coherent, drive=drive), calibrate_drive=False)
    info = {
        "tau": cal.tau,
        "fidelity": cal.fidelity,
        "tau_rwa": cal.tau_rwa,
        "tau_over_rwa": cal.in_pi_pulses,
    }
    return fixed, info


def evaluate(s: Scenario) -> RunResult:
    """Run one scenario in memory (no files written)."""
    if s.sweep is not None:
        raise ScenarioError("evaluate() takes a single scenario; use run_batch for sweeps")
    started = _now()
    s_run, calibration = resolve_drive(s)
    times = sample_grid(s)
    diag = {}
    ana = None
    if s.solver == "analytic":
        series = _analytic_series(s_run, times)
    else:
        spec = EvolutionSpec.from_models(
            s_run.noise, s_run.coherent, alpha=s.alpha, t_max=s.t_max, dt=s.dt, sample_count=s.sample_count
        )
        series = propagate(basis.density(s.init), spec, times, diagnostics=diag)
        if s.solver == "both":
            ana = _analytic_series(s_run, times)
    if s.alpha == 0:
        trace_ok = bool(np.max(np.abs(series.trace - 1)) <= TRACE_GATE)
    else:
        trace_ok = bool(np.all(series.trace <= 1 + TRACE_GATE) and np.all(np.diff(series.trace) <= TRACE_GATE))
    gates = {
        "trace": trace_ok,
        "positivity": bool(np.min(series.min_eigenvalue) >= POSITIVITY_GATE),
        "hermiticity": bool(diag.get("hermitian_drift", 0.0) <= HERMITIAN_GATE),
        "min_eigenvalue": float(np.min(series.min_eigenvalue)),
        "oracle_dev": None if ana is None else float(np.max(np.abs(series.rho - ana.rho))),
    }
    if "dt" in diag:
        gates["dt"] = diag["dt"]
    record = RunRecord(
        scenario=s.flat(),
        solver=s.solver,
        started=started,
        finished=_now(),
        gates=gates,
        outputs={},
        calibration=calibration,
    )
    return RunResult(record, series, ana)


def series_csv(series: TimeSeries) -> str:
    """CSV text with 12 significant digits; byte-identical for identical input."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for i, t in enumerate(series.times):
        row = [t, series.trace[i], series.n123[i], *series.bipartite[i], series.w_fidelity[i]]
        row += [series.populations[i, j] for j in _POP_COLUMNS]
        w.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def _fmt(x: float) -> str:
    x = float(x)
    if x == 0:
        return "0"  # also folds -0
    return format(x, ".12g")


def write_result(result: RunResult, out_dir) -> RunRecord:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    name = result.record.scenario["name"]
    csv_path = out / f"{name}.csv"
    csv_path.write_text(series_csv(result.series))
    outputs = {"csv": str(csv_path)}
    if result.analytic_series is not None:
        ana_path = out / f"{name}_analytic.csv"
        ana_path.write_text(series_csv(result.analytic_series))
        outputs["analytic_csv"] = str(ana_path)
    json_path = out / f"{name}.json"
    outputs["record"] = str(json_path)
    result.record.outputs = outputs
    json_path.write_text(result.record.to_json() + "\n")
    return result.record


def run_scenario(s: Scenario, out_dir) -> RunResult:
    """Evaluate a single scenario and write its CSV and JSON record."""
    result = evaluate(s)
    write_result(result, out_dir)
    return result


def _run_child(args) -> RunResult:
    s, out_dir = args
    return run_scenario(s, out_dir)


def run_batch(scenarios: list[Scenario], out_dir, workers: int = 1) -> list[RunResult]:
    """Run scenarios (possibly in parallel); results follow the input order."""
    jobs = [(s, out_dir) for s in scenarios]
    if workers <= 1 or len(jobs) <= 1:
        return [_run_child(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_child, jobs))


def write_index(name: str, param: str | None, values, results: list[RunResult], out_dir) -> Path:
    """Sweep summary listing child records in parameter order."""
    path = Path(out_dir) / f"{name}_index.json"
    entries = []
    if values is None:
        values = [r.record.scenario["name"] for r in results]
    for v, r in zip(values, results):
        entries.append({"value": _jsonable(v) if not isinstance(v, str) else v, "label": format_value(v),
                        "record": r.record.outputs.get("record"), "passed": r.record.passed})
    path.write_text(json.dumps({"name": name, "param": param, "runs": entries}, indent=2) + "\n")
    return path
