"""Configuration-driven command line front end.

Usage::

    chargequbits <mode> --config run.ini [--out DIR] [--set section.key=value ...]
    chargequbits plot DIR

Modes: ``evolve``, ``dephase``, ``spectrum``, ``effective``, ``sweep``.
Configs are INI documents; numeric fields accept arithmetic expressions in
``J`` (the Coulomb coupling of the same document) and ``pi``, optionally
followed by a unit (``ueV``, ``ns``, ``GHz``).
"""
from __future__ import annotations

import argparse
import ast
import configparser
import csv
import json
import logging
import math
import operator
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .dynamics import (
    DephasingConfig,
    TimeGrid,
    evolve_lindblad,
    evolve_unitary,
    first_peak,
    populations_trace,
)
from .effective import (
    FLIP_LABELS,
    GHZ_LABELS,
    effective_model,
    effective_vs_exact_report,
    evolve_effective,
    formation_time,
    omega_closed_form,
    omega_numeric,
)
from .errors import ConfigError, MissingArtifact, NumericalError, ParseError, ValidationError
from .model import BASIS_LABELS, QubitParams, SixDotParams, build_h3, map_params, named_state
from .spectrum import default_deltas, formation_time_sweep, sweep_spectrum

log = logging.getLogger(__name__)

MODES = ("evolve", "dephase", "spectrum", "effective", "sweep")
GRID_MODES = ("evolve", "dephase")
UNITS = {"energy": ("ueV", "μeV", "µeV"), "time": ("ns",), "rate": ("GHz",), None: ()}
DEFAULT_TARGETS = (("GHZ-", "ghz:-pi/2"), ("GHZ+", "ghz:pi/2"))


# ------------------------------------------------------------ expressions

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def evaluate(text: str, names: dict | None = None, kind: str | None = None, field_name: str | None = None) -> float:
    """Evaluate an arithmetic expression such as ``"J/6"`` or ``"25 ueV"``."""
    names = {"pi": math.pi, **(names or {})}
    src = str(text).strip()
    parts = src.rsplit(None, 1)
    if len(parts) == 2 and parts[1].isalpha() and parts[1] not in names:
        src, unit = parts
        if unit not in UNITS.get(kind, ()):
            raise ValidationError(f"{field_name}: unit {unit!r} not valid here (expected {UNITS.get(kind) or 'none'})")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ParseError(f"unknown name {node.id!r}", field=field_name)
            return float(names[node.id])
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](ev(node.operand))
        raise ParseError(f"unsupported expression {src!r}", field=field_name)

    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError:
        raise ParseError(f"cannot parse {src!r}", field=field_name) from None
    try:
        value = ev(tree)
    except ZeroDivisionError:
        raise ValidationError(f"{field_name}: division by zero") from None
    if not math.isfinite(value):
        raise ValidationError(f"{field_name}: value is not finite")
    return value


def evaluate_list(text: str, names=None, kind=None, field_name=None) -> list[float]:
    return [evaluate(x, names, kind, field_name) for x in str(text).split(",") if x.strip()]


def parse_state(spec: str, field_name: str = "state") -> np.ndarray:
    """``"000"``, ``"ghz"``, ``"ghz:-pi/2"``, ``"flip:pi"``."""
    name, _, phase = str(spec).strip().partition(":")
    phi = evaluate(phase, field_name=field_name) if phase else 0.0
    try:
        return named_state(name.strip(), phi)
    except KeyError:
        raise ValidationError(f"{field_name}: unknown state {spec!r}") from None


# ----------------------------------------------------------------- config

@dataclass
class ExperimentConfig:
    mode: str
    params: QubitParams
    j: float
    initial_state: str = "000"
    grid: TimeGrid | None = None
    dephasing: DephasingConfig | None = None
    targets: dict = field(default_factory=dict)
    output: Path = Path("out")
    sixdot: SixDotParams | None = None
    energy_offset: float = 0.0
    spectrum_deltas: np.ndarray | None = None
    sweep_deltas: list | None = None
    workers: int = 1
    compare_conventions: bool = False

    @property
    def initial_ket(self) -> np.ndarray:
        return parse_state(self.initial_state, "state.initial")

    def target_kets(self) -> dict:
        return {name: parse_state(spec, f"targets.{name}") for name, spec in self.targets.items()}


def _section(cp, name):
    return cp[name] if cp.has_section(name) else {}


def _triple(sec, key, names, kind):
    if key in sec:
        vals = evaluate_list(sec[key], names, kind, key)
        if len(vals) == 1:
            return tuple(vals * 3)
        if len(vals) == 3:
            return tuple(vals)
        raise ValidationError(f"model.{key}: give one value or three")
    keys = [f"{key}{q}" for q in (1, 2, 3)]
    if any(k in sec for k in keys):
        return tuple(evaluate(sec.get(k, "0"), names, kind, k) for k in keys)
    return (0.0, 0.0, 0.0)


def _line_of(text: str, section: str, key: str | None = None) -> int | None:
    current = None
    for n, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            current = s[1:-1].strip()
            if key is None and current == section:
                return n
        elif current == section and key is not None and s.split("=", 1)[0].strip() == key:
            return n
    return None


def parse_config(text: str, mode: str | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Parse and validate an INI experiment description.

    ``overrides`` maps ``"section.key"`` to string values and wins over the
    document; ``mode`` (normally the CLI subcommand) wins over ``run.mode``.
    """
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise ParseError("missing section header", line=exc.lineno) from None
    except configparser.ParsingError as exc:
        line = exc.errors[0][0] if exc.errors else None
        raise ParseError("malformed config", line=line) from None
    except configparser.DuplicateOptionError as exc:
        raise ParseError(f"duplicate key in [{exc.section}]", line=exc.lineno, field=exc.option) from None
    except configparser.DuplicateSectionError as exc:
        raise ParseError(f"duplicate section [{exc.section}]", line=exc.lineno) from None
    for key, value in (overrides or {}).items():
        sec, _, opt = key.partition(".")
        if not opt:
            raise ParseError(f"override {key!r} must look like section.key")
        if not cp.has_section(sec):
            cp.add_section(sec)
        cp[sec][opt] = str(value)

    mode = mode or _section(cp, "run").get("mode")
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}, got {mode!r}")

    try:
        return _build_config(cp, mode)
    except ParseError as exc:
        if exc.line is None and exc.field:
            for sec in cp.sections():
                if exc.field in cp[sec]:
                    exc.line = _line_of(text, sec, exc.field)
        raise


def _build_config(cp, mode) -> ExperimentConfig:
    model = _section(cp, "model")
    sixdot_sec = _section(cp, "sixdot")
    sixdot = None
    offset = 0.0
    if sixdot_sec:
        _check_sixdot_lengths(sixdot_sec)
        sixdot = SixDotParams(
            evaluate_list(sixdot_sec.get("site_energies", "0,0,0,0,0,0"), None, "energy", "site_energies"),
            evaluate_list(sixdot_sec.get("tunnelings", "0,0,0"), None, "energy", "tunnelings"),
            evaluate_list(sixdot_sec.get("coulomb", "0,0,0,0,0,0,0,0"), None, "energy", "coulomb"),
        )
        params, offset = map_params(sixdot)
        j = params.j12 if params.j12 == params.j23 else max(params.j12, params.j23)
    else:
        if "j" not in model and "j12" not in model:
            raise ValidationError("model.j (or model.j12/j23) required")
        j = evaluate(model.get("j", model.get("j12")), None, "energy", "j")
        names = {"J": j}
        params = QubitParams(
            epsilon=_triple(model, "epsilon", names, "energy"),
            delta=_triple(model, "delta", names, "energy"),
            j12=evaluate(model.get("j12", "J"), names, "energy", "j12"),
            j23=evaluate(model.get("j23", "J"), names, "energy", "j23"),
        )
    names = {"J": j}

    state = _section(cp, "state")
    initial = state.get("initial", "000").strip()
    parse_state(initial, "state.initial")

    grid = None
    gsec = _section(cp, "grid")
    if gsec:
        if "t_end" not in gsec:
            raise ValidationError("grid.t_end required")
        try:
            grid = TimeGrid(
                t_end=evaluate(gsec["t_end"], names, "time", "t_end"),
                t_start=evaluate(gsec.get("t_start", "0"), names, "time", "t_start"),
                dt=evaluate(gsec.get("dt", "0.001"), names, "time", "dt"),
                sample_every=int(evaluate(gsec.get("sample_every", "50"), names, None, "sample_every")),
            )
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ValidationError(f"grid: {exc}") from None
    if mode in GRID_MODES and grid is None:
        raise ValidationError(f"grid required for {mode}")

    deph = None
    dsec = _section(cp, "dephasing")
    if mode == "dephase" and not dsec:
        raise ValidationError("dephasing section required for dephase")
    if dsec:
        gam = evaluate_list(dsec.get("gamma", "0"), names, "rate", "gamma")
        if len(gam) == 1:
            gam = gam * 8
        try:
            deph = DephasingConfig(tuple(gam), dsec.get("convention", "h").strip())
        except ValueError as exc:
            raise ValidationError(f"dephasing: {exc}") from None

    tsec = _section(cp, "targets")
    targets = {k: v.strip() for k, v in tsec.items()} if tsec else dict(DEFAULT_TARGETS)
    for name, spec in targets.items():
        parse_state(spec, f"targets.{name}")

    spec_deltas = None
    if mode == "spectrum":
        ssec = _section(cp, "spectrum")
        n = int(evaluate(ssec.get("n_points", "200"), names, None, "n_points"))
        stop = evaluate(ssec.get("delta_max", "J"), names, "energy", "delta_max")
        if n < 1 or stop <= 0:
            raise ValidationError("spectrum needs n_points >= 1 and delta_max > 0")
        spec_deltas = default_deltas(j, n, stop / j)

    sweep_deltas = None
    workers = 1
    if mode == "sweep":
        ssec = _section(cp, "sweep")
        if "deltas" not in ssec:
            raise ValidationError("sweep.deltas required for sweep")
        sweep_deltas = evaluate_list(ssec["deltas"], names, "energy", "deltas")
        if any(d <= 0 for d in sweep_deltas) or list(sweep_deltas) != sorted(set(sweep_deltas)):
            raise ValidationError("sweep.deltas must be positive and strictly ascending")
        workers = int(evaluate(ssec.get("workers", "1"), names, None, "workers"))

    if mode in ("effective", "sweep", "spectrum") and j <= 0:
        raise ValidationError("J must be positive")

    out = Path(_section(cp, "output").get("dir", "out").strip())
    compare = str(dsec.get("compare_conventions", "false")).strip().lower() in ("1", "true", "yes") if dsec else False
    return ExperimentConfig(
        mode=mode,
        params=params,
        j=j,
        initial_state=initial,
        grid=grid,
        dephasing=deph,
        targets=targets,
        output=out,
        sixdot=sixdot,
        energy_offset=offset,
        spectrum_deltas=spec_deltas,
        sweep_deltas=sweep_deltas,
        workers=max(1, workers),
        compare_conventions=compare,
    )


def _check_sixdot_lengths(sec) -> None:
    for key, n in (("site_energies", 6), ("tunnelings", 3), ("coulomb", 8)):
        if key in sec and len([x for x in sec[key].split(",") if x.strip()]) != n:
            raise ValidationError(f"sixdot.{key} needs {n} values")


# ---------------------------------------------------------------- writers

def fmt(x) -> str:
    return f"{float(x):.12g}"


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(x) for x in row])


def write_json(path: Path, data) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh, indent=2, sort_keys=True, default=_jsonable)
        fh.write("\n")


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x).__name__)


def write_timeseries(path: Path, ts) -> None:
    names = list(ts.fidelities)
    header = ["t_ns"] + [f"P_{x}" for x in BASIS_LABELS] + [f"F_{n}" for n in names]
    header += ["tau3", "tau2", "purity", "trace_error"]
    rows = []
    for i, t in enumerate(ts.times):
        rows.append(
            [t, *ts.populations[i], *(ts.fidelities[n][i] for n in names),
             ts.tau3[i], ts.tau2[i], ts.purity[i], ts.trace_error[i]]
        )
    write_csv(path, header, rows)


# ------------------------------------------------------------------ runners

def _is_symmetric(p: QubitParams) -> bool:
    return (
        all(e == 0 for e in p.epsilon)
        and p.delta[0] == p.delta[1] == p.delta[2] > 0
        and p.j12 == p.j23 > 0
    )


def _subspace_for(label: str):
    if label in FLIP_LABELS:
        return FLIP_LABELS
    return GHZ_LABELS


def _params_summary(cfg: ExperimentConfig) -> dict:
    p = cfg.params
    out = {"epsilon_ueV": list(p.epsilon), "delta_ueV": list(p.delta), "j12_ueV": p.j12, "j23_ueV": p.j23}
    if cfg.sixdot is not None:
        out["energy_offset_ueV"] = cfg.energy_offset
    return out


def _model_summary(cfg: ExperimentConfig) -> dict:
    p = cfg.params
    if not _is_symmetric(p):
        return {}
    delta, j = p.delta[0], p.j12
    a = _subspace_for(cfg.initial_state if cfg.initial_state in BASIS_LABELS else "000")
    return {
        "omega_closed_form_ueV": omega_closed_form(delta, j),
        "omega_numeric_ueV": omega_numeric(p, a),
        "omega_resolvent_ueV": omega_numeric(p, a, mode="resolvent"),
        "t_formula_ns": formation_time(delta, j),
    }


def _peak_summary(ts) -> dict:
    out = {}
    for name, f in ts.fidelities.items():
        entry = {"max": float(np.max(f)), "t_max_ns": float(ts.times[int(np.argmax(f))])}
        try:
            i, t, v = first_peak(ts.times, f)
            entry.update(first_peak=v, t_first_peak_ns=t, P_at_first_peak={x: float(ts.populations[i, k]) for k, x in enumerate(BASIS_LABELS)})
            entry["tau3_at_first_peak"] = float(ts.tau3[i])
            entry["tau2_at_first_peak"] = float(ts.tau2[i])
        except ValueError:
            entry["first_peak"] = None
        out[name] = entry
    return out


def _run_dynamics(cfg: ExperimentConfig, outdir: Path) -> dict:
    h = build_h3(cfg.params)
    targets = cfg.target_kets()
    if cfg.mode == "dephase":
        ts = evolve_lindblad(h, cfg.initial_ket, cfg.grid, cfg.dephasing, targets)
    else:
        ts = evolve_unitary(h, cfg.initial_ket, cfg.grid, targets)
    write_timeseries(outdir / "timeseries.csv", ts)
    summary = {
        "mode": cfg.mode,
        "initial_state": cfg.initial_state,
        "params": _params_summary(cfg),
        "grid": {"t_start_ns": cfg.grid.t_start, "t_end_ns": cfg.grid.t_end, "dt_ns": cfg.grid.dt, "sample_every": cfg.grid.sample_every},
        "fidelity": _peak_summary(ts),
        **_model_summary(cfg),
    }
    first = next(iter(summary["fidelity"].values()), None)
    if first and first.get("first_peak") is not None:
        summary["t_exact_ns"] = first["t_first_peak_ns"]
    if cfg.dephasing is not None:
        summary["notes"] = "tau3 on mixed states is the residual-tangle formula value, not an entanglement measure"
        summary["dephasing"] = {"gamma_GHz": list(cfg.dephasing.gamma), "convention": cfg.dephasing.convention}
        summary["final_distance_to_maximally_mixed"] = float(np.linalg.norm(ts.final_state - np.eye(8) / 8))
        if cfg.compare_conventions:
            summary["convention_comparison"] = convention_table(cfg, targets)
    return summary


def convention_table(cfg: ExperimentConfig, targets=None) -> dict:
    """Peak fidelity and populations for each rate convention at this config."""
    targets = targets or cfg.target_kets()
    h = build_h3(cfg.params)
    table = {}
    for conv in ("h", "hbar"):
        deph = replace(cfg.dephasing, convention=conv)
        ts = evolve_lindblad(h, cfg.initial_ket, cfg.grid, deph, targets, tangles=False, check_psd=False)
        table[conv] = _peak_summary(ts)
    return table


def _run_spectrum(cfg: ExperimentConfig, outdir: Path) -> dict:
    rows = sweep_spectrum(cfg.j, cfg.spectrum_deltas, workers=cfg.workers)
    names = ["ghz_pi", "ghz_0", "flip_pi", "flip_0"]
    header = ["delta_over_J"] + [f"e{k}_over_J" for k in range(8)] + [f"F_{n}" for n in names]
    write_csv(
        outdir / "spectrum.csv",
        header,
        ([r.delta_over_j, *r.eigenvalues_over_j, *(r.fidelities[n] for n in names)] for r in rows),
    )
    return {
        "mode": "spectrum",
        "j_ueV": cfg.j,
        "n_points": len(rows),
        "min_fidelity": {n: min(r.fidelities[n] for r in rows) for n in names},
        "assignment": rows[-1].assignment,
    }


def _run_effective(cfg: ExperimentConfig, outdir: Path) -> dict:
    p = cfg.params
    if not _is_symmetric(p):
        raise ValidationError("effective mode needs epsilon = 0, equal delta > 0 and J12 = J23 > 0")
    a = _subspace_for(cfg.initial_state)
    if cfg.initial_state not in a:
        raise ValidationError(f"effective mode needs an initial basis state in {GHZ_LABELS + FLIP_LABELS}")
    model = effective_model(p, a)
    grid = cfg.grid or TimeGrid(t_end=3 * model.formation_time, dt=3 * model.formation_time / 3000, sample_every=5)
    eff = evolve_effective(model, cfg.initial_state, grid)
    exact = populations_trace(build_h3(p), cfg.initial_ket, eff.times - grid.t_start)
    labels = list(a)
    idx = [BASIS_LABELS.index(x) for x in labels]
    write_csv(
        outdir / "effective.csv",
        ["t_ns"] + [f"P_{x}_exact" for x in labels] + [f"P_{x}_eff" for x in labels],
        ([t, *exact[i, idx], *(eff.populations[x][i] for x in labels)] for i, t in enumerate(eff.times)),
    )
    dev = effective_vs_exact_report(p, a)
    return {
        "mode": "effective",
        "a_labels": labels,
        "params": _params_summary(cfg),
        "e_a_ueV": model.e_a,
        "max_deviation_up_to_t_formula": dev.max_deviation,
        **_model_summary(cfg),
    }


def _sweep_one(cfg: ExperimentConfig, delta: float, sub: Path) -> dict:
    p = QubitParams(cfg.params.epsilon, (delta,) * 3, cfg.params.j12, cfg.params.j23)
    tf = formation_time(delta, cfg.j)
    grid = TimeGrid(t_end=3 * tf, dt=3 * tf / 6000, sample_every=30)
    child = replace(cfg, mode="evolve", params=p, grid=grid, output=sub)
    sub.mkdir(parents=True, exist_ok=True)
    summary = _run_dynamics(child, sub)
    write_json(sub / "summary.json", summary)
    return summary


def _run_sweep(cfg: ExperimentConfig, outdir: Path) -> dict:
    deltas = list(cfg.sweep_deltas)
    subs = [outdir / f"delta_{i:03d}" for i in range(len(deltas))]
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            list(pool.map(lambda a: _sweep_one(cfg, *a), zip(deltas, subs)))
    else:
        for d, s in zip(deltas, subs):
            _sweep_one(cfg, d, s)
    label = cfg.initial_state if cfg.initial_state in BASIS_LABELS else "000"
    rows = formation_time_sweep(cfg.j, deltas, initial=label)
    write_csv(
        outdir / "formation_times.csv",
        ["delta_over_J", "delta_ueV", "t_formula_ns", "t_exact_ns", "fidelity_at_t_exact"],
        ([r.delta / cfg.j, r.delta, r.t_formula, r.t_exact, r.fidelity] for r in rows),
    )
    return {
        "mode": "sweep",
        "j_ueV": cfg.j,
        "runs": {s.name: d for s, d in zip(subs, deltas)},
        "formation_times": [
            {"delta_ueV": r.delta, "t_formula_ns": r.t_formula, "t_exact_ns": r.t_exact, "fidelity": r.fidelity}
            for r in rows
        ],
    }


_RUNNERS = {
    "evolve": _run_dynamics,
    "dephase": _run_dynamics,
    "spectrum": _run_spectrum,
    "effective": _run_effective,
    "sweep": _run_sweep,
}


def run(cfg: ExperimentConfig) -> int:
    """Execute a validated config and write its artifacts. Returns 0."""
    outdir = Path(cfg.output)
    outdir.mkdir(parents=True, exist_ok=True)
    summary = _RUNNERS[cfg.mode](cfg, outdir)
    write_json(outdir / "summary.json", summary)
    emit_plot_script(outdir)
    return 0


# ------------------------------------------------------------- plot script

def emit_plot_script(artifact_dir) -> Path:
    """Write ``plot.gp`` (gnuplot) rendering the panels present in ``artifact_dir``."""
    d = Path(artifact_dir)
    parts = ["# gnuplot script; run with: gnuplot plot.gp", "set datafile separator ','", "set key autotitle columnhead"]
    found = False
    ts = d / "timeseries.csv"
    if ts.exists():
        found = True
        header = ts.open(encoding="utf-8").readline().strip().split(",")
        col = {name: i + 1 for i, name in enumerate(header)}
        pops = [f"'timeseries.csv' using 1:{col[f'P_{x}']} with lines" for x in BASIS_LABELS]
        fids = [f"'timeseries.csv' using 1:{i} with lines" for n, i in col.items() if n.startswith("F_")]
        parts += [
            "set terminal pngcairo size 900,900",
            "set output 'timeseries.png'",
            "set multiplot layout 2,1",
            "set xlabel 't (ns)'",
            "set ylabel 'population'",
            "plot " + ", \\\n     ".join(pops),
            "set ylabel 'tau3, fidelity'",
            "plot " + ", \\\n     ".join([f"'timeseries.csv' using 1:{col['tau3']} with points"] + fids),
            "unset multiplot",
        ]
    sp = d / "spectrum.csv"
    if sp.exists():
        found = True
        parts += [
            "set terminal pngcairo size 900,900",
            "set output 'spectrum.png'",
            "set multiplot layout 2,1",
            "set xlabel 'Delta / J'",
            "set ylabel 'E / J'",
            "plot " + ", \\\n     ".join(f"'spectrum.csv' using 1:{k + 2} with lines" for k in range(8)),
            "set ylabel 'fidelity'",
            "plot " + ", \\\n     ".join(f"'spectrum.csv' using 1:{k} with lines" for k in (10, 11, 12, 13)),
            "unset multiplot",
        ]
    ef = d / "effective.csv"
    if ef.exists():
        found = True
        parts += [
            "set terminal pngcairo size 900,450",
            "set output 'effective.png'",
            "set xlabel 't (ns)'",
            "set ylabel 'population'",
            "plot " + ", \\\n     ".join(f"'effective.csv' using 1:{k} with lines" for k in (2, 3, 4, 5)),
        ]
    ft = d / "formation_times.csv"
    if ft.exists():
        found = True
        parts += [
            "set terminal pngcairo size 900,450",
            "set output 'formation_times.png'",
            "set xlabel 'Delta / J'",
            "set ylabel 't (ns)'",
            "set logscale y",
            "plot 'formation_times.csv' using 1:3 with linespoints, 'formation_times.csv' using 1:4 with points",
            "unset logscale y",
        ]
    if not found:
        raise MissingArtifact(f"no CSV artifacts in {d}")
    path = d / "plot.gp"
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    return path


# --------------------------------------------------------------------- main

def _parse_sets(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"--set expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chargequbits", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode)
        p.add_argument("--config", required=True, type=Path)
        p.add_argument("--out", type=Path, default=None, help="output directory (overrides output.dir)")
        p.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE")
    p = sub.add_parser("plot")
    p.add_argument("dir", type=Path)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.mode == "plot":
            emit_plot_script(args.dir)
            return 0
        overrides = _parse_sets(args.set)
        if args.out is not None:
            overrides["output.dir"] = str(args.out)
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read config: {exc}") from None
        cfg = parse_config(text, mode=args.mode, overrides=overrides)
        return run(cfg)
    except (ConfigError, MissingArtifact) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
