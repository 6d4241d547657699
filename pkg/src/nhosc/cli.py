"""Command-line front end for spectra, scans, verification, and wavefunctions.

Exit codes: 0 success, 2 configuration error, 3 numeric failure,
4 verification failure.  Output is JSON (default) or CSV; floats are written
in round-trip form (at most 17 significant digits) and payloads carry no
timestamps, so identical configurations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import canonical, linalg, spectra, wavefun

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4

SCAN_WORKERS_ENV = "NHOSC_SCAN_WORKERS"

_MODEL_KEYS = ("h11", "h12", "h22", "rm_alpha", "rm_beta", "gamma", "alpha", "k")


class ConfigError(ValueError):
    pass


def _parse_branch(text):
    mapping = {"+": 1, "-": -1, "+1": 1, "-1": -1, "plus": 1, "minus": -1}
    try:
        return mapping[text.strip().lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"branch must be + or -, got {text!r}")


_CONFIG_TYPES = {
    "h11": float,
    "h12": float,
    "h22": float,
    "rm-alpha": float,
    "rm-beta": float,
    "gamma": float,
    "alpha": float,
    "k": float,
    "gauge-g": float,
    "u11": complex,
    "u12": complex,
    "u21": complex,
    "u22": complex,
    "base-k": float,
    "omega": float,
    "trunc": int,
    "levels": int,
    "tol": float,
    "tol-eta": float,
    "threshold": float,
    "scan": str,
    "start": float,
    "stop": float,
    "step": float,
    "level": int,
    "branch": _parse_branch,
    "excitation": int,
    "parity": int,
    "grid-span": float,
    "grid-points": int,
    "format": str,
    "out": str,
}


def load_config_file(path):
    """Flat KEY = VALUE file mirroring the long flag names; '#' comments."""
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected KEY = VALUE")
            key = key.strip()
            val = val.strip()
            if key not in _CONFIG_TYPES:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key.replace("-", "_")] = _CONFIG_TYPES[key](val)
            except (TypeError, ValueError, argparse.ArgumentTypeError) as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}")
    return values


def _add_common(parser):
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument("--config", default=None, help="config file; flags override it")


def _add_model(parser):
    group = parser.add_argument_group("model (choose one family)")
    group.add_argument("--h11", type=float, default=None)
    group.add_argument("--h12", type=float, default=None)
    group.add_argument("--h22", type=float, default=None)
    group.add_argument("--rm-alpha", type=float, default=None, dest="rm_alpha")
    group.add_argument("--rm-beta", type=float, default=None, dest="rm_beta")
    group.add_argument("--gamma", type=float, default=None)
    group.add_argument("--alpha", type=float, default=None)
    group.add_argument("--k", type=float, default=None)


def _add_transform(parser):
    group = parser.add_argument_group("transform (choose one)")
    group.add_argument("--rm-alpha", type=float, default=None, dest="rm_alpha")
    group.add_argument("--rm-beta", type=float, default=None, dest="rm_beta")
    group.add_argument("--gauge-g", type=float, default=None, dest="gauge_g")
    group.add_argument("--u11", type=complex, default=None)
    group.add_argument("--u12", type=complex, default=None)
    group.add_argument("--u21", type=complex, default=None)
    group.add_argument("--u22", type=complex, default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nhosc",
        description="Non-Hermitian oscillators with real spectra: closed forms, "
        "truncated diagonalization, and structural verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="closed-form and numeric eigenvalues")
    _add_model(p_spec)
    p_spec.add_argument("--omega", type=float, default=None)
    p_spec.add_argument("-N", "--trunc", type=int, default=None)
    p_spec.add_argument("-n", "--levels", type=int, default=None)
    p_spec.add_argument("--tol", type=float, default=None)
    _add_common(p_spec)

    p_scan = sub.add_parser("scan", help="sweep one parameter, track the phase indicator")
    _add_model(p_scan)
    p_scan.add_argument("--scan", default=None, help="parameter to sweep")
    p_scan.add_argument("--start", type=float, default=None)
    p_scan.add_argument("--stop", type=float, default=None)
    p_scan.add_argument("--step", type=float, default=None)
    p_scan.add_argument("--threshold", type=float, default=None)
    p_scan.add_argument("-n", "--levels", type=int, default=None)
    _add_common(p_scan)

    p_ver = sub.add_parser("verify", help="isospectrality and pseudo-Hermiticity checks")
    _add_transform(p_ver)
    p_ver.add_argument("--base-k", type=float, default=None, dest="base_k",
                       help="base oscillator p^2/2 + k x^2/2 (default: k = 1)")
    p_ver.add_argument("--omega", type=float, default=None)
    p_ver.add_argument("-N", "--trunc", type=int, default=None)
    p_ver.add_argument("-n", "--levels", type=int, default=None)
    p_ver.add_argument("--tol", type=float, default=None)
    p_ver.add_argument("--tol-eta", type=float, default=None, dest="tol_eta")
    _add_common(p_ver)

    p_wav = sub.add_parser("wavefunction", help="sample eigenfunctions on a grid")
    _add_model(p_wav)
    p_wav.add_argument("--level", type=int, default=None, help="oscillator level n")
    p_wav.add_argument("--omega", type=float, default=None)
    p_wav.add_argument("--branch", type=_parse_branch, default=None)
    p_wav.add_argument("--excitation", type=int, default=None)
    p_wav.add_argument("--parity", type=int, default=None)
    p_wav.add_argument("--grid-span", type=float, default=None, dest="grid_span")
    p_wav.add_argument("--grid-points", type=int, default=None, dest="grid_points")
    _add_common(p_wav)

    return parser


def _merge_config(ns):
    if ns.config is None:
        return
    file_values = load_config_file(ns.config)
    for key, value in file_values.items():
        if hasattr(ns, key) and getattr(ns, key) is None:
            setattr(ns, key, value)


def _default(ns, name, value):
    if getattr(ns, name, None) is None:
        setattr(ns, name, value)


def _require_positive(value, name):
    if value is None or value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")


def _validate_run(ns):
    _require_positive(ns.tol, "tol")
    if ns.levels < 1:
        raise ConfigError("levels must be at least 1")
    if ns.trunc < 4 * ns.levels:
        raise ConfigError(f"trunc must be at least 4*levels, got {ns.trunc} < {4 * ns.levels}")


@dataclass
class Model:
    kind: str
    quadratic: canonical.QuadraticHamiltonian
    oscillator: spectra.ThreeParamOscillator | None
    transform: canonical.CanonicalTransform | None
    params: dict


def resolve_model(ns):
    has_h = any(getattr(ns, key) is not None for key in ("h11", "h12", "h22"))
    has_rm = any(getattr(ns, key) is not None for key in ("rm_alpha", "rm_beta"))
    has_gamma = ns.gamma is not None
    chosen = [flag for flag in (has_h, has_rm, has_gamma) if flag]
    if len(chosen) != 1:
        raise ConfigError(
            "specify exactly one model family: --h11/--h12/--h22, "
            "--rm-alpha/--rm-beta, or --gamma with --alpha or --k"
        )
    if has_h:
        if ns.h11 is None or ns.h12 is None or ns.h22 is None:
            raise ConfigError("the three-parameter model needs --h11, --h12 and --h22")
        osc = spectra.ThreeParamOscillator(ns.h11, ns.h12, ns.h22)
        return Model(
            kind="three_param",
            quadratic=osc.as_quadratic(),
            oscillator=osc,
            transform=None,
            params={"h11": ns.h11, "h12": ns.h12, "h22": ns.h22},
        )
    if has_rm:
        if ns.rm_alpha is None or ns.rm_beta is None:
            raise ConfigError("the mix model needs both --rm-alpha and --rm-beta")
        try:
            osc = spectra.rath_mallick_oscillator(ns.rm_alpha, ns.rm_beta)
            transform = canonical.rath_mallick(ns.rm_alpha, ns.rm_beta)
        except ValueError as exc:
            raise ConfigError(str(exc))
        return Model(
            kind="rath_mallick",
            quadratic=osc.as_quadratic(),
            oscillator=osc,
            transform=transform,
            params={"rm_alpha": ns.rm_alpha, "rm_beta": ns.rm_beta},
        )
    if ns.alpha is None and ns.k is None:
        raise ConfigError("--gamma needs --alpha or --k")
    quad = canonical.ahmed_hermitian(ns.gamma, alpha=ns.alpha, k=ns.k)
    params = {"gamma": ns.gamma}
    if ns.alpha is not None:
        params["alpha"] = ns.alpha
    if ns.k is not None:
        params["k"] = ns.k
    return Model(kind="gamma_family", quadratic=quad, oscillator=None, transform=None,
                 params=params)


def resolve_transform(ns):
    has_rm = ns.rm_alpha is not None or ns.rm_beta is not None
    has_gauge = ns.gauge_g is not None
    has_matrix = any(getattr(ns, key) is not None for key in ("u11", "u12", "u21", "u22"))
    chosen = [flag for flag in (has_rm, has_gauge, has_matrix) if flag]
    if len(chosen) != 1:
        raise ConfigError(
            "specify exactly one transform: --rm-alpha/--rm-beta, --gauge-g, "
            "or --u11/--u12/--u21/--u22"
        )
    try:
        if has_rm:
            if ns.rm_alpha is None or ns.rm_beta is None:
                raise ConfigError("the mix transform needs both --rm-alpha and --rm-beta")
            return canonical.rath_mallick(ns.rm_alpha, ns.rm_beta), {
                "rm_alpha": ns.rm_alpha,
                "rm_beta": ns.rm_beta,
            }
        if has_gauge:
            return canonical.gauge(ns.gauge_g), {"gauge_g": ns.gauge_g}
        if any(getattr(ns, key) is None for key in ("u11", "u12", "u21", "u22")):
            raise ConfigError("the explicit transform needs all four matrix entries")
        return canonical.from_matrix(ns.u11, ns.u12, ns.u21, ns.u22), {
            key: getattr(ns, key) for key in ("u11", "u12", "u21", "u22")
        }
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc))


def _cj(value):
    """Complex to a JSON-friendly {re, im} pair."""
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def _config_echo(ns, command, extra=None):
    echo = {"command": command}
    skip = {"command", "config", "out"}
    for key, value in sorted(vars(ns).items()):
        if key in skip or value is None:
            continue
        if isinstance(value, complex):
            value = _cj(value)
        echo[key] = value
    if extra:
        echo.update(extra)
    return echo


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _emit(ns, document, csv_header, csv_rows):
    if ns.format == "json":
        text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(csv_header)
        for row in csv_rows:
            writer.writerow([_csv_cell(cell) for cell in row])
        text = buffer.getvalue()
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_spectrum(ns):
    _default(ns, "omega", 1.0)
    _default(ns, "trunc", 100)
    _default(ns, "levels", 10)
    _default(ns, "tol", 1e-8)
    _default(ns, "format", "json")
    _validate_run(ns)
    if ns.omega == 0:
        raise ConfigError("omega must be nonzero")
    model = resolve_model(ns)
    scale = model.quadratic.frequency_scale
    broken = abs(scale.imag) > 1e-12 * max(1.0, abs(scale))
    closed_plus = [scale * (2 * n + 1) for n in range(ns.levels)]
    closed_minus = [-v for v in closed_plus] if model.oscillator is not None else None

    fock = spectra.quadratic_fock_matrix(model.quadratic, ns.omega, ns.trunc)
    eigs, parities = spectra.eigenvalues_by_parity(fock.matrix)

    levels = []
    max_dev = None
    for n in range(ns.levels):
        entry = {
            "n": n,
            "eigenvalue": _cj(eigs[n]),
            "parity": int(parities[n]),
            "closed_form": None,
            "deviation": None,
        }
        if not broken:
            entry["closed_form"] = _cj(closed_plus[n])
            entry["deviation"] = abs(eigs[n] - closed_plus[n])
            max_dev = entry["deviation"] if max_dev is None else max(max_dev, entry["deviation"])
        levels.append(entry)

    results = {
        "model": {
            "kind": model.kind,
            "c_pp": _cj(model.quadratic.c_pp),
            "c_xp": _cj(model.quadratic.c_xp),
            "c_xx": _cj(model.quadratic.c_xx),
            "frequency_scale": _cj(scale),
            "discriminant": model.oscillator.discriminant if model.oscillator else None,
        },
        "broken_phase": broken,
        "closed_form": {
            "plus": [_cj(v) for v in closed_plus],
            "minus": [_cj(v) for v in closed_minus] if closed_minus is not None else None,
        },
        "critical_frequencies": None,
        "numeric": levels,
    }
    if model.oscillator is not None:
        crit = spectra.critical_frequencies(model.oscillator)
        results["critical_frequencies"] = {
            "kind": crit.kind,
            "omega_plus": crit.omega_plus,
            "omega_minus": crit.omega_minus,
            "omega_single": crit.omega_single,
            "sign_contract": crit.sign_contract,
        }
    diagnostics = {"max_deviation": max_dev, "normalizable": None}
    if model.transform is not None:
        flag, margin = canonical.normalizable(model.transform)
        diagnostics["normalizable"] = {"flag": flag, "margin": margin}
    document = {
        "config": _config_echo(ns, "spectrum"),
        "results": results,
        "diagnostics": diagnostics,
    }
    header = ["n", "eigen_re", "eigen_im", "parity", "closed_re", "closed_im", "deviation"]
    rows = [
        [
            entry["n"],
            entry["eigenvalue"]["re"],
            entry["eigenvalue"]["im"],
            entry["parity"],
            entry["closed_form"]["re"] if entry["closed_form"] else None,
            entry["closed_form"]["im"] if entry["closed_form"] else None,
            entry["deviation"],
        ]
        for entry in levels
    ]
    _emit(ns, document, header, rows)
    return EXIT_OK


def _scan_values(ns):
    if ns.scan is None:
        raise ConfigError("scan needs --scan PARAM")
    if ns.start is None or ns.stop is None or ns.step is None:
        raise ConfigError("scan needs --start, --stop and --step")
    _require_positive(ns.step, "step")
    if ns.stop < ns.start:
        raise ConfigError("stop must be >= start")
    count = int(math.floor((ns.stop - ns.start) / ns.step + 1e-9)) + 1
    return [ns.start + i * ns.step for i in range(count)]


def cmd_scan(ns):
    _default(ns, "levels", 8)
    _default(ns, "threshold", 1e-6)
    _default(ns, "format", "json")
    if ns.levels < 1:
        raise ConfigError("levels must be at least 1")
    _require_positive(ns.threshold, "threshold")
    param = ns.scan.replace("-", "_") if ns.scan else None
    values = _scan_values(ns)
    if param not in _MODEL_KEYS:
        raise ConfigError(f"cannot scan {ns.scan!r}; choose one of "
                          + ", ".join(key.replace("_", "-") for key in _MODEL_KEYS))

    def evaluate(value):
        point = argparse.Namespace(**vars(ns))
        setattr(point, param, value)
        model = resolve_model(point)
        indicator = max(
            abs(spectra.general_quadratic_spectrum(model.quadratic, n).imag)
            for n in range(ns.levels)
        )
        margin = None
        if model.transform is not None:
            margin = canonical.normalizable(model.transform).margin
        return indicator, margin

    workers = int(os.environ.get(SCAN_WORKERS_ENV, "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(evaluate, values))
    else:
        outcomes = [evaluate(v) for v in values]

    rows = []
    transition_bracket = None
    margin_bracket = None
    previous_indicator = None
    previous_margin = None
    for index, (value, (indicator, margin)) in enumerate(zip(values, outcomes)):
        transition = (
            indicator > ns.threshold
            and (previous_indicator is None or previous_indicator <= ns.threshold)
        )
        if transition and transition_bracket is None and index > 0:
            transition_bracket = [values[index - 1], value]
        if (
            margin is not None
            and previous_margin is not None
            and margin_bracket is None
            and (margin > 0) != (previous_margin > 0)
        ):
            margin_bracket = [values[index - 1], value]
        rows.append(
            {
                "index": index,
                "value": value,
                "max_imag": indicator,
                "margin": margin,
                "transition": transition and index > 0,
            }
        )
        previous_indicator = indicator
        previous_margin = margin

    document = {
        "config": _config_echo(ns, "scan"),
        "results": {"rows": rows},
        "diagnostics": {
            "threshold": ns.threshold,
            "transition_bracket": transition_bracket,
            "margin_sign_change_bracket": margin_bracket,
        },
    }
    header = ["index", "value", "max_imag", "margin", "transition"]
    csv_rows = [
        [row["index"], row["value"], row["max_imag"], row["margin"], row["transition"]]
        for row in rows
    ]
    _emit(ns, document, header, csv_rows)
    return EXIT_OK


def cmd_verify(ns):
    _default(ns, "omega", 1.0)
    _default(ns, "trunc", 200)
    _default(ns, "levels", 8)
    _default(ns, "tol", 1e-8)
    _default(ns, "tol_eta", 1e-6)
    _default(ns, "format", "json")
    _validate_run(ns)
    _require_positive(ns.tol_eta, "tol-eta")
    transform, params = resolve_transform(ns)
    base = (
        canonical.scaled_oscillator(ns.base_k)
        if ns.base_k is not None
        else canonical.harmonic_oscillator()
    )
    iso = spectra.verify_isospectral(
        transform, trunc=ns.trunc, n_levels=ns.levels, tol=ns.tol, base=base, omega=ns.omega
    )
    target = canonical.apply_to_quadratic(transform, base)
    fock = spectra.quadratic_fock_matrix(target, ns.omega, ns.trunc)
    eta = spectra.eta_check(fock, ns.levels, tol=ns.tol_eta)
    passed = iso.passed and eta.passed
    norm = iso.normalizable
    document = {
        "config": _config_echo(ns, "verify", extra={"transform": params if all(
            not isinstance(v, complex) for v in params.values()) else {
            key: _cj(v) for key, v in params.items()}}),
        "results": {
            "isospectral": {
                "passed": iso.passed,
                "max_deviation": iso.max_deviation,
                "levels": [
                    {
                        "n": level.index,
                        "eigenvalue": _cj(level.eigenvalue),
                        "reference": _cj(level.reference),
                        "deviation": level.deviation,
                        "parity": level.parity,
                        "matched": level.matched,
                    }
                    for level in iso.levels
                ],
                "notes": list(iso.notes),
            },
            "eta": {
                "passed": eta.passed,
                "biorthonormality_defect": eta.biorthonormality_defect,
                "pseudo_hermiticity_defect": eta.pseudo_hermiticity_defect,
            },
        },
        "diagnostics": {
            "passed": passed,
            "normalizable": None
            if norm is None
            else {"flag": norm.normalizable, "margin": norm.margin},
        },
    }
    header = ["metric", "value"]
    rows = [
        ["isospectral.passed", iso.passed],
        ["isospectral.max_deviation", iso.max_deviation],
        ["eta.passed", eta.passed],
        ["eta.biorthonormality_defect", eta.biorthonormality_defect],
        ["eta.pseudo_hermiticity_defect", eta.pseudo_hermiticity_defect],
        ["normalizable.flag", None if norm is None else norm.normalizable],
        ["normalizable.margin", None if norm is None else norm.margin],
        ["passed", passed],
    ]
    rows.extend(
        [f"isospectral.level.{level.index}.deviation", level.deviation] for level in iso.levels
    )
    _emit(ns, document, header, rows)
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_wavefunction(ns):
    _default(ns, "format", "json")
    _default(ns, "grid_points", wavefun.DEFAULT_GRID_POINTS)
    if ns.grid_points < 3:
        raise ConfigError("grid-points must be at least 3")

    has_rm = ns.rm_alpha is not None or ns.rm_beta is not None
    has_level = ns.level is not None
    has_pair = any(getattr(ns, key) is not None for key in ("h11", "h12", "h22"))
    chosen = [flag for flag in (has_rm, has_level, has_pair) if flag]
    if len(chosen) != 1:
        raise ConfigError(
            "specify exactly one state: --rm-alpha/--rm-beta (ground state), "
            "--level with --omega, or --h11/--h12/--h22 with --branch/--excitation/--parity"
        )

    if has_rm:
        if ns.rm_alpha is None or ns.rm_beta is None:
            raise ConfigError("the mix ground state needs both --rm-alpha and --rm-beta")
        try:
            width = (1.0 - ns.rm_beta) / (1.0 + ns.rm_alpha)
        except ZeroDivisionError:
            raise ConfigError("alpha = -1 is degenerate")
        if not (ns.rm_beta < 1.0 and ns.rm_alpha > -1.0):
            raise ConfigError(
                f"state is not square integrable (margin {width:g}); "
                "requires beta < 1 and alpha > -1"
            )
        span = ns.grid_span if ns.grid_span else wavefun.DEFAULT_SPAN_SIGMAS / math.sqrt(width)
        grid = wavefun.uniform_grid(span, ns.grid_points)
        values = wavefun.rm_ground_state(ns.rm_alpha, ns.rm_beta, grid.points)
        sample = wavefun.WavefunctionSample(
            grid=grid, values=values, omega=width,
            source=f"rm-ground alpha={ns.rm_alpha:g} beta={ns.rm_beta:g}",
        )
    elif has_level:
        _default(ns, "omega", 1.0)
        _require_positive(ns.omega, "omega")
        if ns.level < 0:
            raise ConfigError("level must be non-negative")
        span = ns.grid_span if ns.grid_span else wavefun.DEFAULT_SPAN_SIGMAS / math.sqrt(ns.omega)
        grid = wavefun.uniform_grid(span, ns.grid_points)
        values = wavefun.hermite_function(ns.level, ns.omega, grid.points)
        sample = wavefun.WavefunctionSample(
            grid=grid, values=values, omega=ns.omega,
            source=f"oscillator level n={ns.level}",
        )
    else:
        if ns.h11 is None or ns.h12 is None or ns.h22 is None:
            raise ConfigError("the eigenvector state needs --h11, --h12 and --h22")
        _default(ns, "branch", 1)
        _default(ns, "excitation", 0)
        _default(ns, "parity", 0)
        osc = spectra.ThreeParamOscillator(ns.h11, ns.h12, ns.h22)
        try:
            pair = spectra.eigenvector_coefficients(osc, ns.branch, ns.excitation, ns.parity)
        except (spectra.BrokenPhaseError, ValueError) as exc:
            raise ConfigError(str(exc))
        if pair.frequency <= 0:
            raise ConfigError(
                f"branch frequency {pair.frequency:g} is not positive; the state is "
                "square integrable along the imaginary axis only and is not sampled"
            )
        span = ns.grid_span if ns.grid_span else (
            wavefun.DEFAULT_SPAN_SIGMAS / math.sqrt(pair.frequency)
        )
        grid = wavefun.uniform_grid(span, ns.grid_points)
        sample = wavefun.synthesize(pair, pair.frequency, grid)

    norm = wavefun.quadrature_norm(sample)
    try:
        nodes = wavefun.count_nodes(sample)
    except ValueError:
        nodes = None
    document = {
        "config": _config_echo(ns, "wavefunction"),
        "results": {
            "source": sample.source,
            "omega": sample.omega,
            "norm": norm,
            "nodes": nodes,
            "x": [float(v) for v in sample.grid.points],
            "value_re": [float(v) for v in sample.values.real],
            "value_im": [float(v) for v in sample.values.imag],
        },
        "diagnostics": {"grid_points": sample.grid.size, "grid_span": float(sample.grid.points[-1])},
    }
    header = ["x", "value_re", "value_im", "norm", "nodes"]
    rows = [
        [float(x), float(v.real), float(v.imag), norm, nodes]
        for x, v in zip(sample.grid.points, sample.values)
    ]
    _emit(ns, document, header, rows)
    return EXIT_OK


_DISPATCH = {
    "spectrum": cmd_spectrum,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "wavefunction": cmd_wavefunction,
}


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        _merge_config(ns)
        return _DISPATCH[ns.command](ns)
    except ConfigError as exc:
        print(f"nhosc: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except wavefun.NonNormalizableError as exc:
        print(f"nhosc: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (linalg.EigenConvergenceError, spectra.DegenerateEigenvaluesError) as exc:
        print(f"nhosc: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except spectra.BrokenPhaseError as exc:
        print(f"nhosc: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"nhosc: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
