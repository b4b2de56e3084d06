"""Command-line front end: figure-style experiment recipes and exporters.

Each subcommand wraps one pipeline and writes CSV (and optionally SVG)
artifacts into the output directory, printing a one-line summary.  Exit
codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io as nio
from .analysis import (PATH1, PATH2, growth_rate, laplace_projection,
                       obc_decomposition, scan_phase_diagram, transition_sweep)
from .dynamics import (default_time_grid, energy_trace, evolve, poke_state,
                       stft, synthesize_signal)
from .errors import ConfigError, NhskinError, NumericalError, ValidationError
from .gbz import gbz_compute, gbz_touching_point, skin_direction
from .model import Family, make_model
from .spectral import obc_spectrum

# Parameter sets quoted from the source experiments (rad/s; 10 unit cells).
PRESETS = {
    "fig4a": {"model": {"family": "GT", "t1": "2.1", "t2": "14.9", "t3": "11.2",
                        "t4": "3.7", "omega0": "86.5", "gamma": "2.8",
                        "n_cells": "10"}},
    "fig4e": {"model": {"family": "GT", "t1": "3.2", "t2": "6.7", "t3": "22.6",
                        "t4": "8.4", "omega0": "80.9", "gamma": "4.4",
                        "n_cells": "10"}},
    "fig4i": {"model": {"family": "GT", "t1": "2.1", "t2": "14.9", "t3": "12.6",
                        "t4": "8.9", "omega0": "89.8", "gamma": "2.5",
                        "n_cells": "10"}},
    "fig3d": {"model": {"family": "GT", "t1": "1", "t2": "2", "t3": "3",
                        "t4": "3", "n_cells": "25"},
              "phase_diagram": {"t3_min": "0.2", "t3_max": "6", "t4_min": "0.2",
                                "t4_max": "6", "resolution": "24",
                                "n_cells": "25"}},
    "fig5h": {"model": {"family": "GT", "t1": "1", "t2": "2", "t3": "4",
                        "t4": "1", "n_cells": "10"},
              "sweep": {"path": "1", "samples": "13", "horizon": "80"}},
    "fig5i": {"model": {"family": "GT", "t1": "1", "t2": "2", "t3": "4",
                        "t4": "1", "n_cells": "10"},
              "sweep": {"path": "2", "samples": "25", "horizon": "80"}},
}


def _merge_config(args) -> dict:
    cfg = {}
    if args.preset:
        if args.preset not in PRESETS:
            raise ConfigError(f"unknown preset {args.preset!r}; "
                              f"choose from {', '.join(sorted(PRESETS))}")
        for section, block in PRESETS[args.preset].items():
            cfg.setdefault(section, {}).update(block)
    if args.config:
        for section, block in nio.load_config(args.config).items():
            cfg.setdefault(section, {}).update(block)
    if not cfg:
        raise ConfigError("no configuration: pass --preset and/or --config")
    return cfg


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _floats(block, key, default):
    return float(block.get(key, default)) if block else float(default)


def cmd_spectrum(args) -> int:
    cfg = _merge_config(args)
    model = nio.model_from_config(cfg)
    spec = obc_spectrum(model)
    out = _outdir(args)
    if args.format in ("csv", "both"):
        nio.write_spectrum_csv(out / "spectrum.csv", spec)
    if args.format in ("svg", "both"):
        nio.write_svg_scatter(out / "spectrum.svg", spec.eigenvalues.real,
                              spec.eigenvalues.imag, title="OBC spectrum")
    w = spec.eigenvalues
    top = w[np.argsort(-w.imag)[:2]]
    beat = abs(top[0].real - top[1].real) / (2 * np.pi)
    print(f"spectrum: {spec.dim} modes, max|Im E| = {w.imag.max():.6g} rad/s, "
          f"leading-pair beat = {beat:.4g} Hz")
    return 0


def cmd_gbz(args) -> int:
    cfg = _merge_config(args)
    model = nio.model_from_config(cfg)
    block = cfg.get("gbz", {})
    g = gbz_compute(model, method=block.get("method", "obc_fit"),
                    n_sites=int(block.get("n_sites", "160")),
                    cross_check=block.get("cross_check", "false").lower() == "true",
                    cross_tol=_floats(block, "cross_tol", 1e-3))
    out = _outdir(args)
    if args.format in ("csv", "both"):
        nio.write_gbz_csv(out / "gbz.csv", g)
    if args.format in ("svg", "both"):
        nio.write_svg_scatter(out / "gbz.svg", g.betas.real, g.betas.imag,
                              title="GBZ")
    sd = skin_direction(g)
    try:
        touch = gbz_touching_point(g)
        touch_txt = f"touching point beta = {touch.real:.6g}{touch.imag:+.3g}j"
    except NumericalError:
        touch_txt = "no touching point"
    print(f"gbz: {len(g.betas)} points, direction = {sd.direction.value}, "
          f"mean log|beta| = {sd.mean_log_modulus:.4g}, {touch_txt}")
    return 0


def _evolve_from_config(cfg):
    model = nio.model_from_config(cfg)
    block = cfg.get("evolve", {})
    horizon = _floats(block, "horizon", 20.0)
    fs = _floats(block, "fs", 500.0)
    site = int(block.get("poke_site", "20")) if block else 20
    t = default_time_grid(horizon, fs) if horizon > 0 else np.array([0.0])
    field = evolve(model, poke_state(model, site),
                   t, method=block.get("method", "auto") if block else "auto")
    return model, field


def cmd_evolve(args) -> int:
    cfg = _merge_config(args)
    model, field = _evolve_from_config(cfg)
    out = _outdir(args)
    if args.format in ("csv", "both"):
        nio.write_wavefield_csv(out / "wavefield.csv", field)
        nio.write_energy_csv(out / "energy.csv", energy_trace(field))
    nio.write_wavefield_npz(out / "wavefield.npz", field)
    # site-1 spectrogram of the synthesized carrier signal
    stft_block = cfg.get("stft", {})
    fs = _floats(cfg.get("evolve", {}), "fs", 500.0)
    window = int(round(_floats(stft_block, "window_s", 2.0) * fs))
    hop = max(1, int(round(_floats(stft_block, "hop_s", 0.1) * fs)))
    sig = synthesize_signal(field)[:, 0]
    if len(sig) >= window:
        sg = stft(sig, fs=fs, window_len=window, hop=hop)
        if args.format in ("csv", "both"):
            nio.write_spectrogram_csv(out / "spectrogram_site1.csv", sg)
        if args.format in ("svg", "both"):
            keep = sg.frequencies <= 40.0
            nio.write_svg_heatmap(out / "spectrogram_site1.svg",
                                  sg.magnitudes[keep], title="site-1 STFT",
                                  cell=4)
    P = energy_trace(field).P
    print(f"evolve: {len(field.times)} steps on {model.n_sites} sites, "
          f"P(end)/P(0) = {P[-1] / P[0]:.6g}")
    return 0


def cmd_project(args) -> int:
    cfg = _merge_config(args)
    model, field = _evolve_from_config(cfg)
    block = cfg.get("gbz", {})
    gbz_model = model.with_(gamma=0.0)
    g = gbz_compute(gbz_model, method=block.get("method", "obc_fit"),
                    n_sites=int(block.get("n_sites", "160")))
    # decimate the stored coefficients to a manageable 10 Hz output grid
    keep = slice(None, None, max(1, (len(field.times) - 1) // 200))
    from .dynamics import WaveField
    sub = WaveField(field.times[keep], field.amplitudes[keep], model)
    proj = laplace_projection(sub, g)
    dec = obc_decomposition(field)
    out = _outdir(args)
    if args.format in ("csv", "both"):
        nio.write_coefficients_csv(out / "gbz_projection.csv", proj.times,
                                   proj.coefficients)
        nio.write_coefficients_csv(out / "mode_decomposition.csv", dec.times,
                                   dec.coefficients)
        nio.write_gbz_csv(out / "gbz.csv", g)
    if args.format in ("svg", "both"):
        nio.write_svg_heatmap(out / "gbz_projection.svg",
                              proj.band_pair_magnitude().T,
                              title="|C(t)| per GBZ point", cell=3)
    j = int(np.argmax(np.abs(dec.coefficients[-1])))
    E = dec.spectrum.eigenvalues[j]
    print(f"project: {len(g.betas)} GBZ points, dominant late mode "
          f"E = {E.real:.6g}{E.imag:+.6g}j rad/s")
    return 0


def cmd_phase_diagram(args) -> int:
    cfg = _merge_config(args)
    block = cfg.get("phase_diagram")
    if not block:
        raise ConfigError("phase-diagram needs a [phase_diagram] section or preset")
    model_block = cfg.get("model", {})
    t1 = float(model_block.get("t1", "1"))
    t2 = float(model_block.get("t2", "2"))
    diagram = scan_phase_diagram(
        t1, t2,
        t3_range=(float(block["t3_min"]), float(block["t3_max"])),
        t4_range=(float(block["t4_min"]), float(block["t4_max"])),
        resolution=int(block["resolution"]),
        n_cells=int(block.get("n_cells", "25")),
        threads=args.threads)
    out = _outdir(args)
    if args.format in ("csv", "both"):
        nio.write_phase_diagram_csv(out / "phase_diagram.csv", diagram)
    if args.format in ("svg", "both"):
        nio.write_svg_heatmap(out / "phase_diagram.svg", diagram.im_magnitude,
                              title="max |Im E_OBC|")
    counts = {}
    for lab in diagram.labels.ravel():
        counts[lab.label.value] = counts.get(lab.label.value, 0) + 1
    summary = ", ".join(f"{k}:{v}" for k, v in sorted(counts.items()))
    print(f"phase-diagram: {diagram.labels.size} points ({summary})")
    return 0


def cmd_sweep(args) -> int:
    cfg = _merge_config(args)
    block = cfg.get("sweep")
    if not block:
        raise ConfigError("sweep needs a [sweep] section or preset")
    path = {"1": PATH1, "2": PATH2}.get(block.get("path", "1"))
    if path is None:
        raise ConfigError("[sweep] path must be 1 or 2")
    horizon = _floats(block, "horizon", 80.0)
    sweep = transition_sweep(path, int(block.get("samples", "13")),
                             t_grid=default_time_grid(horizon),
                             n_cells=int(block.get("n_cells", "10")))
    out = _outdir(args)
    if args.format in ("csv", "both"):
        nio.write_csv(out / "sweep.csv", ["m", "t3", "t4", "lambda"],
                      ((float(m), *map(float, path.hoppings(m)), float(l))
                       for m, l in zip(sweep.m_values, sweep.growth_rates)))
        for m, tr in zip(sweep.m_values, sweep.traces):
            nio.write_energy_csv(out / f"energy_m{m:.3f}.csv", tr)
    lam = sweep.growth_rates
    print(f"sweep: path with {len(lam)} samples, lambda from {lam[0]:.4g} "
          f"to {lam[-1]:.4g} 1/s")
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "gbz": cmd_gbz,
    "evolve": cmd_evolve,
    "project": cmd_project,
    "phase-diagram": cmd_phase_diagram,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nhskin",
        description="Non-Hermitian skin-effect dynamics toolkit")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", help="path to an INI-style run configuration")
    p.add_argument("--preset", help="named parameter preset "
                   f"({', '.join(sorted(PRESETS))})")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads for grid scans")
    p.add_argument("--format", choices=["csv", "svg", "both"], default="csv")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, NhskinError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
