"""CSV/SVG emitters, readers, and the plain-text run-configuration parser.

CSV uses 17-significant-digit decimals so that every float round-trips
bit-exactly.  SVG output is generated directly (no plotting dependency).
The configuration format is INI-like: ``[section]`` headers and
``key = value`` lines; unknown keys are rejected with the offending line
number in the message.
"""

from __future__ import annotations

import csv
import io as _io
from pathlib import Path

import numpy as np

from .errors import ConfigError, ValidationError
from .model import BC, Family, LatticeModel, make_model

FLOAT_FMT = "%.17g"


# ---------------------------------------------------------------- CSV core

def write_csv(path, header: list[str], rows) -> None:
    """Write rows of numbers/strings; floats use the 17-digit format."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([FLOAT_FMT % v if isinstance(v, float) else v
                        for v in row])


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    with Path(path).open(newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        return header, [row for row in r]


# ------------------------------------------------------------- exporters

def write_spectrum_csv(path, spectrum) -> None:
    write_csv(path, ["index", "Re_E", "Im_E"],
              ((i, float(E.real), float(E.imag))
               for i, E in enumerate(spectrum.eigenvalues)))


def write_gbz_csv(path, gbz) -> None:
    write_csv(path, ["band_pair", "Re_beta", "Im_beta", "Re_E", "Im_E"],
              ((int(p), float(b.real), float(b.imag), float(E.real), float(E.imag))
               for p, b, E in zip(gbz.band_pair, gbz.betas, gbz.energies)))


def write_wavefield_csv(path, field) -> None:
    def rows():
        for it, t in enumerate(field.times):
            for ix in range(field.amplitudes.shape[1]):
                a = field.amplitudes[it, ix]
                yield (float(t), ix + 1, float(a.real), float(a.imag))
    write_csv(path, ["time", "site", "Re_psi", "Im_psi"], rows())


def write_wavefield_npz(path, field) -> None:
    """Binary columnar dump for large runs."""
    np.savez_compressed(path, times=field.times, amplitudes=field.amplitudes)


def read_wavefield_npz(path):
    with np.load(path) as z:
        return z["times"], z["amplitudes"]


def write_energy_csv(path, trace) -> None:
    write_csv(path, ["time", "P"],
              ((float(t), float(p)) for t, p in zip(trace.times, trace.P)))


def write_spectrogram_csv(path, spectrogram) -> None:
    def rows():
        for i, f in enumerate(spectrogram.frequencies):
            for j, t in enumerate(spectrogram.times):
                yield (float(f), float(t), float(spectrogram.magnitudes[i, j]))
    write_csv(path, ["frequency", "time", "magnitude"], rows())


def write_phase_diagram_csv(path, diagram) -> None:
    def rows():
        for i4, t4 in enumerate(diagram.t4_grid):
            for i3, t3 in enumerate(diagram.t3_grid):
                lab = diagram.labels[i4, i3]
                yield (float(t3), float(t4), lab.label.value,
                       float(diagram.im_magnitude[i4, i3]))
    write_csv(path, ["t3", "t4", "label", "max_im"], rows())


def write_coefficients_csv(path, times, coefficients) -> None:
    """Projection/decomposition coefficients as (time, index, Re, Im)."""
    C = np.asarray(coefficients)
    flat = C.reshape(len(times), -1)
    def rows():
        for it, t in enumerate(times):
            for j in range(flat.shape[1]):
                yield (float(t), j, float(flat[it, j].real), float(flat[it, j].imag))
    write_csv(path, ["time", "index", "Re", "Im"], rows())


# ------------------------------------------------------------- SVG output

def _svg_document(width, height, body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">')
    return "\n".join([head, *body, "</svg>"])


def _viridis(u: float) -> str:
    """Small fixed-stop approximation of a perceptual colormap."""
    stops = [(0.267, 0.005, 0.329), (0.283, 0.141, 0.458),
             (0.254, 0.265, 0.530), (0.207, 0.372, 0.553),
             (0.164, 0.471, 0.558), (0.128, 0.567, 0.551),
             (0.135, 0.659, 0.518), (0.267, 0.749, 0.441),
             (0.478, 0.821, 0.318), (0.741, 0.873, 0.150),
             (0.993, 0.906, 0.144)]
    u = min(max(float(u), 0.0), 1.0) * (len(stops) - 1)
    i = min(int(u), len(stops) - 2)
    f = u - i
    rgb = [(1 - f) * a + f * b for a, b in zip(stops[i], stops[i + 1])]
    return "#%02x%02x%02x" % tuple(int(round(255 * c)) for c in rgb)


def write_svg_heatmap(path, values: np.ndarray, x_grid=None, y_grid=None,
                      title: str = "", cell: int = 12) -> None:
    """Render a matrix as a colored-cell heatmap (row 0 at the bottom)."""
    V = np.asarray(values, dtype=float)
    if V.ndim != 2:
        raise ValidationError("heatmap expects a 2-D array")
    lo, hi = float(np.nanmin(V)), float(np.nanmax(V))
    span = hi - lo if hi > lo else 1.0
    ny, nx = V.shape
    margin = 20
    body = []
    if title:
        body.append(f'<text x="{margin}" y="14" font-size="12">{title}</text>')
    for iy in range(ny):
        for ix in range(nx):
            c = _viridis((V[iy, ix] - lo) / span)
            x = margin + ix * cell
            y = margin + (ny - 1 - iy) * cell
            body.append(f'<rect x="{x}" y="{y}" width="{cell}" '
                        f'height="{cell}" fill="{c}"/>')
    doc = _svg_document(2 * margin + nx * cell, 2 * margin + ny * cell, body)
    Path(path).write_text(doc + "\n")


def write_svg_scatter(path, x, y, title: str = "", size: int = 420,
                      color: str = "#1f77b4", unit_circle: bool = True) -> None:
    """Scatter plot with auto-scaled axes and a unit-circle reference."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValidationError("x and y must have the same shape")
    lim = max(1.0, np.max(np.abs(x), initial=0), np.max(np.abs(y), initial=0)) * 1.1
    half = size / 2

    def sx(v):
        return half + v / lim * (half - 10)

    def sy(v):
        return half - v / lim * (half - 10)

    body = [f'<line x1="{sx(-lim)}" y1="{sy(0)}" x2="{sx(lim)}" y2="{sy(0)}" '
            'stroke="#999" stroke-width="1"/>',
            f'<line x1="{sx(0)}" y1="{sy(-lim)}" x2="{sx(0)}" y2="{sy(lim)}" '
            'stroke="#999" stroke-width="1"/>']
    if unit_circle:
        body.append(f'<circle cx="{sx(0)}" cy="{sy(0)}" r="{(half - 10) / lim}" '
                    'fill="none" stroke="#ccc" stroke-dasharray="4 3"/>')
    if title:
        body.append(f'<text x="10" y="14" font-size="12">{title}</text>')
    for xi, yi in zip(x.ravel(), y.ravel()):
        body.append(f'<circle cx="{sx(xi):.2f}" cy="{sy(yi):.2f}" r="2.2" '
                    f'fill="{color}"/>')
    Path(path).write_text(_svg_document(size, size, body) + "\n")


# ------------------------------------------------------- config file parser

#: allowed keys per section; the model block mirrors the LatticeModel schema
CONFIG_SCHEMA = {
    "model": {"family", "t1", "t2", "t3", "t4", "omega0", "gamma",
              "n_cells", "bc", "nhssh_delta"},
    "evolve": {"horizon", "fs", "poke_site", "method"},
    "gbz": {"method", "n_sites", "cross_check", "cross_tol"},
    "stft": {"window_s", "hop_s"},
    "phase_diagram": {"t3_min", "t3_max", "t4_min", "t4_max",
                      "resolution", "n_cells"},
    "sweep": {"path", "samples", "horizon", "n_cells"},
    "run": {"seed"},
}

_MODEL_DEFAULTS = {"omega0": "0", "gamma": "0", "n_cells": "10", "bc": "OBC"}


def parse_config(text: str, source: str = "<config>") -> dict[str, dict[str, str]]:
    """Parse an INI-like config into {section: {key: value}}.

    Raises :class:`ConfigError` with the line number for syntax errors,
    unknown sections, unknown keys, and duplicate keys.
    """
    sections: dict[str, dict[str, str]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in CONFIG_SCHEMA:
                raise ConfigError(f"{source}:{lineno}: unknown section [{name}]")
            if name in sections:
                raise ConfigError(f"{source}:{lineno}: duplicate section [{name}]")
            sections[name] = {}
            current = name
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        if current is None:
            raise ConfigError(f"{source}:{lineno}: key outside of any [section]")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in CONFIG_SCHEMA[current]:
            raise ConfigError(
                f"{source}:{lineno}: unknown key {key!r} in section [{current}]")
        if key in sections[current]:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        sections[current][key] = value
    return sections


def load_config(path) -> dict[str, dict[str, str]]:
    path = Path(path)
    return parse_config(path.read_text(), source=str(path))


def model_from_config(cfg: dict[str, dict[str, str]]) -> LatticeModel:
    """Build a model from the [model] section, with documented defaults."""
    if "model" not in cfg:
        raise ConfigError("config has no [model] section")
    block = dict(_MODEL_DEFAULTS)
    block.update(cfg["model"])
    missing = {"family", "t1", "t2", "t3", "t4"} - set(block)
    if missing:
        raise ConfigError(f"[model] is missing keys: {', '.join(sorted(missing))}")
    try:
        delta = block.get("nhssh_delta")
        return make_model(block["family"], float(block["t1"]), float(block["t2"]),
                          float(block["t3"]), float(block["t4"]),
                          omega0=float(block["omega0"]), gamma=float(block["gamma"]),
                          n_cells=int(block["n_cells"]), bc=block["bc"],
                          nhssh_delta=None if delta is None else float(delta))
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"[model] has an invalid value: {exc}") from exc


def model_to_config(model: LatticeModel) -> str:
    """Serialize a model back to the [model] block."""
    lines = ["[model]",
             f"family = {model.family.value}",
             f"t1 = {FLOAT_FMT % model.t1}",
             f"t2 = {FLOAT_FMT % model.t2}",
             f"t3 = {FLOAT_FMT % model.t3}",
             f"t4 = {FLOAT_FMT % model.t4}",
             f"omega0 = {FLOAT_FMT % model.omega0}",
             f"gamma = {FLOAT_FMT % model.gamma}",
             f"n_cells = {model.n_cells}",
             f"bc = {model.bc.value}"]
    if model.nhssh_delta is not None:
        lines.append(f"nhssh_delta = {FLOAT_FMT % model.nhssh_delta}")
    return "\n".join(lines) + "\n"
