"""File formats: impedance sweeps, run configuration, result emission.

Impedance sweep files are plain CSV with a commented header::

    # ucadiv impedance sweep v1
    # N = 2
    # d = 0.25
    # funit = relative
    f,re_z11,im_z11,re_z12,im_z12
    0.850000000000000,...

One row per frequency sample (strictly increasing f/fc), Re/Im pairs for
the M = N//2 + 1 independent first-row impedances.  The writer and parser
round-trip exactly; everything the writer did not produce is rejected with
a line-numbered diagnostic.
"""

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .capacity import OutageCurve, SimConfig
from .errors import ConfigError, ParseError
from .frontend import NoiseTemps
from .modes import ArraySweep
from .network import FrequencyGrid

FORMAT_TAG = "ucadiv impedance sweep v1"
OUTDIR_ENV = "UCADIV_OUTDIR"


def default_outdir():
    return os.environ.get(OUTDIR_ENV, ".")


# ---------------------------------------------------------------------------
# impedance sweep files

def _fmt(x):
    return format(float(x), ".17g")


def write_impedance(sweep: ArraySweep, path):
    """Write an ArraySweep to the CSV sweep format."""
    m = sweep.n // 2 + 1
    cols = ["f"]
    for j in range(1, m + 1):
        cols += [f"re_z1{j}", f"im_z1{j}"]
    lines = [
        f"# {FORMAT_TAG}",
        f"# N = {sweep.n}",
        f"# d = {_fmt(sweep.d)}",
        "# funit = relative",
        ",".join(cols),
    ]
    for i, f in enumerate(sweep.grid.samples):
        row = [_fmt(f)]
        for j in range(m):
            z = sweep.first_row[i, j]
            row += [_fmt(z.real), _fmt(z.imag)]
        lines.append(",".join(row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_impedance(path) -> ArraySweep:
    """Parse a CSV sweep file, validating structure and monotonicity."""
    with open(path, encoding="utf-8") as fh:
        raw = fh.read().splitlines()

    header = {}
    body_start = None
    for i, line in enumerate(raw):
        if line.startswith("#"):
            text = line[1:].strip()
            if "=" in text:
                key, _, val = text.partition("=")
                header[key.strip()] = val.strip()
            elif i == 0 and text != FORMAT_TAG:
                raise ParseError(f"unrecognized format tag {text!r}", path, 1)
            continue
        body_start = i
        break
    if body_start is None:
        raise ParseError("file has no column header", path)

    try:
        n = int(header["N"])
        d = float(header["d"])
    except KeyError as exc:
        raise ParseError(f"missing header field {exc}", path) from None
    except ValueError as exc:
        raise ParseError(f"bad header value: {exc}", path) from None
    if n < 1:
        raise ParseError(f"element count must be >= 1, got {n}", path)
    funit = header.get("funit", "relative")
    if funit != "relative":
        raise ParseError(f"unsupported frequency unit {funit!r}", path)
    m = n // 2 + 1
    n_cols = 1 + 2 * m

    columns = raw[body_start].split(",")
    if len(columns) != n_cols or columns[0] != "f":
        raise ParseError(
            f"expected {n_cols} columns starting with 'f', got "
            f"{len(columns)}", path, body_start + 1,
        )

    freqs, rows = [], []
    prev_f = None
    for lineno0 in range(body_start + 1, len(raw)):
        line = raw[lineno0].strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != n_cols:
            raise ParseError(
                f"expected {n_cols} values, got {len(parts)}",
                path, lineno0 + 1,
            )
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise ParseError(str(exc), path, lineno0 + 1) from None
        f = vals[0]
        if f <= 0:
            raise ParseError(f"non-positive frequency {f}", path, lineno0 + 1)
        if prev_f is not None and f <= prev_f:
            raise ParseError(
                f"non-monotone frequency {f} (previous {prev_f})",
                path, lineno0 + 1,
            )
        prev_f = f
        freqs.append(f)
        rows.append([complex(vals[2 * j + 1], vals[2 * j + 2]) for j in range(m)])

    if len(freqs) < 2:
        raise ParseError("need at least two data rows", path)
    grid = FrequencyGrid(np.array(freqs))
    return ArraySweep(n=n, d=d, grid=grid, first_row=np.array(rows))


# ---------------------------------------------------------------------------
# run configuration

@dataclass(frozen=True)
class RunConfig:
    """File-form of SimConfig plus the input mode.

    ``input_mode`` is "fixture" (synthetic coupling model, optionally pinned
    by ``fixture_modes``) or "files" (one impedance sweep per spacing in
    ``impedance_files``).
    """

    sim: SimConfig = field(default_factory=SimConfig)
    input_mode: str = "fixture"
    impedance_files: tuple = ()
    fixture_modes: tuple = ()

    def to_dict(self):
        out = {
            "n_antennas": self.sim.n_antennas,
            "spacings": list(self.sim.spacings),
            "subcarriers": self.sim.subcarriers,
            "bandwidth_hz": self.sim.bandwidth_hz,
            "relative_bandwidth": self.sim.relative_bandwidth,
            "snr_db": self.sim.snr_db,
            "temp_antenna": self.sim.temps.t_antenna,
            "temp_forward": self.sim.temps.t_forward,
            "temp_reverse": self.sim.temps.t_reverse,
            "realizations": self.sim.realizations,
            "outage_p": self.sim.outage_p,
            "seed": self.sim.seed,
            "retune": self.sim.retune_modes,
            "n_taps": self.sim.n_taps,
            "tap_powers": (
                list(self.sim.tap_powers)
                if self.sim.tap_powers is not None else None
            ),
            "coupling": self.sim.coupling,
            "planewaves": self.sim.planewaves,
            # workers deliberately omitted: parallelism does not change
            # results, so it must not change emitted files or their hash
            "input": self.input_mode,
            "impedance_files": [list(p) for p in self.impedance_files],
            "fixture_modes": [
                [s, [list(m) for m in ms]] for s, ms in self.fixture_modes
            ],
        }
        return out


_CONFIG_KEYS = {
    "n_antennas": int,
    "spacings": list,
    "subcarriers": int,
    "bandwidth_hz": float,
    "relative_bandwidth": float,
    "snr_db": float,
    "temp_antenna": float,
    "temp_forward": float,
    "temp_reverse": float,
    "realizations": int,
    "outage_p": float,
    "seed": int,
    "retune": bool,
    "n_taps": int,
    "tap_powers": (list, type(None)),
    "coupling": bool,
    "planewaves": int,
    "workers": int,
    "input": str,
    "impedance_files": list,
    "fixture_modes": list,
}


def config_from_dict(doc) -> RunConfig:
    """Validate a flat key/value document; unknown keys are rejected."""
    if not isinstance(doc, dict):
        raise ConfigError("configuration document must be an object")
    unknown = set(doc) - set(_CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    for key, typ in _CONFIG_KEYS.items():
        if key in doc and not isinstance(doc[key], typ):
            if typ is float and isinstance(doc[key], int):
                continue
            raise ConfigError(
                f"key {key!r} has wrong type {type(doc[key]).__name__}"
            )
    input_mode = doc.get("input", "fixture")
    if input_mode not in ("fixture", "files"):
        raise ConfigError(f"input mode must be 'fixture' or 'files', got "
                          f"{input_mode!r}")
    temps = NoiseTemps(
        t_antenna=float(doc.get("temp_antenna", 1.0)),
        t_forward=float(doc.get("temp_forward", 2.0)),
        t_reverse=float(doc.get("temp_reverse", 0.0)),
    )
    defaults = SimConfig()
    tap_powers = doc.get("tap_powers")
    try:
        sim = SimConfig(
            n_antennas=int(doc.get("n_antennas", defaults.n_antennas)),
            spacings=tuple(doc.get("spacings", defaults.spacings)),
            subcarriers=int(doc.get("subcarriers", defaults.subcarriers)),
            bandwidth_hz=float(doc.get("bandwidth_hz", defaults.bandwidth_hz)),
            relative_bandwidth=float(
                doc.get("relative_bandwidth", defaults.relative_bandwidth)
            ),
            snr_db=float(doc.get("snr_db", defaults.snr_db)),
            temps=temps,
            realizations=int(doc.get("realizations", defaults.realizations)),
            outage_p=float(doc.get("outage_p", defaults.outage_p)),
            seed=int(doc.get("seed", defaults.seed)),
            retune_modes=bool(doc.get("retune", defaults.retune_modes)),
            n_taps=int(doc.get("n_taps", defaults.n_taps)),
            tap_powers=tuple(tap_powers) if tap_powers is not None else None,
            coupling=bool(doc.get("coupling", defaults.coupling)),
            planewaves=int(doc.get("planewaves", defaults.planewaves)),
            workers=int(doc.get("workers", defaults.workers)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(
        sim=sim,
        input_mode=input_mode,
        impedance_files=tuple(
            (float(s), str(p)) for s, p in doc.get("impedance_files", [])
        ),
        fixture_modes=tuple(
            (float(s), tuple(tuple(float(x) for x in m) for m in ms))
            for s, ms in doc.get("fixture_modes", [])
        ),
    )


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), path, exc.lineno) from None
    return config_from_dict(doc)


def config_hash(config: RunConfig):
    """Stable short hash over the full configuration."""
    canon = json.dumps(config.to_dict(), sort_keys=True)
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# result emission

def emit_curve(curve: OutageCurve, run_config: RunConfig, out_dir,
               stem="sweep", to_bits=False):
    """Write an outage curve as a CSV table plus a JSON document.

    Both files are reproducible byte-for-byte from the same configuration
    and seed; the JSON embeds the full configuration.
    """
    os.makedirs(out_dir, exist_ok=True)
    h = config_hash(run_config)
    unit = "bits" if to_bits else "nats"
    scale = 1.0 / np.log(2.0) if to_bits else 1.0

    rows = [f"spacing,c_out_{unit},ci_half_width,samples,seed,config"]
    for p in curve.points:
        if p.error is not None:
            rows.append(
                f"{_fmt(p.d)},error,error,0,{curve.config.seed},{h}"
            )
            continue
        rows.append(
            f"{_fmt(p.d)},{_fmt(p.c_out * scale)},"
            f"{_fmt(p.ci_half_width * scale)},{p.n_samples},"
            f"{curve.config.seed},{h}"
        )
    table_path = os.path.join(out_dir, f"{stem}.csv")
    with open(table_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(rows) + "\n")

    doc = {
        "config": run_config.to_dict(),
        "config_hash": h,
        "capacity_unit": f"{unit}/s/Hz",
        "points": [
            {
                "spacing": p.d,
                "c_out": None if p.error else p.c_out * scale,
                "ci_half_width": None if p.error else p.ci_half_width * scale,
                "samples": p.n_samples,
                "error": p.error,
            }
            for p in curve.points
        ],
    }
    doc_path = os.path.join(out_dir, f"{stem}.json")
    with open(doc_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return table_path, doc_path


def emit_mode_report(mode_set, usable_bands, out_path=None):
    """Delimited mode table: index, multiplicity, R, Q, f0, L, C, band."""
    rows = ["dft_index,multiplicity,r_ohm,q,f0,l_per_fc,c_per_fc,"
            "band_lo,band_hi,band_width"]
    for mode, band in zip(mode_set.modes, usable_bands):
        lo, hi = band
        rows.append(
            f"{mode.dft_index},{mode.multiplicity},{_fmt(mode.r)},"
            f"{_fmt(mode.q)},{_fmt(mode.f0)},{_fmt(mode.inductance)},"
            f"{_fmt(mode.capacitance)},{_fmt(lo)},{_fmt(hi)},{_fmt(hi - lo)}"
        )
    text = "\n".join(rows) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def emit_match_report(mode_set, specs, reports, out_path=None):
    """Delimited matching-budget table per distinct mode."""
    rows = ["dft_index,q,f0,w,gamma0,gamma0_sq,gamma0_sq_upper,"
            "rhp_zero_alpha,usable,residual_a,residual_b,residual_b_bound"]
    for mode, spec, rep in zip(mode_set.modes, specs, reports):
        rows.append(
            f"{mode.dft_index},{_fmt(spec.q)},{_fmt(spec.f0)},{_fmt(spec.w)},"
            f"{_fmt(spec.gamma0)},{_fmt(spec.gamma0_sq)},"
            f"{_fmt(spec.gamma0_sq_upper)},{_fmt(spec.rhp_zero.real)},"
            f"{int(spec.usable)},{_fmt(rep.residual_a)},"
            f"{_fmt(rep.residual_b)},{_fmt(rep.residual_b_bound)}"
        )
    text = "\n".join(rows) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
