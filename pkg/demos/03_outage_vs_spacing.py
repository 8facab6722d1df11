#!/usr/bin/env python3
"""Diversity-OFDM outage capacity versus antenna spacing.

The headline simulation: for each element spacing, couple the synthetic
array model, box-car match every eigen-mode over the signal band, draw
correlated quasi-static channels, and estimate the 1%-outage capacity by
Monte-Carlo.  Capacity climbs with spacing and saturates near the i.i.d.
limit around a quarter wavelength.

Desk-scale sample count; pass a larger --realizations for smoother curves.
"""

import argparse
import time

from ucadiv import SimConfig, outage, run_monte_carlo, sweep

parser = argparse.ArgumentParser()
parser.add_argument("--realizations", type=int, default=5000)
parser.add_argument("--antennas", type=int, default=2)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

spacings = (0.05, 0.1, 0.25, 0.5, 1.0)
cfg = SimConfig(
    n_antennas=args.antennas,
    spacings=spacings,
    realizations=args.realizations,
    seed=args.seed,
)

print(f"N = {cfg.n_antennas} ring, K = {cfg.subcarriers} sub-carriers over a "
      f"{cfg.relative_bandwidth:.0%} band, {cfg.snr_db:.0f} dB SNR,")
print(f"noise ratios (T_A : T_f : T_r) = ({cfg.temps.t_antenna:g} : "
      f"{cfg.temps.t_forward:g} : {cfg.temps.t_reverse:g}), "
      f"{cfg.realizations} realizations per point\n")

start = time.perf_counter()
curve = sweep(cfg)

iid_cfg = SimConfig(
    n_antennas=args.antennas, spacings=(1.0,), coupling=False,
    realizations=args.realizations, seed=args.seed,
)
iid_c0, iid_half = outage(run_monte_carlo(iid_cfg, 1.0), iid_cfg.outage_p)
elapsed = time.perf_counter() - start

print(f"{'d (wavelengths)':>16} {'C_out(1%) nats/s/Hz':>20} {'95% CI':>12}")
for p in curve.points:
    bar = "#" * int(round(40 * p.c_out / (iid_c0 + iid_half)))
    print(f"{p.d:16.2f} {p.c_out:20.4f} +/- {p.ci_half_width:8.4f}  {bar}")
print(f"{'i.i.d. limit':>16} {iid_c0:20.4f} +/- {iid_half:8.4f}")

print(f"\n({elapsed:.1f} s)")
print("\nTight rings lose outage capacity two ways: the fading decorrelates")
print("slowly, and the narrowband eigen-mode rides on a noisier front end.")
print("Past a quarter wavelength there is little left to gain.")
