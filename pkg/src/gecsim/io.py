"""CSV/JSON writers and readers for simulation records.

All floating-point output uses 12 significant digits so that fixed-seed
reruns are byte-identical and the files stay human-diffable.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def write_gec_csv(path, t, E_g, E_g_upper, E_g_qp=None):
    """Series of capacity bounds; the quasiparticle column stays empty when absent."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "E_g", "E_g_upper", "E_g_qp"])
        for i in range(len(t)):
            qp = _fmt(E_g_qp[i]) if E_g_qp is not None else ""
            w.writerow([_fmt(t[i]), _fmt(E_g[i]), _fmt(E_g_upper[i]), qp])


def write_profile_csv(path, t, profiles):
    """Long-form per-cut entropies: one row per (t, ell)."""
    path = Path(path)
    profiles = np.asarray(profiles)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "ell", "S_nats"])
        for i in range(len(t)):
            for ell in range(1, profiles.shape[1] + 1):
                w.writerow([_fmt(t[i]), ell, _fmt(profiles[i, ell - 1])])


def write_envelope_csv(path, t, mean, lo, hi):
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "E_g_mean", "E_g_min", "E_g_max"])
        for i in range(len(t)):
            w.writerow([_fmt(t[i]), _fmt(mean[i]), _fmt(lo[i]), _fmt(hi[i])])


def write_qp_profile_csv(path, t, ells, scaling, finite):
    """Quasiparticle predictions, both variants, long form over (t, ell)."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "ell", "S_scaling_nats", "S_finite_nats"])
        for i in range(len(t)):
            for j, ell in enumerate(ells):
                w.writerow([_fmt(t[i]), ell, _fmt(scaling[i, j]), _fmt(finite[i, j])])


def write_collapse_csv(path, L_list, t_over_L, eg_over_L2):
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["L", "t_over_L", "Eg_over_L2"])
        for i, L in enumerate(L_list):
            for j in range(len(t_over_L)):
                w.writerow([L, _fmt(t_over_L[j]), _fmt(eg_over_L2[i, j])])


def write_fit_json(path, fit):
    payload = {
        "gamma": fit.gamma,
        "intercept": fit.intercept,
        "t_min": fit.window[0],
        "t_max": fit.window[1],
        "r_squared": fit.r_squared,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def write_manifest(path, payload: dict):
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_series_csv(path):
    """Read a gec.csv-style file into a dict of float column arrays."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file")
        cols = {name: [] for name in reader.fieldnames}
        for row in reader:
            for name in reader.fieldnames:
                raw = row[name]
                cols[name].append(np.nan if raw in ("", None) else float(raw))
    return {name: np.array(vals) for name, vals in cols.items()}
