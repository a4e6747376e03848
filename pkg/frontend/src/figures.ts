/**
 * The five figure styles, each built purely from file columns — nothing is
 * recomputed from model parameters.
 *
 * 1. entropy    — block entropy vs time with quasiparticle overlays
 * 2. gec        — capacity series with its gate-count upper bound
 * 3. loglog     — capacity growth on log-log axes with the fitted power law
 * 4. collapse   — rescaled multi-size overlay with the 0.25 ceiling line
 * 5. exponents  — fitted growth exponent versus hopping-range exponent
 */

import { existsSync, readdirSync } from "node:fs";
import { join } from "node:path";

import {
  SchemaError,
  loadCollapse,
  loadFit,
  loadGec,
  loadProfile,
  loadQpProfile,
  type FitResult,
} from "./schemas.js";
import { PALETTE, axes, curve, document, legend, makeFrame, marker, referenceLine, type Point } from "./svg.js";

/** Ceiling of E_g/L^2: capacity saturates at L^2/4. */
export const COLLAPSE_CEILING = 0.25;

const finite = (pts: Point[]) => pts.filter((p) => Number.isFinite(p.x) && Number.isFinite(p.y));

function extent(values: number[], padFrac = 0.05): [number, number] {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const pad = (hi - lo || 1) * padFrac;
  return [lo, hi + pad];
}

export function entropyFigure(profilePath: string, ell: number | undefined, qpProfilePath?: string): string {
  const rows = loadProfile(profilePath);
  const ells = [...new Set(rows.map((r) => r.ell))].sort((a, b) => a - b);
  const cut = ell ?? ells[Math.floor(ells.length / 2)];
  if (!ells.includes(cut)) {
    throw new SchemaError(`${profilePath}: no rows with ell = ${cut} (have ${ells[0]}..${ells[ells.length - 1]})`);
  }
  const series = rows.filter((r) => r.ell === cut).map((r) => ({ x: r.t, y: r.S_nats }));
  const entries = [{ label: `exact, block ${cut}`, color: PALETTE[0] }];
  const overlays: { points: Point[]; color: string; dash?: string }[] = [{ points: series, color: PALETTE[0] }];
  if (qpProfilePath && existsSync(qpProfilePath)) {
    const qp = loadQpProfile(qpProfilePath).filter((r) => r.ell === cut);
    if (qp.length > 0) {
      overlays.push({ points: qp.map((r) => ({ x: r.t, y: r.S_finite_nats })), color: PALETTE[1], dash: "5 3" });
      overlays.push({ points: qp.map((r) => ({ x: r.t, y: r.S_scaling_nats })), color: PALETTE[2], dash: "2 3" });
      entries.push(
        { label: "quasiparticle (finite size)", color: PALETTE[1] },
        { label: "quasiparticle (scaling)", color: PALETTE[2] }
      );
    }
  }
  const ys = overlays.flatMap((o) => o.points.map((p) => p.y));
  const frame = makeFrame(extent(series.map((p) => p.x), 0), extent(ys));
  const body = [
    axes(frame, "t", "S (nats)"),
    ...overlays.map((o) => curve(frame, o.points, o.color, { dash: o.dash })),
    legend(frame, entries.map((e, i) => ({ ...e, dash: overlays[i]?.dash }))),
  ].join("\n");
  return document(body, { title: "Block entanglement entropy" });
}

export function gecFigure(gecPath: string): string {
  const rows = loadGec(gecPath);
  const eg = rows.map((r) => ({ x: r.t, y: r.E_g }));
  const upper = rows.map((r) => ({ x: r.t, y: r.E_g_upper }));
  const qp = finite(rows.map((r) => ({ x: r.t, y: r.E_g_qp })));
  // the gate-count bound outruns the capacity fast; cap the axis near the data
  const yMax = 1.3 * Math.max(...eg.map((p) => p.y), ...qp.map((p) => p.y), 1e-9);
  const frame = makeFrame(extent(eg.map((p) => p.x), 0), [0, yMax]);
  const entries: { label: string; color: string; dash?: string }[] = [
    { label: "E_g", color: PALETTE[0] },
    { label: "upper bound", color: PALETTE[1], dash: "6 3" },
  ];
  const parts = [
    axes(frame, "t", "E_g"),
    curve(frame, eg, PALETTE[0]),
    curve(frame, upper.filter((p) => p.y <= yMax), PALETTE[1], { dash: "6 3" }),
  ];
  if (qp.length > 0) {
    parts.push(curve(frame, qp, PALETTE[2], { dash: "2 3" }));
    entries.push({ label: "quasiparticle", color: PALETTE[2], dash: "2 3" });
  }
  parts.push(legend(frame, entries));
  return document(parts.join("\n"), { title: "Entanglement capacity" });
}

export function loglogFigure(gecPath: string, fitPath?: string): string {
  const rows = loadGec(gecPath).filter((r) => r.t > 0 && r.E_g > 0);
  if (rows.length === 0) {
    throw new SchemaError(`${gecPath}: no positive (t, E_g) rows for log axes`);
  }
  const eg = rows.map((r) => ({ x: r.t, y: r.E_g }));
  const frame = makeFrame(extent(eg.map((p) => p.x), 0), extent(eg.map((p) => p.y)), {
    xLog: true,
    yLog: true,
  });
  const parts = [axes(frame, "t", "E_g"), curve(frame, eg, PALETTE[0])];
  const entries: { label: string; color: string; dash?: string }[] = [{ label: "E_g", color: PALETTE[0] }];
  if (fitPath && existsSync(fitPath)) {
    const fit: FitResult = loadFit(fitPath);
    const fitted = [fit.t_min, fit.t_max].map((t) => ({
      x: t,
      y: Math.exp(fit.intercept) * Math.pow(t, fit.gamma),
    }));
    parts.push(curve(frame, fitted, PALETTE[1], { dash: "5 3", width: 2 }));
    entries.push({ label: `t^${fit.gamma.toFixed(3)}`, color: PALETTE[1], dash: "5 3" });
  }
  parts.push(legend(frame, entries));
  return document(parts.join("\n"), { title: "Capacity growth (log-log)" });
}

export function collapseFigure(collapsePath: string): string {
  const rows = loadCollapse(collapsePath);
  const sizes = [...new Set(rows.map((r) => r.L))].sort((a, b) => a - b);
  const frame = makeFrame(extent(rows.map((r) => r.t_over_L), 0), [0, 1.1 * COLLAPSE_CEILING]);
  const parts = [axes(frame, "t / L", "E_g / L^2"), referenceLine(frame, COLLAPSE_CEILING)];
  const entries = sizes.map((L, i) => ({ label: `L = ${L}`, color: PALETTE[i % PALETTE.length] }));
  sizes.forEach((L, i) => {
    const pts = rows.filter((r) => r.L === L).map((r) => ({ x: r.t_over_L, y: r.Eg_over_L2 }));
    parts.push(curve(frame, pts, PALETTE[i % PALETTE.length]));
  });
  parts.push(legend(frame, entries));
  return document(parts.join("\n"), { title: "Data collapse" });
}

/** alpha values are read from file names shaped like alpha_<value>.json. */
export function discoverFits(fitsDir: string): { alpha: number; path: string }[] {
  if (!existsSync(fitsDir)) {
    throw new SchemaError(`fits directory not found: ${fitsDir}`);
  }
  const found = readdirSync(fitsDir)
    .filter((name) => /^alpha_.+\.json$/.test(name))
    .map((name) => ({ alpha: Number(name.slice("alpha_".length, -".json".length)), path: join(fitsDir, name) }))
    .filter((f) => Number.isFinite(f.alpha))
    .sort((a, b) => a.alpha - b.alpha);
  if (found.length === 0) {
    throw new SchemaError(`${fitsDir}: no alpha_<value>.json files`);
  }
  return found;
}

export function exponentsFigure(fitsDir: string): string {
  const fits = discoverFits(fitsDir).map((f) => ({ alpha: f.alpha, fit: loadFit(f.path) }));
  const pts = fits.map((f) => ({ x: f.alpha, y: f.fit.gamma }));
  const frame = makeFrame(extent(pts.map((p) => p.x)), [0, 1.2]);
  const parts = [
    axes(frame, "hopping exponent alpha", "growth exponent gamma"),
    referenceLine(frame, 1.0),
    curve(frame, pts, PALETTE[0]),
    ...pts.map((p) => marker(frame, p, PALETTE[0])),
  ];
  return document(parts.join("\n"), { title: "Growth exponent vs hopping range" });
}

export const FIGURES = ["entropy", "gec", "loglog", "collapse", "exponents"] as const;
export type FigureName = (typeof FIGURES)[number];

/** Render one figure style from the standard run-directory layout. */
export function renderFromRunDir(runDir: string, figure: FigureName, ell?: number): string {
  switch (figure) {
    case "entropy":
      return entropyFigure(join(runDir, "entropy_profile.csv"), ell, join(runDir, "qp_profile.csv"));
    case "gec":
      return gecFigure(join(runDir, "gec.csv"));
    case "loglog": {
      const fit = join(runDir, "fit.json");
      return loglogFigure(join(runDir, "gec.csv"), existsSync(fit) ? fit : undefined);
    }
    case "collapse":
      return collapseFigure(join(runDir, "collapse.csv"));
    case "exponents":
      return exponentsFigure(join(runDir, "fits"));
  }
}
