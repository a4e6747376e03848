/**
 * Column schemas for the simulator's CSV/JSON outputs.
 *
 * Every loader validates against these before any figure code runs, and a
 * mismatch raises SchemaError naming the offending column so the CLI can
 * exit nonzero with a useful message.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";
import { z } from "zod";

export class SchemaError extends Error {}

/** Empty CSV cells (e.g. an absent quasiparticle column) become NaN. */
const numeric = z
  .union([z.string(), z.number(), z.null(), z.undefined()])
  .transform((v): number => (v === "" || v === null || v === undefined ? NaN : Number(v)));

export const gecRow = z.object({
  t: z.coerce.number(),
  E_g: z.coerce.number(),
  E_g_upper: z.coerce.number(),
  E_g_qp: numeric,
});
export type GecRow = z.infer<typeof gecRow>;

export const profileRow = z.object({
  t: z.coerce.number(),
  ell: z.coerce.number().int(),
  S_nats: z.coerce.number(),
});
export type ProfileRow = z.infer<typeof profileRow>;

export const qpProfileRow = z.object({
  t: z.coerce.number(),
  ell: z.coerce.number().int(),
  S_scaling_nats: z.coerce.number(),
  S_finite_nats: z.coerce.number(),
});
export type QpProfileRow = z.infer<typeof qpProfileRow>;

export const collapseRow = z.object({
  L: z.coerce.number().int(),
  t_over_L: z.coerce.number(),
  Eg_over_L2: z.coerce.number(),
});
export type CollapseRow = z.infer<typeof collapseRow>;

export const fitResult = z.object({
  gamma: z.number(),
  intercept: z.number(),
  t_min: z.number(),
  t_max: z.number(),
  r_squared: z.number().min(0).max(1),
});
export type FitResult = z.infer<typeof fitResult>;

function parseCsv(path: string): Record<string, string>[] {
  const text = readFileSync(path, "utf-8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`${path}: ${parsed.errors[0].message}`);
  }
  return parsed.data;
}

function loadRows<S extends z.ZodTypeAny>(path: string, schema: S, columns: string[]): z.output<S>[] {
  const rows = parseCsv(path);
  if (rows.length === 0) {
    throw new SchemaError(`${path}: no data rows`);
  }
  for (const col of columns) {
    if (!(col in rows[0])) {
      throw new SchemaError(`${path}: missing column '${col}'`);
    }
  }
  return rows.map((row, i) => {
    const result = schema.safeParse(row);
    if (!result.success) {
      const issue = result.error.issues[0];
      throw new SchemaError(`${path} row ${i + 1}: column '${issue.path.join(".")}' ${issue.message}`);
    }
    return result.data;
  });
}

export const loadGec = (path: string) => loadRows(path, gecRow, ["t", "E_g", "E_g_upper", "E_g_qp"]);
export const loadProfile = (path: string) => loadRows(path, profileRow, ["t", "ell", "S_nats"]);
export const loadQpProfile = (path: string) =>
  loadRows(path, qpProfileRow, ["t", "ell", "S_scaling_nats", "S_finite_nats"]);
export const loadCollapse = (path: string) => loadRows(path, collapseRow, ["L", "t_over_L", "Eg_over_L2"]);

export function loadFit(path: string): FitResult {
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new SchemaError(`${path}: ${(err as Error).message}`);
  }
  const result = fitResult.safeParse(raw);
  if (!result.success) {
    const issue = result.error.issues[0];
    throw new SchemaError(`${path}: key '${issue.path.join(".")}' ${issue.message}`);
  }
  return result.data;
}
