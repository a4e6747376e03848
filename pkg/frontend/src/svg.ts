/**
 * Minimal deterministic SVG assembly on top of d3-scale / d3-shape.
 *
 * Figures are built server-side as plain strings (no DOM), so output is
 * byte-stable for fixed inputs.
 */

import { scaleLinear, scaleLog, type ScaleContinuousNumeric } from "d3-scale";
import { line as d3line } from "d3-shape";

export interface Point {
  x: number;
  y: number;
}

export type Scale = ScaleContinuousNumeric<number, number>;

export interface Frame {
  x: Scale;
  y: Scale;
  left: number;
  top: number;
  width: number;
  height: number;
}

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

const fmt = (v: number) => (Math.abs(v) < 1e-12 ? "0" : Number(v.toPrecision(6)).toString());

export function makeFrame(
  xDomain: [number, number],
  yDomain: [number, number],
  opts: { left?: number; top?: number; width?: number; height?: number; xLog?: boolean; yLog?: boolean } = {}
): Frame {
  const { left = 60, top = 20, width = 480, height = 320, xLog = false, yLog = false } = opts;
  const x = (xLog ? scaleLog() : scaleLinear()).domain(xDomain).range([left, left + width]);
  const y = (yLog ? scaleLog() : scaleLinear()).domain(yDomain).range([top + height, top]);
  return { x, y, left, top, width, height };
}

export function pathFor(frame: Frame, points: Point[]): string {
  const gen = d3line<Point>()
    .x((p) => frame.x(p.x))
    .y((p) => frame.y(p.y))
    .defined((p) => Number.isFinite(p.x) && Number.isFinite(p.y));
  return gen(points) ?? "";
}

export function curve(frame: Frame, points: Point[], color: string, opts: { dash?: string; width?: number } = {}): string {
  const dash = opts.dash ? ` stroke-dasharray="${opts.dash}"` : "";
  return `<path d="${pathFor(frame, points)}" fill="none" stroke="${color}" stroke-width="${opts.width ?? 1.5}"${dash}/>`;
}

export function marker(frame: Frame, p: Point, color: string, r = 3): string {
  return `<circle cx="${fmt(frame.x(p.x))}" cy="${fmt(frame.y(p.y))}" r="${r}" fill="${color}"/>`;
}

/** Horizontal reference line across the frame at data value y. */
export function referenceLine(frame: Frame, y: number, color = "#555", dash = "4 3"): string {
  const py = fmt(frame.y(y));
  return (
    `<line class="reference" x1="${frame.left}" x2="${frame.left + frame.width}" ` +
    `y1="${py}" y2="${py}" stroke="${color}" stroke-dasharray="${dash}"/>`
  );
}

export function axes(frame: Frame, xLabel: string, yLabel: string): string {
  const { left, top, width, height, x, y } = frame;
  const bottom = top + height;
  const parts: string[] = [
    `<line x1="${left}" y1="${bottom}" x2="${left + width}" y2="${bottom}" stroke="#000"/>`,
    `<line x1="${left}" y1="${top}" x2="${left}" y2="${bottom}" stroke="#000"/>`,
  ];
  for (const tick of x.ticks(6)) {
    const px = fmt(x(tick));
    parts.push(`<line x1="${px}" y1="${bottom}" x2="${px}" y2="${bottom + 4}" stroke="#000"/>`);
    parts.push(`<text x="${px}" y="${bottom + 16}" font-size="10" text-anchor="middle">${fmt(tick)}</text>`);
  }
  for (const tick of y.ticks(6)) {
    const py = fmt(y(tick));
    parts.push(`<line x1="${left - 4}" y1="${py}" x2="${left}" y2="${py}" stroke="#000"/>`);
    parts.push(`<text x="${left - 7}" y="${py}" font-size="10" text-anchor="end" dominant-baseline="middle">${fmt(tick)}</text>`);
  }
  parts.push(
    `<text x="${left + width / 2}" y="${bottom + 32}" font-size="12" text-anchor="middle">${xLabel}</text>`,
    `<text x="${left - 42}" y="${top + height / 2}" font-size="12" text-anchor="middle" ` +
      `transform="rotate(-90 ${left - 42} ${top + height / 2})">${yLabel}</text>`
  );
  return parts.join("\n");
}

export function legend(frame: Frame, entries: { label: string; color: string; dash?: string }[]): string {
  const x0 = frame.left + 10;
  return entries
    .map((e, i) => {
      const y0 = frame.top + 14 + 16 * i;
      const dash = e.dash ? ` stroke-dasharray="${e.dash}"` : "";
      return (
        `<line x1="${x0}" x2="${x0 + 22}" y1="${y0}" y2="${y0}" stroke="${e.color}" stroke-width="2"${dash}/>` +
        `<text x="${x0 + 28}" y="${y0 + 4}" font-size="11">${e.label}</text>`
      );
    })
    .join("\n");
}

export function document(body: string, opts: { width?: number; height?: number; title?: string } = {}): string {
  const { width = 580, height = 400, title = "" } = opts;
  const caption = title
    ? `<text x="${width / 2}" y="14" font-size="13" text-anchor="middle" font-weight="bold">${title}</text>\n`
    : "";
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n${caption}${body}\n</svg>\n`
  );
}
