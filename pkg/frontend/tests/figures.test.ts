import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
  COLLAPSE_CEILING,
  FIGURES,
  collapseFigure,
  discoverFits,
  entropyFigure,
  exponentsFigure,
  gecFigure,
  loglogFigure,
  renderFromRunDir,
} from "../src/figures.js";
import { SchemaError } from "../src/schemas.js";
import { makeFrame } from "../src/svg.js";

const RUN = fileURLToPath(new URL("./fixtures/run", import.meta.url));

describe("acceptance: figure reproduction", () => {
  it("renders all five figure styles from the reference run directory", () => {
    for (const figure of FIGURES) {
      const svg = renderFromRunDir(RUN, figure);
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg).toContain("</svg>");
    }
  });

  it("places the collapse reference line at 0.25", () => {
    const svg = collapseFigure(join(RUN, "collapse.csv"));
    const match = svg.match(/<line class="reference"[^>]*y1="([\d.]+)"/);
    expect(match).not.toBeNull();
    // same frame geometry as the figure: y in [0, 1.1 * ceiling]
    const frame = makeFrame([0, 1], [0, 1.1 * COLLAPSE_CEILING]);
    // SVG coordinates are emitted with 6 significant digits
    expect(Number(match![1])).toBeCloseTo(frame.y(0.25), 3);
    expect(COLLAPSE_CEILING).toBe(0.25);
  });
});

describe("entropy figure", () => {
  it("overlays both quasiparticle variants when qp_profile.csv is present", () => {
    const svg = entropyFigure(join(RUN, "entropy_profile.csv"), 20, join(RUN, "qp_profile.csv"));
    expect(svg).toContain("quasiparticle (finite size)");
    expect(svg).toContain("quasiparticle (scaling)");
  });

  it("rejects a cut position absent from the file", () => {
    expect(() => entropyFigure(join(RUN, "entropy_profile.csv"), 400)).toThrow(/ell = 400/);
  });
});

describe("gec figure", () => {
  it("draws the quasiparticle curve when the column is populated", () => {
    const svg = gecFigure(join(RUN, "gec.csv"));
    expect(svg).toContain("upper bound");
    expect(svg).toContain("quasiparticle");
  });
});

describe("loglog figure", () => {
  it("annotates the fitted power law when fit.json exists", () => {
    const svg = loglogFigure(join(RUN, "gec.csv"), join(RUN, "fits", "alpha_0.5.json"));
    expect(svg).toMatch(/t\^0\.4/);
  });
});

describe("exponents figure", () => {
  it("discovers alpha values from file names in ascending order", () => {
    const fits = discoverFits(join(RUN, "fits"));
    expect(fits.map((f) => f.alpha)).toEqual([0.5, 3, 5]);
  });

  it("renders one marker per fit", () => {
    const svg = exponentsFigure(join(RUN, "fits"));
    expect((svg.match(/<circle/g) ?? []).length).toBe(3);
  });

  it("fails with a clear message when the directory is missing", () => {
    expect(() => exponentsFigure(join(RUN, "nope"))).toThrow(SchemaError);
  });
});

describe("determinism", () => {
  it("repeated renders are byte-identical", () => {
    for (const figure of FIGURES) {
      expect(renderFromRunDir(RUN, figure)).toBe(renderFromRunDir(RUN, figure));
    }
  });
});
