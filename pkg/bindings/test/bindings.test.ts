import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import {
  BoundWaveform,
  analyze,
  fitRidge,
  loadSpecFile,
  saveSpecFile,
} from "../src/index.js";
import { parseResultGrid } from "../src/grid.js";
import { cliCommand } from "../src/runner.js";

const scratch = mkdtempSync(join(tmpdir(), "cpsfm-test-"));
afterAll(() => rmSync(scratch, { recursive: true, force: true }));

function runCliDirect(args: string[]): string {
  const [head, ...rest] = cliCommand();
  return execFileSync(head, [...rest, ...args], { encoding: "utf-8", maxBuffer: 1 << 28 });
}

/** Frequency law sum_n a_n T_n(x) via the Chebyshev recurrence. */
function chebEval(coeffs: readonly number[], x: number): number {
  let b1 = 0;
  let b2 = 0;
  for (let n = coeffs.length - 1; n >= 1; n--) {
    const next = coeffs[n] + 2 * x * b1 - b2;
    b2 = b1;
    b1 = next;
  }
  return coeffs[0] + x * b1 - b2;
}

const TRUTH = new BoundWaveform({
  order: 5,
  durationS: 0.0075,
  fmfCoeffs: [131.110875, -49.236375, -3.7725, 2.3801249999999997, -2.4746249999999997],
  label: "call-a",
});

function ridgeArrays(waveform: BoundWaveform, count: number) {
  const t = new Float64Array(count);
  const f = new Float64Array(count);
  const w = new Float64Array(count);
  for (let i = 0; i < count; i++) {
    const tv = (waveform.durationS * i) / (count - 1);
    const x = (2 * tv) / waveform.durationS - 1;
    t[i] = tv;
    f[i] = (2 / waveform.durationS) * chebEval(waveform.fmfCoeffs, x);
    w[i] = 1;
  }
  return { t, f, w };
}

describe("fitRidge", () => {
  it("recovers an in-model frequency law to machine precision", () => {
    const { t, f, w } = ridgeArrays(TRUTH, 120);
    const fitted = fitRidge(t, f, w, TRUTH.durationS, 4);
    expect(fitted.order).toBe(5);
    for (let i = 0; i < 5; i++) {
      expect(Math.abs(fitted.fmfCoeffs[i] - TRUTH.fmfCoeffs[i])).toBeLessThan(1e-9);
    }
  });

  it("matches a direct CLI fit on the same ridge file bitwise", () => {
    const { t, f, w } = ridgeArrays(TRUTH, 90);
    const rows = ["t_s,f_hz,weight"];
    for (let i = 0; i < t.length; i++) {
      rows.push(`${String(t[i])},${String(f[i])},${String(w[i])}`);
    }
    const ridgePath = join(scratch, "ridge.csv");
    const outPath = join(scratch, "cli-fit.json");
    writeFileSync(ridgePath, `${rows.join("\n")}\n`);
    runCliDirect([
      "fit", ridgePath, "--order", "4",
      "--duration-s", String(TRUTH.durationS), "--out", outPath,
    ]);
    const viaCli = loadSpecFile(outPath);
    const viaBinding = fitRidge(t, f, w, TRUTH.durationS, 4);
    expect(viaBinding.fmfCoeffs).toEqual(viaCli.fmfCoeffs);
    expect(viaBinding.durationS).toBe(viaCli.durationS);
  });

  it("rejects mismatched array lengths", () => {
    expect(() => fitRidge([0, 1], [1], [1, 1], 1, 2)).toThrow(/lengths differ/);
  });

  it("rejects bad orders and durations", () => {
    expect(() => fitRidge([0, 1], [1, 2], [1, 1], 1, 0)).toThrow(/order/);
    expect(() => fitRidge([0, 1], [1, 2], [1, 1], -1, 1)).toThrow(/duration/);
  });

  it("surfaces the CLI's single-line error on degenerate fits", () => {
    expect(() => fitRidge([0, 0], [1, 2], [1, 1], 1, 2)).toThrow(/^error: /);
  });
});

describe("analyze", () => {
  const TONE = new BoundWaveform({ order: 1, durationS: 1, fmfCoeffs: [0] });

  it("acf at zero delay is exactly the unit peak", () => {
    const grid = analyze(TRUTH, "acf", { xi: [0] });
    expect(grid.shape).toEqual([1]);
    expect(Math.abs(grid.re[0] - 1)).toBeLessThan(1e-12);
    expect(Math.abs(grid.im[0])).toBeLessThan(1e-12);
  });

  it("matches the CLI's acf output bitwise", () => {
    const xi: number[] = [];
    for (let i = 0; i < 81; i++) xi.push(-0.4 + i * 0.01);
    const specPath = join(scratch, "acf-fixture.json");
    const outPath = join(scratch, "cli-acf.csv");
    saveSpecFile(TRUTH, specPath);
    runCliDirect(["acf", specPath, `--xi-list=${xi.map(String).join(",")}`, `--out=${outPath}`]);
    const direct = parseResultGrid(readFileSync(outPath, "utf-8"));
    const bound = analyze(TRUTH, "acf", { xi });
    expect(bound.re).toEqual(direct.re);
    expect(bound.im).toEqual(direct.im);
    expect(bound.abs).toEqual(direct.abs);
  });

  it("spectrum of the bare rectangular pulse at dc is 2", () => {
    const grid = analyze(TONE, "spectrum", { g: [0] });
    expect(Math.abs(grid.re[0] - 2)).toBeLessThan(1e-10);
    expect(Math.abs(grid.im[0])).toBeLessThan(1e-10);
  });

  it("matches the CLI's af CSV bitwise on a shared fixture", () => {
    const xi: number[] = [];
    for (let i = 0; i <= 100; i++) xi.push(-0.5 + i * 0.01);
    const nu = [0.95, 1.0, 1.05];

    const specPath = join(scratch, "shared.json");
    const outPath = join(scratch, "cli-af.csv");
    saveSpecFile(TRUTH, specPath);
    runCliDirect([
      "af", specPath,
      `--xi-list=${xi.map(String).join(",")}`,
      `--nu-list=${nu.map(String).join(",")}`,
      `--out=${outPath}`,
    ]);
    const direct = parseResultGrid(readFileSync(outPath, "utf-8"));
    const bound = analyze(TRUTH, "af", { xi, nu });

    expect(bound.shape).toEqual([3, 101]);
    expect(bound.axisNames).toEqual(["nu", "xi"]);
    expect(bound.re).toEqual(direct.re);
    expect(bound.im).toEqual(direct.im);
    expect(bound.abs).toEqual(direct.abs);
    expect(bound.axes[0]).toEqual(direct.axes[0]);
    expect(bound.axes[1]).toEqual(direct.axes[1]);
  });

  it("matches the CLI's spectrum and ccf outputs bitwise", () => {
    const other = new BoundWaveform({
      order: 3,
      durationS: TRUTH.durationS,
      fmfCoeffs: [120.0, -40.0, 5.0],
    });
    const g: number[] = [];
    for (let i = 0; i < 64; i++) g.push(60 + i * 2.25);
    const xi: number[] = [];
    for (let i = 0; i < 41; i++) xi.push(-0.2 + i * 0.01);

    const aPath = join(scratch, "pa.json");
    const bPath = join(scratch, "pb.json");
    saveSpecFile(TRUTH, aPath);
    saveSpecFile(other, bPath);

    const specOut = join(scratch, "cli-spec.csv");
    runCliDirect(["spectrum", aPath, `--g-list=${g.map(String).join(",")}`, `--out=${specOut}`]);
    const directSpec = parseResultGrid(readFileSync(specOut, "utf-8"));
    const boundSpec = analyze(TRUTH, "spectrum", { g });
    expect(boundSpec.re).toEqual(directSpec.re);
    expect(boundSpec.im).toEqual(directSpec.im);

    const ccfOut = join(scratch, "cli-ccf.csv");
    runCliDirect(["ccf", aPath, bPath, `--xi-list=${xi.map(String).join(",")}`, `--out=${ccfOut}`]);
    const directCcf = parseResultGrid(readFileSync(ccfOut, "utf-8"));
    const boundCcf = analyze(TRUTH, "ccf", { xi, other });
    expect(boundCcf.re).toEqual(directCcf.re);
    expect(boundCcf.im).toEqual(directCcf.im);
  });

  it("validates kinds and grids before spawning anything", () => {
    expect(() => analyze(TRUTH, "ccf", { xi: [0] })).toThrow(/second waveform/);
    expect(() => analyze(TRUTH, "spectrum", {})).toThrow(/g grid/);
    expect(() => analyze(TRUTH, "af", { xi: [0] })).toThrow(/nu grid/);
  });
});

describe("spec files", () => {
  it("round-trips through save and load", () => {
    const path = join(scratch, "roundtrip.json");
    saveSpecFile(TRUTH, path);
    const back = loadSpecFile(path);
    expect(back.fmfCoeffs).toEqual(TRUTH.fmfCoeffs);
    expect(back.durationS).toBe(TRUTH.durationS);
    expect(back.label).toBe(TRUTH.label);
  });

  it("exposes read-only views", () => {
    expect(Object.isFrozen(TRUTH)).toBe(true);
    expect(Object.isFrozen(TRUTH.fmfCoeffs)).toBe(true);
  });

  it("rejects inconsistent handles", () => {
    expect(
      () => new BoundWaveform({ order: 2, durationS: 1, fmfCoeffs: [1] }),
    ).toThrow(/order/);
  });
});
