/**
 * Array-in/array-out bindings for the cpsfm waveform toolkit.
 *
 * These bindings hold no numerics: every operation marshals arrays into the
 * CLI's file formats, invokes it, and parses the answer back, so values are
 * bitwise-identical to what the CLI itself produces.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { numberList, parseResultGrid, type ComplexGrid } from "./grid.js";
import { runCli, withScratchDir, type RunOptions } from "./runner.js";
import { BoundWaveform, loadSpecFile, parseSpecText, saveSpecFile } from "./specfile.js";

export { BoundWaveform, loadSpecFile, saveSpecFile, parseSpecText };
export type { ComplexGrid, RunOptions };

export type AnalyzeKind = "spectrum" | "acf" | "ccf" | "af";

export type AnalyzeGrids = {
  /** Normalized frequencies (spectrum). */
  g?: ArrayLike<number>;
  /** Normalized delays (acf, ccf, af). */
  xi?: ArrayLike<number>;
  /** Doppler scale factors (af). */
  nu?: ArrayLike<number>;
  /** Second waveform for the cross kinds. */
  other?: BoundWaveform;
};

function requireGrid(
  grids: AnalyzeGrids,
  key: "g" | "xi" | "nu",
  kind: AnalyzeKind,
): ArrayLike<number> {
  const grid = grids[key];
  if (grid === undefined || grid.length === 0) {
    throw new Error(`${kind} needs a non-empty ${key} grid`);
  }
  return grid;
}

/**
 * Fit ridge samples (seconds, hertz, weights) to a waveform of the given
 * frequency-law order over a declared duration.
 */
export function fitRidge(
  tS: ArrayLike<number>,
  fHz: ArrayLike<number>,
  weight: ArrayLike<number>,
  durationS: number,
  order: number,
  options?: RunOptions,
): BoundWaveform {
  if (tS.length !== fHz.length || tS.length !== weight.length) {
    throw new Error(
      `array lengths differ: t ${tS.length}, f ${fHz.length}, weight ${weight.length}`,
    );
  }
  if (!Number.isInteger(order) || order < 1) {
    throw new Error("order must be a positive integer");
  }
  if (!(durationS > 0)) {
    throw new Error("durationS must be positive");
  }
  return withScratchDir((dir) => {
    const ridgePath = join(dir, "ridge.csv");
    const outPath = join(dir, "fit.json");
    const rows = ["t_s,f_hz,weight"];
    for (let i = 0; i < tS.length; i++) {
      rows.push(`${String(tS[i])},${String(fHz[i])},${String(weight[i])}`);
    }
    writeFileSync(ridgePath, `${rows.join("\n")}\n`, "utf-8");
    runCli(
      ["fit", ridgePath, `--order=${order}`, `--duration-s=${durationS}`,
       `--out=${outPath}`],
      options,
    );
    return loadSpecFile(outPath);
  });
}

/**
 * Evaluate one transform of a bound waveform on explicit grids.
 *
 * spectrum needs `g`; acf needs `xi`; ccf needs `xi` and `other`; af needs
 * `xi` and `nu` (plus optionally `other` for the cross version).
 */
export function analyze(
  waveform: BoundWaveform,
  kind: AnalyzeKind,
  grids: AnalyzeGrids,
  options?: RunOptions,
): ComplexGrid {
  return withScratchDir((dir) => {
    const specPath = join(dir, "a.json");
    const outPath = join(dir, "grid.csv");
    saveSpecFile(waveform, specPath);

    const args: string[] = [];
    switch (kind) {
      case "spectrum":
        args.push("spectrum", specPath, `--g-list=${numberList(requireGrid(grids, "g", kind))}`);
        break;
      case "acf":
        args.push("acf", specPath, `--xi-list=${numberList(requireGrid(grids, "xi", kind))}`);
        break;
      case "ccf": {
        if (grids.other === undefined) {
          throw new Error("ccf needs a second waveform in grids.other");
        }
        const otherPath = join(dir, "b.json");
        saveSpecFile(grids.other, otherPath);
        args.push("ccf", specPath, otherPath,
                  `--xi-list=${numberList(requireGrid(grids, "xi", kind))}`);
        break;
      }
      case "af": {
        args.push("af", specPath);
        if (grids.other !== undefined) {
          const otherPath = join(dir, "b.json");
          saveSpecFile(grids.other, otherPath);
          args.push(otherPath);
        }
        args.push(`--xi-list=${numberList(requireGrid(grids, "xi", kind))}`);
        args.push(`--nu-list=${numberList(requireGrid(grids, "nu", kind))}`);
        break;
      }
      default:
        throw new Error(`unknown analyze kind ${String(kind)}`);
    }
    args.push(`--out=${outPath}`);
    runCli(args, options);
    return parseResultGrid(readFileSync(outPath, "utf-8"));
  });
}
