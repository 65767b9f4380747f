export type ComplexGrid = {
  /** Axis names in storage order (last axis varies fastest). */
  axisNames: readonly string[];
  /** Axis sample vectors, parallel to axisNames. */
  axes: readonly Float64Array[];
  /** Row-major flattened components, exactly as the CLI printed them. */
  re: Float64Array;
  im: Float64Array;
  abs: Float64Array;
  shape: readonly number[];
};

/** Parse a result-grid CSV (axis columns, then re,im,abs) into typed arrays. */
export function parseResultGrid(text: string): ComplexGrid {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length < 2) {
    throw new Error("result grid CSV has no data rows");
  }
  const header = lines[0].split(",");
  if (header.slice(-3).join(",") !== "re,im,abs") {
    throw new Error("result grid CSV must end with columns re,im,abs");
  }
  const axisNames = header.slice(0, -3);
  if (axisNames.length === 0) {
    throw new Error("result grid CSV has no axis columns");
  }

  const rows = lines.length - 1;
  const columns = axisNames.map(() => new Float64Array(rows));
  const re = new Float64Array(rows);
  const im = new Float64Array(rows);
  const abs = new Float64Array(rows);
  for (let i = 0; i < rows; i++) {
    const cells = lines[i + 1].split(",");
    for (let a = 0; a < axisNames.length; a++) {
      columns[a][i] = Number(cells[a]);
    }
    re[i] = Number(cells[cells.length - 3]);
    im[i] = Number(cells[cells.length - 2]);
    abs[i] = Number(cells[cells.length - 1]);
  }

  // unique axis values in first-appearance order (row-major over last axis)
  const axes = columns.map((column) => {
    const seen = new Set<number>();
    const uniq: number[] = [];
    for (const value of column) {
      if (!seen.has(value)) {
        seen.add(value);
        uniq.push(value);
      }
    }
    return Float64Array.from(uniq);
  });
  return { axisNames, axes, re, im, abs, shape: axes.map((axis) => axis.length) };
}

/** Shortest round-trip decimal text for a grid of numbers, CLI-list form. */
export function numberList(values: ArrayLike<number>): string {
  return Array.from(values, (value) => String(value)).join(",");
}
