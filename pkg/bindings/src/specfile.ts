import { readFileSync, writeFileSync } from "node:fs";

/** Immutable handle on a fitted or loaded waveform description. */
export class BoundWaveform {
  readonly order: number;
  readonly durationS: number;
  readonly fmfCoeffs: readonly number[];
  readonly phi0Rad: number;
  readonly label: string | null;

  constructor(fields: {
    order: number;
    durationS: number;
    fmfCoeffs: readonly number[];
    phi0Rad?: number;
    label?: string | null;
  }) {
    if (fields.order !== fields.fmfCoeffs.length) {
      throw new Error(
        `order ${fields.order} does not match ${fields.fmfCoeffs.length} coefficients`,
      );
    }
    this.order = fields.order;
    this.durationS = fields.durationS;
    this.fmfCoeffs = Object.freeze([...fields.fmfCoeffs]);
    this.phi0Rad = fields.phi0Rad ?? 0;
    this.label = fields.label ?? null;
    Object.freeze(this);
  }

  /** Spec-file text in the CLI's own JSON schema. */
  toSpecText(): string {
    const payload: Record<string, unknown> = {
      order: this.order,
      duration_s: this.durationS,
      fmf_coeffs: [...this.fmfCoeffs],
    };
    if (this.phi0Rad !== 0) payload.phi0_rad = this.phi0Rad;
    if (this.label !== null) payload.label = this.label;
    return `${JSON.stringify(payload, null, 2)}\n`;
  }
}

export function parseSpecText(text: string): BoundWaveform {
  const raw: unknown = JSON.parse(text);
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new Error("spec must be a JSON object");
  }
  const record = raw as Record<string, unknown>;
  for (const key of Object.keys(record)) {
    if (!["order", "duration_s", "fmf_coeffs", "phi0_rad", "label"].includes(key)) {
      throw new Error(`unknown field: ${key}`);
    }
  }
  const order = record.order;
  const duration = record.duration_s;
  const coeffs = record.fmf_coeffs;
  if (typeof order !== "number" || !Number.isInteger(order) || order < 1) {
    throw new Error("field order must be a positive integer");
  }
  if (typeof duration !== "number" || duration <= 0) {
    throw new Error("field duration_s must be positive");
  }
  if (!Array.isArray(coeffs) || !coeffs.every((value) => typeof value === "number")) {
    throw new Error("field fmf_coeffs must be a list of numbers");
  }
  return new BoundWaveform({
    order,
    durationS: duration,
    fmfCoeffs: coeffs as number[],
    phi0Rad: typeof record.phi0_rad === "number" ? record.phi0_rad : 0,
    label: typeof record.label === "string" ? record.label : null,
  });
}

export function loadSpecFile(path: string): BoundWaveform {
  return parseSpecText(readFileSync(path, "utf-8"));
}

export function saveSpecFile(waveform: BoundWaveform, path: string): void {
  writeFileSync(path, waveform.toSpecText(), "utf-8");
}
