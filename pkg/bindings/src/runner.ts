import { execFileSync } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export type RunOptions = {
  /** Transform tolerance forwarded as --tol. */
  tol?: number;
  /** Truncation hard cap forwarded as --mmax-cap. */
  mmaxCap?: number;
  /** Seed forwarded as --seed (noise baselines). */
  seed?: number;
  /** Command used to invoke the CLI; overrides CPSFM_CLI. */
  cliCommand?: readonly string[];
};

const DEFAULT_CLI = ["python3", "-m", "cpsfm.cli"];

export function cliCommand(options?: RunOptions): readonly string[] {
  if (options?.cliCommand !== undefined && options.cliCommand.length > 0) {
    return options.cliCommand;
  }
  const env = process.env.CPSFM_CLI;
  if (env !== undefined && env.trim() !== "") {
    return env.trim().split(/\s+/);
  }
  return DEFAULT_CLI;
}

function commonFlags(options?: RunOptions): string[] {
  // --flag=value form throughout: plain-space values that start with a minus
  // sign (negative grid entries) would otherwise parse as option names
  const flags: string[] = [];
  if (options?.tol !== undefined) flags.push(`--tol=${options.tol}`);
  if (options?.mmaxCap !== undefined) flags.push(`--mmax-cap=${options.mmaxCap}`);
  if (options?.seed !== undefined) flags.push(`--seed=${options.seed}`);
  return flags;
}

/** Run one CLI subcommand, surfacing its single-line error on failure. */
export function runCli(args: readonly string[], options?: RunOptions): string {
  const [head, ...rest] = cliCommand(options);
  try {
    return execFileSync(head, [...rest, ...args, ...commonFlags(options)], {
      encoding: "utf-8",
      maxBuffer: 1 << 28,
    });
  } catch (err) {
    const stderr = (err as { stderr?: string }).stderr;
    const line = stderr?.trim().split("\n").pop();
    throw new Error(line && line.length > 0 ? line : `cpsfm CLI failed: ${String(err)}`);
  }
}

/** Create a scratch directory, hand it to fn, and always clean it up. */
export function withScratchDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "cpsfm-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}
