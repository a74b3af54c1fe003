import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

// Compiled tests live in dist/test/; fixtures stay in test/fixtures/.
const here = dirname(fileURLToPath(import.meta.url));
export const FIXTURES = join(here, "..", "..", "test", "fixtures");

export function readFixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

export function readJson<T>(name: string): T {
  return JSON.parse(readFixture(name)) as T;
}

/**
 * Structural comparison with numeric tolerance: integers and strings must
 * match exactly; floats agree within 1e-9 relative. Cross-implementation
 * float drift comes only from large-sum statistics, never from logic.
 */
export function assertClose(actual: unknown, expected: unknown, path: string): void {
  if (typeof expected === "number" && typeof actual === "number") {
    if (Number.isInteger(expected) && Number.isInteger(actual) && expected === actual) return;
    const tol = 1e-9 * Math.max(1, Math.abs(expected), Math.abs(actual));
    if (Math.abs(actual - expected) <= tol) return;
    throw new Error(`${path}: ${actual} != ${expected}`);
  }
  if (Array.isArray(expected) && Array.isArray(actual)) {
    if (expected.length !== actual.length) {
      throw new Error(`${path}: length ${actual.length} != ${expected.length}`);
    }
    expected.forEach((e, i) => assertClose(actual[i], e, `${path}[${i}]`));
    return;
  }
  if (expected !== null && typeof expected === "object" && actual !== null && typeof actual === "object") {
    const eKeys = Object.keys(expected as object).sort();
    const aKeys = Object.keys(actual as object).sort();
    if (eKeys.join(",") !== aKeys.join(",")) {
      throw new Error(`${path}: keys [${aKeys}] != [${eKeys}]`);
    }
    for (const key of eKeys) {
      assertClose(
        (actual as Record<string, unknown>)[key],
        (expected as Record<string, unknown>)[key],
        `${path}.${key}`,
      );
    }
    return;
  }
  if (actual !== expected) {
    throw new Error(`${path}: ${JSON.stringify(actual)} != ${JSON.stringify(expected)}`);
  }
}
