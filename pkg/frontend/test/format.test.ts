import assert from "node:assert/strict";
import { test } from "node:test";

import { formatG } from "../src/engine/format.js";
import { readJson } from "./fixtures.js";

interface Sample {
  value: number;
  g: string;
}

test("formatG matches reference %g output on every exported sample", () => {
  const samples = readJson<Sample[]>("format_samples.json");
  assert.ok(samples.length > 100);
  for (const { value, g } of samples) {
    assert.equal(formatG(value), g, `formatG(${value})`);
  }
});

test("formatG handles signed zero and specials", () => {
  assert.equal(formatG(0), "0");
  assert.equal(formatG(-0), "-0");
  assert.equal(formatG(Infinity), "inf");
  assert.equal(formatG(-Infinity), "-inf");
  assert.equal(formatG(NaN), "nan");
});
