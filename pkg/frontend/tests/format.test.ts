import { describe, expect, it } from "vitest";

import { describeParams, sig } from "../src/format.js";

describe("sig", () => {
  it("keeps six significant digits by default", () => {
    expect(sig(1.0986122886681098)).toBe("1.09861");
    expect(sig(0.2689414213699951)).toBe("0.268941");
  });

  it("trims trailing zeros without losing integers", () => {
    expect(sig(0.25)).toBe("0.25");
    expect(sig(869)).toBe("869");
    expect(sig(0)).toBe("0");
  });

  it("respects an explicit digit count", () => {
    expect(sig(0.2689414213699951, 3)).toBe("0.269");
  });

  it("passes non-finite values through", () => {
    expect(sig(Infinity)).toBe("Infinity");
  });
});

describe("describeParams", () => {
  it("names only the parameters the design carries", () => {
    expect(describeParams({ p: 0.27, p1: null, p2: null, pi_y: null })).toBe(
      "p = 0.27",
    );
    expect(
      describeParams({ p: null, p1: 0.33, p2: 0.25, pi_y: null }),
    ).toBe("p1 = 0.33, p2 = 0.25");
    expect(
      describeParams({ p: 0.4, p1: null, p2: null, pi_y: 0.6 }),
    ).toBe("p = 0.4, pi_y = 0.6");
  });
});
