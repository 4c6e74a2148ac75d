import { describe, expect, it } from "vitest";

import { findHighlightRanges, segment } from "../src/highlights.js";

describe("findHighlightRanges", () => {
  it("marks the words behind the matched terms", () => {
    const ranges = findHighlightRanges("Eve gidiyorum", [
      ["feature3", "ev"],
      ["feature6", "gidiyorum"],
    ]);
    expect(ranges).toEqual([
      { start: 0, end: 3 },
      { start: 4, end: 13 },
    ]);
  });

  it("folds Turkish capitals when comparing", () => {
    const ranges = findHighlightRanges("İzmirde denize girdim", [
      ["feature4", "izmir"],
    ]);
    expect(ranges).toEqual([{ start: 0, end: 7 }]);
  });

  it("matches through apostrophes", () => {
    const ranges = findHighlightRanges("Armada'ya geldik", [
      ["feature5", "armada"],
    ]);
    expect(ranges[0]).toEqual({ start: 0, end: 9 });
  });

  it("returns nothing for terms of a stale draft", () => {
    expect(findHighlightRanges("Bugün hava güzel", [["feature3", "ev"]]))
      .toEqual([]);
  });

  it("returns nothing when there are no terms", () => {
    expect(findHighlightRanges("Eve gidiyorum", [])).toEqual([]);
  });
});

describe("segment", () => {
  it("splits the draft around the ranges, preserving every character", () => {
    const draft = "Eve gidiyorum şimdi";
    const ranges = findHighlightRanges(draft, [["feature6", "gidiyorum"]]);
    const parts = segment(draft, ranges);
    expect(parts.map((p) => p.text).join("")).toBe(draft);
    expect(parts.filter((p) => p.marked).map((p) => p.text))
      .toEqual(["gidiyorum"]);
  });

  it("handles an unmarked draft", () => {
    expect(segment("abc", [])).toEqual([{ text: "abc", marked: false }]);
  });
});
