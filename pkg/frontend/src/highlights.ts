// Locate triggering terms in the draft so the view can mark them.
// Matching here is a display heuristic only; when a term cannot be
// found the caller just renders the banner without highlights.

export interface Range {
  start: number;
  end: number;
}

// Turkish pair first, then the locale-independent lowercase the service
// applies on its side.
function fold(s: string): string {
  return s.replace(/İ/g, "i").replace(/I/g, "ı").toLowerCase();
}

const WORD_RE = /[\p{L}\p{N}]+(?:['’][\p{L}\p{N}]+)*/gu;

/**
 * Words in the draft whose folded form equals or extends one of the
 * matched terms. Terms from a stale verdict simply match nothing.
 */
export function findHighlightRanges(
  draft: string,
  matchedTerms: [string, string][],
): Range[] {
  const terms = matchedTerms.map(([, term]) => fold(term));
  const ranges: Range[] = [];
  for (const hit of draft.matchAll(WORD_RE)) {
    const word = fold(hit[0]).replace(/['’]/g, "");
    if (terms.some((t) => word === t || word.startsWith(t))) {
      ranges.push({ start: hit.index!, end: hit.index! + hit[0].length });
    }
  }
  return ranges;
}

/** Split the draft into plain and highlighted segments, in order. */
export function segment(
  draft: string,
  ranges: Range[],
): { text: string; marked: boolean }[] {
  const parts: { text: string; marked: boolean }[] = [];
  let cursor = 0;
  for (const { start, end } of ranges) {
    if (start > cursor) {
      parts.push({ text: draft.slice(cursor, start), marked: false });
    }
    parts.push({ text: draft.slice(start, end), marked: true });
    cursor = end;
  }
  if (cursor < draft.length) {
    parts.push({ text: draft.slice(cursor), marked: false });
  }
  return parts;
}
