// Controller for the live warning: debounces keystrokes, checks
// immediately on post-button hover, and guarantees a verdict is only
// shown for the draft it was computed from.

import type { Verdict } from "./api.js";

export type ClassifyFn = (text: string) => Promise<Verdict>;

export interface ComposerView {
  /** Verdict with label 1 for the current draft. */
  showBanner(verdict: Verdict): void;
  clearBanner(): void;
  /** Service reachability changed; composing is never blocked either way. */
  setOffline(offline: boolean): void;
}

export const DEBOUNCE_MS = 300;

export class ComposerController {
  private draft = "";
  private active = true;
  // bumped on every draft change; an in-flight response with an older
  // sequence number is stale and must be dropped
  private seq = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inFlightSeq: number | null = null;

  constructor(
    private readonly classify: ClassifyFn,
    private readonly view: ComposerView,
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {}

  /** The draft changed; schedule a check after the debounce window. */
  input(draft: string): void {
    this.draft = draft;
    this.seq++;
    this.cancelTimer();
    if (!this.active || draft.trim() === "") {
      this.view.clearBanner();
      return;
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.check();
    }, this.debounceMs);
  }

  /** Hovering the post button bypasses the debounce. */
  hoverPost(): void {
    if (!this.active || this.draft.trim() === "") {
      return;
    }
    this.cancelTimer();
    if (this.inFlightSeq === this.seq) {
      return; // this exact draft is already being checked
    }
    void this.check();
  }

  setActive(on: boolean): void {
    this.active = on;
    if (!on) {
      this.seq++;
      this.cancelTimer();
      this.view.clearBanner();
    }
  }

  dispose(): void {
    this.seq++;
    this.cancelTimer();
  }

  private cancelTimer(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  private async check(): Promise<void> {
    const seq = this.seq;
    this.inFlightSeq = seq;
    try {
      const verdict = await this.classify(this.draft);
      this.view.setOffline(false);
      if (seq !== this.seq || !this.active) {
        return; // draft moved on while we were waiting
      }
      if (verdict.label === 1) {
        this.view.showBanner(verdict);
      } else {
        this.view.clearBanner();
      }
    } catch {
      if (seq === this.seq) {
        this.view.setOffline(true);
      }
    } finally {
      if (this.inFlightSeq === seq) {
        this.inFlightSeq = null;
      }
    }
  }
}
