// Wires the controller to the page. The layout mirrors a familiar
// composer: header, warning banner, text area with a highlight backdrop,
// character counter and a post button.

import { classify, health, DEFAULT_BASE_URL, Verdict } from "./api.js";
import { ComposerController } from "./composer.js";
import { findHighlightRanges, segment } from "./highlights.js";

const MAX_CHARS = 280;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function escapeHtml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function boot(): void {
  const params = new URLSearchParams(window.location.search);
  const baseUrl = params.get("service") ?? DEFAULT_BASE_URL;

  const draft = el<HTMLTextAreaElement>("draft");
  const backdrop = el<HTMLDivElement>("backdrop");
  const banner = el<HTMLDivElement>("banner");
  const counter = el<HTMLSpanElement>("counter");
  const postButton = el<HTMLButtonElement>("post");
  const offlineBadge = el<HTMLSpanElement>("offline");
  const activeToggle = el<HTMLInputElement>("active");
  const status = el<HTMLSpanElement>("status");

  function renderBackdrop(verdict: Verdict | null): void {
    if (!verdict) {
      backdrop.innerHTML = escapeHtml(draft.value);
      return;
    }
    const ranges = findHighlightRanges(draft.value, verdict.matched_terms);
    backdrop.innerHTML = segment(draft.value, ranges)
      .map((part) =>
        part.marked
          ? `<mark>${escapeHtml(part.text)}</mark>`
          : escapeHtml(part.text),
      )
      .join("");
  }

  const controller = new ComposerController(
    (text) => classify(text, baseUrl),
    {
      showBanner(verdict) {
        banner.textContent = `⚠ ${verdict.warning}`;
        banner.hidden = false;
        renderBackdrop(verdict);
      },
      clearBanner() {
        banner.hidden = true;
        renderBackdrop(null);
      },
      setOffline(offline) {
        offlineBadge.hidden = !offline;
      },
    },
  );

  draft.addEventListener("input", () => {
    const length = [...draft.value].length;
    counter.textContent = `${length}/${MAX_CHARS}`;
    counter.classList.toggle("over", length > MAX_CHARS);
    postButton.disabled = length === 0 || length > MAX_CHARS;
    renderBackdrop(null);
    controller.input(draft.value);
  });
  draft.addEventListener("scroll", () => {
    backdrop.scrollTop = draft.scrollTop;
  });

  postButton.addEventListener("mouseenter", () => controller.hoverPost());
  postButton.addEventListener("click", () => {
    // no real posting here; the page only demonstrates the checker
    draft.value = "";
    draft.dispatchEvent(new Event("input"));
  });

  activeToggle.addEventListener("change", () =>
    controller.setActive(activeToggle.checked),
  );

  health(baseUrl)
    .then((doc) => {
      status.textContent = `checker: ${doc.model.kind} model, ${doc.model.leaves} leaves`;
    })
    .catch(() => {
      status.textContent = "checker offline";
      offlineBadge.hidden = false;
    });
}

boot();
