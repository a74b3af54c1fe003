/**
 * Browser key events to engine key ids. Arrows are captured (and page
 * scroll suppressed) only while the visualization region has focus; Tab
 * always passes through so the normal accessibility order keeps working.
 */

const CAPTURED = new Set([
  "ArrowLeft", "ArrowRight", "ArrowUp", "ArrowDown",
  "2", "0", ".", "Enter", "Escape",
  "j", "J", "d", "D", "g", "G", "a", "A",
]);

export function onKey(event: KeyboardEvent): string | null {
  if (event.altKey || event.ctrlKey || event.metaKey) return null;
  if (!CAPTURED.has(event.key)) return null;
  event.preventDefault();
  if (/^[a-z]$/i.test(event.key)) return event.key.toUpperCase();
  return event.key;
}
