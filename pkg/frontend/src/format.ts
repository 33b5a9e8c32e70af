/** The single place a service-provided score becomes a display string.
 * The UI never computes benefit/difficulty itself; it only formats what the
 * service returned, at the fixed 2-decimal display precision. */
export function formatScore(value: number): string {
  return value.toFixed(2);
}

/** Slider values display at the 0.05-step precision they move in. */
export function formatWeight(value: number): string {
  return value.toFixed(2);
}
