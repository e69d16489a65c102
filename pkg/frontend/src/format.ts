/** Presentation helpers shared by the overview and detail views. */

/**
 * Round a score half-up to two decimals and render it at fixed width,
 * e.g. 0.5505 -> "0.55", 0.615 -> "0.62", 1 -> "1.00".
 *
 * The epsilon compensates for binary floats sitting a hair below a
 * decimal .005 boundary; served scores lie in [0, 1], where the float
 * representation error is many orders of magnitude smaller than 1e-9.
 */
export function formatScore(score: number): string {
  return (Math.round(score * 100 + 1e-9) / 100).toFixed(2);
}

/**
 * Red row highlight whose opacity is exactly the served intensity
 * (clamped to [0, 1]), so stronger conflicts read as deeper red.
 */
export function intensityBackground(intensity: number | undefined): string {
  if (intensity === undefined || intensity <= 0) {
    return "transparent";
  }
  const alpha = Math.min(1, intensity);
  return `rgba(220, 53, 69, ${alpha})`;
}

/** CSS class for the four discrete quartile color bands. */
export function bandClass(quartile: string): string {
  return `band-${quartile.toLowerCase()}`;
}
