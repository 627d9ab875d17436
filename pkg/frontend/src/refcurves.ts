/** Reference spacing densities and the fitted tail model. */

export function poissonDensity(x: number): number {
  return Math.exp(-x);
}

export function wignerDensity(x: number): number {
  const g2 = Math.PI / 4;
  return 2 * g2 * x * Math.exp(-g2 * x * x);
}

export function tailModel(fit: { mu: number; amplitude: number; rate: number }) {
  return (x: number) => fit.amplitude * Math.exp(-fit.rate * Math.pow(x, fit.mu));
}
