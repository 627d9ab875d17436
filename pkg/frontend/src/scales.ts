/** Linear and log10 axis scales with deterministic tick generation. */

export interface Tick {
  value: number;
  label: string;
}

export interface Scale {
  map(v: number): number;
  domain: [number, number];
  range: [number, number];
  log: boolean;
  ticks(): Tick[];
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) {
    const exp = Math.floor(Math.log10(a));
    const mant = v / 10 ** exp;
    const m = Math.round(mant * 100) / 100;
    return m === 1 ? `1e${exp}` : m === -1 ? `-1e${exp}` : `${m}e${exp}`;
  }
  return String(Math.round(v * 1e6) / 1e6);
}

function linearTicks(lo: number, hi: number, target = 5): Tick[] {
  const span = hi - lo;
  if (span <= 0) return [{ value: lo, label: fmtTick(lo) }];
  const rawStep = span / target;
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (rawStep <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const out: Tick[] = [];
  let v = Math.ceil(lo / step) * step;
  for (; v <= hi + step * 1e-9; v += step) {
    const snapped = Math.abs(v) < step * 1e-9 ? 0 : v;
    out.push({ value: snapped, label: fmtTick(snapped) });
  }
  return out;
}

function logTicks(lo: number, hi: number): Tick[] {
  const out: Tick[] = [];
  const eLo = Math.ceil(Math.log10(lo) - 1e-9);
  const eHi = Math.floor(Math.log10(hi) + 1e-9);
  for (let e = eLo; e <= eHi; e++) {
    out.push({ value: 10 ** e, label: `1e${e}` });
  }
  if (out.length <= 1) {
    // under a decade of span: fall back to linear ticks on the raw values
    return linearTicks(lo, hi, 4);
  }
  return out;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = d1 === d0 ? 0 : (r1 - r0) / (d1 - d0);
  return {
    domain,
    range,
    log: false,
    map: (v) => r0 + (v - d0) * k,
    ticks: () => linearTicks(d0, d1),
  };
}

export function log10Scale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) throw new Error(`log scale needs a positive domain, got [${d0}, ${d1}]`);
  const [r0, r1] = range;
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const k = l1 === l0 ? 0 : (r1 - r0) / (l1 - l0);
  return {
    domain,
    range,
    log: true,
    map: (v) => r0 + (Math.log10(v) - l0) * k,
    ticks: () => logTicks(d0, d1),
  };
}
