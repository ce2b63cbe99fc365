/**
 * Golden-vector suite definitions and CSV emission.
 *
 * Every value is computed twice, at the base precision and at doubled
 * precision; generation aborts unless the two agree to 1e-25 relative.  The
 * emitted row carries the high-precision value at 30 significant digits.
 */

import { Fx, relDiff } from "./fixed";
import { Frac, SpectrumGroup, partialFractions } from "./rational";
import { besselJ0, besselK, lnGamma } from "./special";
import { kdistCdf, meijerCapacity } from "./quadrature";

export const BASE_DIGITS = 40;
const STABILITY = 1e-25;

export interface GoldenRow {
  function: string;
  parameters: string;
  argument: string;
  value: string;
  precision: string;
  method: string;
}

function stable(name: string, compute: (digits: number) => Fx): Fx {
  const lo = compute(BASE_DIGITS);
  const hi = compute(2 * BASE_DIGITS);
  const d = Math.max(lo.d, hi.d);
  const drift = relDiff(lo.rescale(d), hi.rescale(d));
  if (drift > STABILITY) {
    throw new Error(`${name}: precision doubling moved the value by ${drift}`);
  }
  return hi;
}

function row(fn: string, params: string, arg: string, value: Fx, method: string): GoldenRow {
  return {
    function: fn,
    parameters: params,
    argument: arg,
    value: value.toSci(30),
    precision: String(2 * BASE_DIGITS),
    method,
  };
}

const J0_ARGS = [
  "0.1",
  "0.5",
  "0.9424777960769379",
  "1.0",
  "2.0",
  "3.7699111843077517",
  "5.0",
  "10.0",
  "40.0",
];

const K_ARGS: Array<[number, string]> = [
  [0, "0.5"],
  [0, "2.0"],
  [0, "50.0"],
  [1, "0.01"],
  [1, "2.0"],
  [2, "0.01"],
  [2, "1.0"],
  [5, "1.0"],
  [10, "20.0"],
  [25, "2.0"],
  [36, "10.0"],
  [40, "100.0"],
  [12, "350.0"],
  [3, "600.0"],
  [64, "0.001"],
  [64, "600.0"],
];

const GAMMA_ARGS = ["0.5", "5.0", "7.5", "36.0", "100.5", "200.0"];

export const SPECTRA: Record<string, SpectrumGroup[]> = {
  "3:2|1:1": [
    { lambda: 3, mult: 2 },
    { lambda: 1, mult: 1 },
  ],
  "2:1|1:1": [
    { lambda: 2, mult: 1 },
    { lambda: 1, mult: 1 },
  ],
  "5:2|2:3|1:1": [
    { lambda: 5, mult: 2 },
    { lambda: 2, mult: 3 },
    { lambda: 1, mult: 1 },
  ],
  "4:1|3:1|2:1|1:1": [
    { lambda: 4, mult: 1 },
    { lambda: 3, mult: 1 },
    { lambda: 2, mult: 1 },
    { lambda: 1, mult: 1 },
  ],
};

const MIXTURE_POINTS: Array<[string, string[]]> = [
  ["1:1", ["1.0"]],
  ["1:25", ["1.0", "25.0"]],
  ["2:1|1:1", ["1.0"]],
  ["3:2|1:1", ["0.5", "3.0", "10.0"]],
  ["5:2|2:3|1:1", ["1.0", "20.0"]],
];

const MEIJER_ARGS: Array<[number, string]> = [
  [1, "1.0"],
  [1, "10.0"],
  [2, "5.0"],
  [5, "100.0"],
  [25, "25.0"],
  [36, "1000000.0"],
];

function spectrumGroups(spec: string): SpectrumGroup[] {
  const known = SPECTRA[spec];
  if (known) return known;
  return spec.split("|").map((part) => {
    const [lam, mult] = part.split(":");
    return { lambda: Number(lam), mult: Number(mult) };
  });
}

export function besselSuite(): GoldenRow[] {
  const rows: GoldenRow[] = [];
  for (const arg of J0_ARGS) {
    const v = stable(`j0(${arg})`, (d) => besselJ0(Fx.parse(arg, d), d));
    rows.push(row("j0", "", arg, v, "series"));
  }
  for (const [nu, arg] of K_ARGS) {
    const v = stable(`K_${nu}(${arg})`, (d) => besselK(nu, Fx.parse(arg, d), d));
    rows.push(row("k_nu", `nu=${nu}`, arg, v, "series"));
  }
  return rows;
}

export function gammaSuite(): GoldenRow[] {
  return GAMMA_ARGS.map((arg) => {
    const v = stable(`lnGamma(${arg})`, (d) => lnGamma(Number(arg), d));
    return row("ln_gamma", "", arg, v, "exact-factorial+ln");
  });
}

export function coefficientsSuite(): GoldenRow[] {
  const rows: GoldenRow[] = [];
  for (const [spec, groups] of Object.entries(SPECTRA)) {
    const pf = partialFractions(groups); // throws unless the exact sum is one
    const keys = Array.from(pf.keys()).sort((a, b) => {
      const [ia, ka] = a.split(",").map(Number);
      const [ib, kb] = b.split(",").map(Number);
      return ia - ib || ka - kb;
    });
    for (const key of keys) {
      const c = pf.get(key) as Frac;
      rows.push(row("pf_coeff", `spectrum=${spec}`, key, c.toFx(2 * BASE_DIGITS), "rational"));
    }
  }
  return rows;
}

export function mixtureCdfSuite(): GoldenRow[] {
  const rows: GoldenRow[] = [];
  for (const [spec, gains] of MIXTURE_POINTS) {
    const groups = spectrumGroups(spec);
    const pf =
      groups.length > 1
        ? partialFractions(groups)
        : new Map([[`1,${groups[0].mult}`, Frac.int(1)]]);
    for (const g of gains) {
      const v = stable(`F(${spec};${g})`, (d) => {
        let total = Fx.int(0n, d);
        for (const [key, c] of pf.entries()) {
          const [i, k] = key.split(",").map(Number);
          const lam = BigInt(groups[i - 1].lambda);
          total = total.add(c.toFx(d).mul(kdistCdf(k, lam, Fx.parse(g, d), d)));
        }
        return total;
      });
      rows.push(row("mixture_cdf", `spectrum=${spec}`, g, v, "series"));
    }
  }
  return rows;
}

export function meijerSuite(): GoldenRow[] {
  return MEIJER_ARGS.map(([k, arg]) => {
    const v = stable(`G(k=${k},${arg})`, (d) => meijerCapacity(k, Fx.parse(arg, d), d));
    return row("meijer_g_14_42", `k=${k}`, arg, v, "de-quadrature");
  });
}

export function toCsv(rows: GoldenRow[]): string {
  const quote = (s: string) => (s.includes(",") ? `"${s}"` : s);
  const lines = ["function,parameters,argument,value,precision,method"];
  for (const r of rows) {
    lines.push(
      [r.function, r.parameters, quote(r.argument), r.value, r.precision, r.method].join(",")
    );
  }
  return lines.join("\n") + "\n";
}

export const SUITES: Record<string, () => GoldenRow[]> = {
  bessel: besselSuite,
  gamma: gammaSuite,
  coefficients: coefficientsSuite,
  mixture_cdf: mixtureCdfSuite,
  meijer: meijerSuite,
};
