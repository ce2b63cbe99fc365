/** Exact rational arithmetic for the partial-fraction coefficient suite. */

import { Fx } from "./fixed";

function gcd(a: bigint, b: bigint): bigint {
  a = a < 0n ? -a : a;
  b = b < 0n ? -b : b;
  while (b !== 0n) {
    [a, b] = [b, a % b];
  }
  return a;
}

export class Frac {
  readonly num: bigint;
  readonly den: bigint;

  constructor(num: bigint, den: bigint) {
    if (den === 0n) throw new Error("zero denominator");
    if (den < 0n) {
      num = -num;
      den = -den;
    }
    const g = gcd(num, den);
    this.num = g === 0n ? 0n : num / g;
    this.den = g === 0n ? 1n : den / g;
  }

  static int(n: bigint | number): Frac {
    return new Frac(BigInt(n), 1n);
  }

  add(o: Frac): Frac {
    return new Frac(this.num * o.den + o.num * this.den, this.den * o.den);
  }

  sub(o: Frac): Frac {
    return new Frac(this.num * o.den - o.num * this.den, this.den * o.den);
  }

  mul(o: Frac): Frac {
    return new Frac(this.num * o.num, this.den * o.den);
  }

  div(o: Frac): Frac {
    if (o.num === 0n) throw new Error("division by zero");
    return new Frac(this.num * o.den, this.den * o.num);
  }

  neg(): Frac {
    return new Frac(-this.num, this.den);
  }

  powInt(e: number): Frac {
    if (e < 0) return Frac.int(1).div(this.powInt(-e));
    let acc = Frac.int(1);
    for (let i = 0; i < e; i += 1) acc = acc.mul(this);
    return acc;
  }

  equals(o: Frac): boolean {
    return this.num === o.num && this.den === o.den;
  }

  isOne(): boolean {
    return this.num === 1n && this.den === 1n;
  }

  toFx(digits: number): Fx {
    return Fx.ratio(this.num, this.den, digits);
  }
}

export interface SpectrumGroup {
  lambda: number; // integer eigenvalue
  mult: number;
}

/**
 * Exact partial fraction of prod_i (1 + lambda_i s)^(-m_i): the weight of the
 * (1 + lambda_i s)^(-k) term is the Taylor coefficient of u^(m_i - k) of the
 * locally analytic factor prod_{j != i} (r_j u + 1 - r_j)^(-m_j).
 */
export function partialFractions(groups: SpectrumGroup[]): Map<string, Frac> {
  const out = new Map<string, Frac>();
  for (let i = 0; i < groups.length; i += 1) {
    const { lambda: li, mult: mi } = groups[i];
    let series: Frac[] = [Frac.int(1), ...Array.from({ length: mi - 1 }, () => Frac.int(0))];
    for (let j = 0; j < groups.length; j += 1) {
      if (j === i) continue;
      const { lambda: lj, mult: mj } = groups[j];
      const r = new Frac(BigInt(lj), BigInt(li));
      const b = Frac.int(1).sub(r);
      const factor: Frac[] = [b.powInt(-mj)];
      for (let t = 1; t < mi; t += 1) {
        factor.push(
          factor[t - 1].mul(new Frac(BigInt(-(mj + t - 1)), BigInt(t))).mul(r.div(b))
        );
      }
      const conv: Frac[] = [];
      for (let t = 0; t < mi; t += 1) {
        let acc = Frac.int(0);
        for (let a = 0; a <= t; a += 1) acc = acc.add(series[a].mul(factor[t - a]));
        conv.push(acc);
      }
      series = conv;
    }
    for (let k = 1; k <= mi; k += 1) out.set(`${i + 1},${k}`, series[mi - k]);
  }
  let total = Frac.int(0);
  for (const c of out.values()) total = total.add(c);
  if (!total.isOne()) throw new Error("partial-fraction weights do not sum to one exactly");
  return out;
}
