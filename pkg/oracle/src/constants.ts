/** Fundamental constants at arbitrary precision, memoized per digit count. */

import { Fx, pow10 } from "./fixed";

const CACHE = new Map<string, Fx>();

function cached(key: string, d: number, make: () => Fx): Fx {
  const full = `${key}:${d}`;
  let v = CACHE.get(full);
  if (v === undefined) {
    v = make();
    CACHE.set(full, v);
  }
  return v;
}

/** arctan(1/n) by its alternating series, exact integer divisions. */
function atanInv(n: bigint, d: number): Fx {
  const w = d + 10;
  const n2 = n * n;
  let term = pow10(w) / n;
  let sum = 0n;
  let k = 0n;
  while (term > 0n) {
    sum += k % 2n === 0n ? term / (2n * k + 1n) : -(term / (2n * k + 1n));
    term /= n2;
    k += 1n;
  }
  return new Fx(sum, w).rescale(d);
}

/** atanh(1/n) = sum 1/((2k+1) n^(2k+1)). */
function atanhInv(n: bigint, d: number): Fx {
  const w = d + 10;
  const n2 = n * n;
  let term = pow10(w) / n;
  let sum = 0n;
  let k = 0n;
  while (term > 0n) {
    sum += term / (2n * k + 1n);
    term /= n2;
    k += 1n;
  }
  return new Fx(sum, w).rescale(d);
}

export function pi(d: number): Fx {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
  return cached("pi", d, () =>
    atanInv(5n, d + 8).mulInt(16n).sub(atanInv(239n, d + 8).mulInt(4n)).rescale(d)
  );
}

export function ln2(d: number): Fx {
  return cached("ln2", d, () => atanhInv(3n, d + 8).mulInt(2n).rescale(d));
}

export function ln10(d: number): Fx {
  // ln 10 = 3 ln 2 + ln(10/8), and ln(5/4) = 2 atanh(1/9)
  return cached("ln10", d, () =>
    ln2(d + 8).mulInt(3n).add(atanhInv(9n, d + 8).mulInt(2n)).rescale(d)
  );
}

/** Euler-Mascheroni constant by the Brent-McMillan sums (error ~ e^(-2n)). */
export function eulerGamma(d: number): Fx {
  return cached("gamma", d, () => {
    const w = d + 15;
    const n = Math.ceil(((d + 15) * Math.LN10) / 2) + 2;
    const nBig = BigInt(n);
    // t_k = (n^k / k!)^2, S = sum t_k H_k, I = sum t_k; gamma = S/I - ln n
    let t = Fx.int(1n, w + Math.ceil(2 * n * Math.LOG10E));
    const wide = t.d;
    let h = Fx.int(0n, wide);
    let s = Fx.int(0n, wide);
    let i = Fx.int(0n, wide);
    const nFx = Fx.int(nBig, wide);
    for (let k = 1; k <= 6 * n; k += 1) {
      t = t.mul(nFx).mul(nFx).divInt(BigInt(k)).divInt(BigInt(k));
      h = h.add(Fx.ratio(1n, BigInt(k), wide));
      s = s.add(t.mul(h));
      i = i.add(t);
      if (k > 2 * n && t.isZero()) break;
    }
    const lnN = lnOfInt(nBig, w);
    return s.div(i).rescale(w).sub(lnN).rescale(d);
  });
}

/** Natural log of a positive integer. */
export function lnOfInt(n: bigint, d: number): Fx {
  if (n <= 0n) throw new Error("lnOfInt needs a positive integer");
  return ln(Fx.int(n, d + 8)).rescale(d);
}

/** Natural logarithm via atanh series after range reduction by powers of 2. */
export function ln(x: Fx): Fx {
  if (x.sign() <= 0) throw new Error("ln of nonpositive value");
  const d = x.d;
  const w = d + 10;
  let m = x.rescale(w);
  let twos = 0;
  const one = Fx.int(1n, w);
  const two = Fx.int(2n, w);
  const sqrt2 = two.sqrt();
  const invSqrt2 = one.div(sqrt2);
  while (m.cmp(sqrt2) > 0) {
    m = m.div(two);
    twos += 1;
  }
  while (m.cmp(invSqrt2) < 0) {
    m = m.mul(two);
    twos -= 1;
  }
  // ln m = 2 atanh((m-1)/(m+1)), |t| <= 0.172 after reduction
  const t = m.sub(one).div(m.add(one));
  const t2 = t.mul(t);
  let term = t;
  let sum = Fx.int(0n, w);
  let k = 0n;
  while (!term.isZero()) {
    sum = sum.add(term.divInt(2n * k + 1n));
    term = term.mul(t2);
    k += 1n;
  }
  let out = sum.mulInt(2n);
  if (twos !== 0) out = out.add(ln2(w).mulInt(BigInt(twos)));
  return out.rescale(d);
}

/** exp(x) for moderate |x| (say |x| < 50): scaling-and-squaring plus Taylor. */
export function exp(x: Fx): Fx {
  const d = x.d;
  const w = d + 12;
  let r = x.rescale(w);
  let squarings = 0;
  const half = Fx.ratio(1n, 2n, w);
  while (r.abs().cmp(half) > 0) {
    r = r.divInt(2n);
    squarings += 1;
    if (squarings > 64) throw new Error("exp argument too large");
  }
  let term = Fx.int(1n, w);
  let sum = term;
  let k = 1n;
  while (!term.isZero()) {
    term = term.mul(r).divInt(k);
    sum = sum.add(term);
    k += 1n;
  }
  for (let i = 0; i < squarings; i += 1) sum = sum.mul(sum);
  return sum.rescale(d);
}

export function sinh(x: Fx): Fx {
  const e = exp(x);
  return e.sub(Fx.int(1n, x.d).div(e)).divInt(2n);
}

export function cosh(x: Fx): Fx {
  const e = exp(x);
  return e.add(Fx.int(1n, x.d).div(e)).divInt(2n);
}

/** ln(1 + y) that stays accurate for y of any magnitude >= 0. */
export function ln1p(y: Fx): Fx {
  const one = Fx.int(1n, y.d);
  return ln(one.add(y));
}
