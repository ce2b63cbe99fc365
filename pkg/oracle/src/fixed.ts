/**
 * Arbitrary-precision fixed-point reals on BigInt.
 *
 * A value is (v, d): the real number v / 10^d, with d decimal fraction
 * digits.  Operations truncate toward zero; callers work with 10+ guard
 * digits and validate results by recomputing at doubled precision, so
 * truncation never reaches the emitted digits.
 */

const POW10 = new Map<number, bigint>();

export function pow10(d: number): bigint {
  let p = POW10.get(d);
  if (p === undefined) {
    p = 10n ** BigInt(d);
    POW10.set(d, p);
  }
  return p;
}

export class Fx {
  readonly v: bigint;
  readonly d: number;

  constructor(v: bigint, d: number) {
    this.v = v;
    this.d = d;
  }

  static int(n: bigint | number, d: number): Fx {
    return new Fx(BigInt(n) * pow10(d), d);
  }

  /** Parse a plain decimal literal ("-12.0625") exactly. */
  static parse(text: string, d: number): Fx {
    const m = /^(-?)(\d+)(?:\.(\d+))?$/.exec(text.trim());
    if (!m) throw new Error(`cannot parse decimal literal ${text}`);
    const sign = m[1] === "-" ? -1n : 1n;
    const frac = m[3] ?? "";
    if (frac.length > d) throw new Error(`literal ${text} needs more than ${d} digits`);
    const scaled = BigInt(m[2] + frac) * pow10(d - frac.length);
    return new Fx(sign * scaled, d);
  }

  static ratio(num: bigint, den: bigint, d: number): Fx {
    if (den === 0n) throw new Error("division by zero");
    return new Fx((num * pow10(d)) / den, d);
  }

  add(o: Fx): Fx {
    this.check(o);
    return new Fx(this.v + o.v, this.d);
  }

  sub(o: Fx): Fx {
    this.check(o);
    return new Fx(this.v - o.v, this.d);
  }

  mul(o: Fx): Fx {
    this.check(o);
    return new Fx((this.v * o.v) / pow10(this.d), this.d);
  }

  div(o: Fx): Fx {
    this.check(o);
    if (o.v === 0n) throw new Error("division by zero");
    return new Fx((this.v * pow10(this.d)) / o.v, this.d);
  }

  mulInt(n: bigint): Fx {
    return new Fx(this.v * n, this.d);
  }

  /** Exact product: no truncation, scales add (use with a final rescale). */
  mulExact(o: Fx): Fx {
    return new Fx(this.v * o.v, this.d + o.d);
  }

  /** Exact nonnegative integer power (scale grows k-fold). */
  powExact(k: number): Fx {
    if (!Number.isInteger(k) || k < 0) throw new Error("powExact needs k >= 0");
    let acc = new Fx(1n, 0);
    for (let i = 0; i < k; i += 1) acc = acc.mulExact(this);
    return acc;
  }

  divInt(n: bigint): Fx {
    if (n === 0n) throw new Error("division by zero");
    return new Fx(this.v / n, this.d);
  }

  neg(): Fx {
    return new Fx(-this.v, this.d);
  }

  abs(): Fx {
    return this.v < 0n ? this.neg() : this;
  }

  isZero(): boolean {
    return this.v === 0n;
  }

  sign(): number {
    return this.v === 0n ? 0 : this.v > 0n ? 1 : -1;
  }

  cmp(o: Fx): number {
    this.check(o);
    return this.v === o.v ? 0 : this.v > o.v ? 1 : -1;
  }

  /** Truncated integer square root of a nonnegative value. */
  sqrt(): Fx {
    if (this.v < 0n) throw new Error("sqrt of negative value");
    if (this.v === 0n) return this;
    const target = this.v * pow10(this.d);
    let x = 1n << BigInt(Math.ceil(bitLength(target) / 2));
    for (;;) {
      const y = (x + target / x) >> 1n;
      if (y >= x) break;
      x = y;
    }
    return new Fx(x, this.d);
  }

  /** Integer power by repeated squaring; n may be negative. */
  powInt(n: number): Fx {
    if (!Number.isInteger(n)) throw new Error("powInt needs an integer exponent");
    if (n < 0) return Fx.int(1n, this.d).div(this.powInt(-n));
    let base: Fx = this;
    let acc = Fx.int(1n, this.d);
    let e = n;
    while (e > 0) {
      if (e & 1) acc = acc.mul(base);
      base = base.mul(base);
      e >>= 1;
    }
    return acc;
  }

  /** Change the number of fraction digits (truncating when shrinking). */
  rescale(d: number): Fx {
    if (d === this.d) return this;
    if (d > this.d) return new Fx(this.v * pow10(d - this.d), d);
    return new Fx(this.v / pow10(this.d - d), d);
  }

  toNumber(): number {
    return Number(this.v) / Number(pow10(this.d));
  }

  /** Scientific-notation string with the given significant digits. */
  toSci(sig: number): string {
    if (this.v === 0n) return "0.0";
    const neg = this.v < 0n;
    const digits = (neg ? -this.v : this.v).toString();
    const exp = digits.length - 1 - this.d;
    let mant = digits.slice(0, sig);
    if (digits.length > sig && digits.charCodeAt(sig) >= 53) {
      // round the kept mantissa up; renormalize on overflow
      const bumped = (BigInt(mant) + 1n).toString();
      if (bumped.length > mant.length) {
        return `${neg ? "-" : ""}${bumped[0]}.${bumped.slice(1, sig)}e${exp + 1}`;
      }
      mant = bumped;
    }
    mant = mant.padEnd(sig, "0");
    return `${neg ? "-" : ""}${mant[0]}.${mant.slice(1)}e${exp}`;
  }

  private check(o: Fx): void {
    if (o.d !== this.d) throw new Error(`precision mismatch: ${this.d} vs ${o.d}`);
  }
}

export function bitLength(n: bigint): number {
  let bits = 0;
  let x = n < 0n ? -n : n;
  while (x > 0n) {
    x >>= 1n;
    bits += 1;
  }
  return bits;
}

/** Rescale so the value keeps at least `sig` significant digits. */
export function toSignificant(x: Fx, sig: number): Fx {
  if (x.isZero()) return x.rescale(sig);
  const intDigits = x.abs().v.toString().length - x.d;
  return x.rescale(Math.max(sig, sig - intDigits));
}

/** |a - b| / |b| as a JS number, resolving ratios down to 1e-130. */
export function relDiff(a: Fx, b: Fx): number {
  const diff = a.sub(b).abs();
  const scale = b.abs();
  if (scale.isZero()) return diff.isZero() ? 0 : Infinity;
  const q = (diff.v * pow10(130)) / scale.v;
  const n = Number(q);
  return Number.isFinite(n) ? n / 1e130 : Infinity;
}
