/**
 * Special functions by ascending series in fixed-point arithmetic.
 *
 * Working precision is widened by the known cancellation scale (e^(2z) for
 * the modified Bessel series, e^x for J0) plus guard digits, so the target
 * digits survive truncation; every emitted value is additionally re-derived
 * at doubled precision by the suite runner.
 */

import { eulerGamma, ln, pi } from "./constants";
import { Fx, toSignificant } from "./fixed";

const FACT = new Map<number, bigint>();

export function factorial(n: number): bigint {
  if (n < 0) throw new Error("factorial of negative integer");
  let v = FACT.get(n);
  if (v === undefined) {
    v = n === 0 ? 1n : factorial(n - 1) * BigInt(n);
    FACT.set(n, v);
  }
  return v;
}

/** J0(x) = sum (-1)^j (x/2)^(2j) / (j!)^2. */
export function besselJ0(x: Fx, digits: number): Fx {
  const guard = 12 + Math.ceil(0.45 * Math.abs(x.toNumber()));
  const w = digits + guard;
  const q = x.rescale(w).divInt(2n);
  const wsq = q.mul(q);
  let term = Fx.int(1n, w);
  let sum = term;
  let j = 1n;
  for (;;) {
    term = term.mul(wsq).divInt(j * j);
    if (term.isZero()) break;
    sum = j % 2n === 1n ? sum.sub(term) : sum.add(term);
    j += 1n;
  }
  return toSignificant(sum, digits);
}

/**
 * K_n(z) for integer n >= 0 via the ascending series
 *
 *   K_n = (1/2)(z/2)^(-n) sum_{j<n} ((n-1-j)!/j!)(-w)^j
 *       + (-1)^(n+1) ln(z/2) I_n(z)
 *       + (-1)^n (1/2)(z/2)^n sum_j (psi(j+1)+psi(n+j+1)) w^j / (j!(n+j)!)
 *
 * with w = (z/2)^2.  Converges for all z; the alternating pieces cancel to
 * about e^(2z), which the widened working precision absorbs.
 */
export function besselK(n: number, z: Fx, digits: number): Fx {
  if (n < 0 || !Number.isInteger(n)) throw new Error("order must be a nonnegative integer");
  if (z.sign() <= 0) throw new Error("K_n needs z > 0");
  const zNum = z.toNumber();
  const w = digits + 15 + Math.ceil(1.8 * zNum);
  const half = z.rescale(w).divInt(2n);
  const wsq = half.mul(half);
  const one = Fx.int(1n, w);

  // finite alternating head (empty for n = 0); (z/2)^(-n) is computed as an
  // inverse power so tiny z cannot underflow the scale factor
  let head = Fx.int(0n, w);
  if (n >= 1) {
    let term = Fx.int(factorial(n - 1), w); // j = 0
    head = term;
    for (let j = 1; j <= n - 1; j += 1) {
      term = term.mul(wsq).divInt(BigInt(j) * BigInt(n - j)).neg();
      head = head.add(term);
    }
    head = head.mul(one.div(half).powInt(n)).divInt(2n);
  }

  const lnHalf = ln(half);
  const gamma = eulerGamma(w);

  // I_n(z) together with the digamma-weighted tail, sharing term recurrences
  let tI = one.div(Fx.int(factorial(n), w)); // w^0 / (0! n!)
  let sumI = tI;
  let psiA = gamma.neg(); // psi(1)
  let psiB = gamma.neg(); // running psi(n+1)
  for (let m = 1; m <= n; m += 1) psiB = psiB.add(Fx.ratio(1n, BigInt(m), w));
  let sumPsi = tI.mul(psiA.add(psiB));
  for (let j = 1; ; j += 1) {
    tI = tI.mul(wsq).divInt(BigInt(j) * BigInt(n + j));
    if (tI.isZero()) break;
    psiA = psiA.add(Fx.ratio(1n, BigInt(j), w));
    psiB = psiB.add(Fx.ratio(1n, BigInt(n + j), w));
    sumI = sumI.add(tI);
    sumPsi = sumPsi.add(tI.mul(psiA.add(psiB)));
    if (j > 10_000) throw new Error("K series failed to terminate");
  }
  const halfPow = half.powInt(n);
  const iN = halfPow.mul(sumI);
  const logPiece = lnHalf.mul(iN);
  const psiPiece = halfPow.mul(sumPsi).divInt(2n);
  const odd = n % 2 === 1;
  // (-1)^(n+1) ln(z/2) I_n + (-1)^n (psi piece)
  const tail = odd ? logPiece.sub(psiPiece) : psiPiece.sub(logPiece);
  return toSignificant(head.add(tail), digits);
}

/** ln Gamma(k) for positive integer and half-integer k. */
export function lnGamma(k: number, digits: number): Fx {
  const w = digits + 10;
  if (Number.isInteger(k)) {
    if (k < 1) throw new Error("lnGamma needs k > 0");
    if (k <= 2) return Fx.int(0n, digits);
    return ln(Fx.int(factorial(k - 1), w)).rescale(digits);
  }
  const m = Math.round(k - 0.5);
  if (Math.abs(k - 0.5 - m) > 0) throw new Error("lnGamma supports integers and half-integers");
  // Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)
  const sqrtPi = pi(w).sqrt();
  const num = Fx.int(factorial(2 * m), w).mul(sqrtPi);
  const den = Fx.int(4n ** BigInt(m) * factorial(m), w);
  return ln(num.div(den)).rescale(digits);
}
