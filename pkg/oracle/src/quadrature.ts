/**
 * Double-exponential (exp-sinh) quadrature over (0, infinity) for the
 * capacity-type integrals, and the K-distribution CDF built on the Bessel
 * series.
 */

import { cosh, exp, ln1p, pi, sinh } from "./constants";
import { Fx, pow10, relDiff } from "./fixed";
import { besselK, factorial } from "./special";

/**
 * G^{1,4}_{4,2}(x | 1-k,0,1,1; 1,0) = Gamma(k) * E[ln(1 + x G)] for a unit
 * K(k) variate, written as 4 int_0^inf ln(1+x y^2) y^k K_{k-1}(2y) dy.
 *
 * The substitution y = exp((pi/2) sinh u) makes the trapezoid rule converge
 * double-exponentially; the step is halved until two levels agree.
 */
export function meijerCapacity(k: number, x: Fx, digits: number): Fx {
  const w = digits + 14; // node noise must sit below the level-convergence test
  const xw = x.rescale(w);
  const c = pi(w).divInt(2n);
  const yCap = 1.25 * (digits + 40) + k; // beyond this e^(-2y) is below resolution
  const lnCutoff = -(digits + 8) * Math.LN10;

  const f = (u: Fx): Fx => {
    const y = exp(c.mul(sinh(u)));
    const yNum = y.toNumber();
    if (yNum > yCap) return Fx.int(0n, w);
    if (yNum === 0) return Fx.int(0n, w);
    // crude magnitude screen in doubles before paying for the series
    const logMag = -2 * yNum + (k + 1) * Math.log(Math.max(yNum, 1e-300));
    if (yNum > 1 && logMag < lnCutoff - 40) return Fx.int(0n, w);
    const kv = besselK(k - 1, y.mulInt(2n), w);
    const jac = c.mul(cosh(u)).mul(y); // dy = y c cosh(u) du
    // y^k and K_(k-1) carry opposite extreme scales on the tails; keep the
    // chain exact and truncate once so no intermediate underflows
    return ln1p(xw.mul(y).mul(y))
      .mulExact(y.powExact(k))
      .mulExact(kv)
      .mulExact(jac)
      .mulInt(4n)
      .rescale(w);
  };

  const cutoff = pow10(digits + 6);
  const levelSum = (h: number): Fx => {
    const hFx = Fx.parse(h.toFixed(12), w);
    let acc = f(Fx.int(0n, w));
    for (const dir of [1, -1]) {
      let small = 0;
      for (let n = 1; n <= 20_000; n += 1) {
        const term = f(hFx.mulInt(BigInt(dir * n)));
        acc = acc.add(term);
        const accMag = acc.abs().v;
        const negligible = term.abs().v * cutoff <= (accMag > 0n ? accMag : 1n);
        small = negligible ? small + 1 : 0;
        if (small >= 4) break;
      }
    }
    return acc.mul(hFx);
  };

  let h = 0.5;
  let prev = levelSum(h);
  for (let level = 0; level < 10; level += 1) {
    h /= 2;
    const cur = levelSum(h);
    if (relDiff(cur, prev) < Math.pow(10, -(digits + 2))) return cur.rescale(digits);
    prev = cur;
  }
  throw new Error("exp-sinh quadrature failed to converge");
}

/** CDF of a K(k, lambda) component: 1 - (2/Gamma(k)) w^(k/2) K_k(2 sqrt(w)). */
export function kdistCdf(k: number, lambda: bigint, g: Fx, digits: number): Fx {
  const w = digits + 10;
  const ratio = g.rescale(w).divInt(lambda);
  if (ratio.sign() < 0) throw new Error("gain must be nonnegative");
  if (ratio.isZero()) return Fx.int(0n, digits);
  const root = ratio.sqrt();
  const kv = besselK(k, root.mulInt(2n), w).rescale(w);
  const bracket = root.powInt(k).mul(kv).mulInt(2n).div(Fx.int(factorial(k - 1), w));
  return Fx.int(1n, w).sub(bracket).rescale(digits);
}
