/**
 * Fixed-asymptote exponential fit used for decay-curve overlays.
 *
 * Fits F = 1/2 + b * exp(-c * x) by linear regression on ln(F - 1/2),
 * weighted by the squared excess so the result approximates a linear-scale
 * least-squares fit instead of over-trusting the noisy tail. Points at or
 * below the asymptote are skipped. Deterministic and dependency-free; the
 * authoritative fit lives in the simulator's fit report.
 */

export interface ExpFit {
  asymptote: number;
  amplitude: number;
  rate: number;
}

export function fitDecay(xs: number[], ys: number[], asymptote = 0.5): ExpFit {
  const lx: number[] = [];
  const ly: number[] = [];
  const w: number[] = [];
  for (let i = 0; i < xs.length; i++) {
    const excess = ys[i] - asymptote;
    if (excess > 1e-9) {
      lx.push(xs[i]);
      ly.push(Math.log(excess));
      w.push(excess * excess);
    }
  }
  if (lx.length < 2) {
    throw new Error("not enough points above the asymptote to fit a decay");
  }
  const wsum = w.reduce((a, b) => a + b, 0);
  const mx = lx.reduce((a, b, i) => a + b * w[i], 0) / wsum;
  const my = ly.reduce((a, b, i) => a + b * w[i], 0) / wsum;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < lx.length; i++) {
    sxx += w[i] * (lx[i] - mx) * (lx[i] - mx);
    sxy += w[i] * (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx === 0) throw new Error("degenerate x values in decay fit");
  const slope = sxy / sxx;
  return { asymptote, amplitude: Math.exp(my - slope * mx), rate: -slope };
}
