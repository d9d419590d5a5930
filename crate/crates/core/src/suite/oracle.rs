//! Floating-point cross-check oracle for subgroups of R.
//!
//! Sweeps integer combinations `Σ nᵢgᵢ` with `|nᵢ| ≤ bound` and records which
//! of `probes` equal subintervals of `(0, 1)` they hit. Candidates are located
//! in floating point, then confirmed with exact arithmetic before they count.
//! This is an oracle for testing the exact classifier, not part of any
//! pass/fail decision of its own.

use crate::scalar::Scalar;

const NOISE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Zero,
    /// Some probe interval was missed; `smallest` is the least positive
    /// element found.
    Gap { smallest: Scalar },
    /// Every probe interval contains an element.
    Dense,
}

struct Sweep<'g> {
    gens: &'g [Scalar],
    floats: Vec<f64>,
    bound: i64,
    probes: usize,
    /// Elements are examined in `(0, window)`; buckets only cover `(0, 1)`.
    window: f64,
    hit: Vec<bool>,
    smallest: (f64, Vec<i64>),
}

impl Sweep<'_> {
    fn exact(&self, coeffs: &[i64]) -> Scalar {
        self.gens.iter().zip(coeffs).map(|(g, n)| g * &Scalar::int(*n)).sum()
    }

    fn visit(&mut self, coeffs: &mut Vec<i64>, partial: f64) {
        let depth = coeffs.len();
        if depth + 1 < self.gens.len() {
            for n in -self.bound..=self.bound {
                coeffs.push(n);
                self.visit(coeffs, partial + n as f64 * self.floats[depth]);
                coeffs.pop();
            }
            return;
        }
        // Last coefficient: only the values landing in (0, window) matter.
        let (g, w) = (self.floats[depth], self.window);
        let (lo, hi) = if g > 0.0 { (-partial / g, (w - partial) / g) } else { ((w - partial) / g, -partial / g) };
        let lo = (lo.floor() as i64).max(-self.bound);
        let hi = (hi.ceil() as i64).min(self.bound);
        for n in lo..=hi {
            let v = partial + n as f64 * g;
            // Cancelling combinations land within rounding error of zero.
            if !(v > NOISE && v < w) {
                continue;
            }
            coeffs.push(n);
            if v < self.smallest.0 && self.exact(coeffs).is_positive() {
                self.smallest = (v, coeffs.clone());
            }
            if v >= 1.0 {
                coeffs.pop();
                continue;
            }
            let scaled = v * self.probes as f64;
            let j = (scaled as usize).min(self.probes - 1);
            // Points on a bucket boundary cannot confirm either neighbour.
            let interior = scaled.fract() > 1e-7 && scaled.fract() < 1.0 - 1e-7;
            if interior && !self.hit[j] {
                let exact = self.exact(coeffs);
                let lo = Scalar::frac(j as i64, self.probes as i64);
                let hi = Scalar::frac(j as i64 + 1, self.probes as i64);
                if exact > lo && exact < hi {
                    self.hit[j] = true;
                }
            }
            coeffs.pop();
        }
    }
}

pub fn density_oracle(gens: &[Scalar], bound: i64, probes: usize) -> OracleVerdict {
    let mut gens: Vec<Scalar> = gens.iter().filter(|g| !g.is_zero()).map(Scalar::abs).collect();
    if gens.is_empty() {
        return OracleVerdict::Zero;
    }
    // Largest generator innermost keeps the solved range short.
    gens.sort();
    let floats: Vec<f64> = gens.iter().map(Scalar::to_f64).collect();
    // The least generator is an element, so nothing beyond it needs examining.
    let mut first = vec![0; gens.len()];
    first[0] = 1;
    let window = floats[0].max(1.0) * (1.0 + 1e-9);
    let mut sweep = Sweep { smallest: (floats[0], first), window, floats, gens: &gens, bound, probes, hit: vec![false; probes] };
    sweep.visit(&mut Vec::new(), 0.0);
    if sweep.hit.iter().all(|&h| h) {
        return OracleVerdict::Dense;
    }
    // A missed interval means a gap; the least positive element generates.
    OracleVerdict::Gap { smallest: sweep.exact(&sweep.smallest.1) }
}
