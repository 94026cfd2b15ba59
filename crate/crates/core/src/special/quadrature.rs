//! Gauss–Legendre rules and adaptive Gauss–Kronrod integration.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Largest supported Gauss–Legendre order.
pub const MAX_GAUSS_LEGENDRE_ORDER: usize = 512;

/// Maximum number of interval bisections in [`integrate_adaptive`].
pub const MAX_SUBDIVISIONS: usize = 5_000;

/// Nodes and weights of an n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule to ∫_lo^hi f(x) dx by an affine change of variable.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, lo: f64, hi: f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// Builds the n-point Gauss–Legendre rule by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_GAUSS_LEGENDRE_ORDER {
        return Err(domain(
            "gauss_legendre",
            format!("order must be in 1..={MAX_GAUSS_LEGENDRE_ORDER}, got {n}"),
        ));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        // Tricomi's initial approximation of the i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
/// Weights of the embedded 7-point Gauss rule (odd Kronrod nodes and centre).
const GAUSS7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> (f64, f64) {
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let fc = f(mid);
    let mut k = fc * KRONROD_WEIGHTS[7];
    let mut g = fc * GAUSS7_WEIGHTS[3];
    for j in 0..7 {
        let dx = half * KRONROD_NODES[j];
        let s = f(mid - dx) + f(mid + dx);
        k += KRONROD_WEIGHTS[j] * s;
        if j % 2 == 1 {
            g += GAUSS7_WEIGHTS[j / 2] * s;
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Globally adaptive 7/15-point Gauss–Kronrod quadrature of a finite interval.
///
/// Stops once the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
/// Integrable endpoint singularities are handled by repeated bisection of the
/// worst interval.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(domain("integrate_adaptive", "interval must be finite"));
    }
    if lo == hi {
        return Ok(0.0);
    }
    let (v, e) = kronrod15(&mut f, lo, hi);
    let mut pieces = vec![(lo, hi, v, e)];
    let mut total = v;
    let mut err = e;
    for _ in 0..MAX_SUBDIVISIONS {
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .3.total_cmp(&b.1 .3))
            .expect("non-empty");
        let (a, b, v, e) = pieces.swap_remove(idx);
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            // interval cannot shrink further in floating point
            pieces.push((a, b, v, 0.0));
            err -= e;
            continue;
        }
        let left = kronrod15(&mut f, a, m);
        let right = kronrod15(&mut f, m, b);
        total += left.0 + right.0 - v;
        err += left.1 + right.1 - e;
        pieces.push((a, m, left.0, left.1));
        pieces.push((m, b, right.0, right.1));
    }
    // recompute sums to shed accumulated rounding in the running totals
    let total: f64 = pieces.iter().map(|p| p.2).sum();
    let err: f64 = pieces.iter().map(|p| p.3).sum();
    if err <= abs_tol.max(rel_tol * total.abs()) {
        Ok(total)
    } else {
        Err(Error::Convergence {
            func: "integrate_adaptive",
            partial: total,
            terms: MAX_SUBDIVISIONS,
        })
    }
}
