#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wpt_core::{AreaConfig, RfParams};

pub const DEFAULT_SEED: u64 = 0x5eed_2019;

/// Base seed for randomized suites; `WPT_SEED` overrides it.
pub fn base_seed() -> u64 {
    std::env::var("WPT_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Independent deterministic stream per suite.
pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(base_seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn table_area() -> AreaConfig {
    AreaConfig::new(80.0, 5.0, 10.0).unwrap()
}

pub fn table_rf() -> RfParams {
    RfParams::table_one()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// Composite 5-point Gauss–Legendre rule. Shares no code with the crate's
/// adaptive Simpson, so it serves as an oracle for the time integrals.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    const NODES: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683_1,
        0.538_469_310_105_683_1,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const WEIGHTS: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let width = (hi - lo) / panels as f64;
    (0..panels)
        .map(|i| {
            let a = lo + width * i as f64;
            let half = width / 2.0;
            let centre = a + half;
            NODES.iter().zip(WEIGHTS).map(|(x, w)| w * f(centre + half * x)).sum::<f64>() * half
        })
        .sum()
}

/// `∫₀ᵀ dt / ((V t − a)² + b²)` by the Gauss–Legendre oracle.
pub fn edge_integral_oracle(a: f64, b: f64, area: &AreaConfig) -> f64 {
    let v = area.speed_mps();
    gauss_legendre(|t| 1.0 / ((v * t - a).powi(2) + b * b), 0.0, area.traversal_time(), 4000)
}

pub fn second_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    f(x + h) - 2.0 * f(x) + f(x - h)
}

/// Strictly concave test function on `[0, ∞)`: negated weighted squares of
/// affine terms plus a log barrier shifted away from its singularity.
#[derive(Debug, Clone)]
pub struct RandomConcave {
    terms: Vec<(f64, f64, f64)>,
    log_weight: f64,
    log_shift: f64,
}

impl RandomConcave {
    pub fn sample(rng: &mut impl Rng, span: f64) -> Self {
        let n = rng.gen_range(1..=3);
        let terms = (0..n)
            .map(|_| {
                let w = rng.gen_range(0.1..2.0);
                let alpha = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                let beta = rng.gen_range(-span..span);
                (w, alpha, beta)
            })
            .collect();
        Self { terms, log_weight: rng.gen_range(0.0..5.0), log_shift: rng.gen_range(0.5..5.0) }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let quad: f64 = self.terms.iter().map(|(w, a, b)| w * (a * x + b).powi(2)).sum();
        -quad + self.log_weight * (x + self.log_shift).ln()
    }
}

/// Strictly convex counterpart: the negation of a [`RandomConcave`].
#[derive(Debug, Clone)]
pub struct RandomConvex(pub RandomConcave);

impl RandomConvex {
    pub fn sample(rng: &mut impl Rng, span: f64) -> Self {
        Self(RandomConcave::sample(rng, span))
    }

    pub fn eval(&self, x: f64) -> f64 {
        -self.0.eval(x)
    }
}

/// Index of the first maximum.
pub fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) })
        .0
}

/// `f(x) = (x / V) atan(k x)`, the outer function of the convexity composition.
pub fn outer_fn(x: f64, k: f64, v: f64) -> f64 {
    x / v * (k * x).atan()
}

/// Closed-form second derivative of [`outer_fn`]: `2k / (V (1 + k² x²)²)`.
pub fn outer_fn_second_derivative(x: f64, k: f64, v: f64) -> f64 {
    2.0 * k / (v * (1.0 + k * k * x * x).powi(2))
}
