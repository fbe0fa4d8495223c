//! Globally adaptive Simpson quadrature.
//!
//! The interval is cut into a fixed number of starting panels. Each panel
//! carries a Simpson estimate and the sum of the two half-panel estimates; the
//! difference of the two, divided by 15, is its error estimate. The panel with
//! the largest estimate is bisected until the summed estimate falls below the
//! relative tolerance or the evaluation budget runs out.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Requested bound on `error_bound / |value|`.
    pub rel_tol: f64,
    pub max_evaluations: usize,
    pub initial_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-9, max_evaluations: 1_000_000, initial_panels: 64 }
    }
}

impl QuadratureOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate<T> {
    pub value: T,
    /// Sum of the per-panel error estimates.
    pub error_bound: T,
    pub evaluations: usize,
}

/// One panel `[lo, hi]` sampled at five equally spaced nodes.
struct Panel<T> {
    lo: T,
    hi: T,
    f: [T; 5],
    coarse: T,
    fine: T,
    err: T,
}

impl<T: Scalar> Panel<T> {
    fn new(lo: T, hi: T, f: [T; 5]) -> Self {
        let h = hi - lo;
        let six = T::lit(6.0);
        let twelve = T::lit(12.0);
        let four = T::lit(4.0);
        let coarse = h / six * (f[0] + four * f[2] + f[4]);
        let fine = h / twelve * (f[0] + four * f[1] + T::two() * f[2] + four * f[3] + f[4]);
        let err = (fine - coarse).abs() / T::lit(15.0);
        Self { lo, hi, f, coarse, fine, err }
    }

    /// Richardson-extrapolated panel value.
    fn value(&self) -> T {
        self.fine + (self.fine - self.coarse) / T::lit(15.0)
    }
}

impl<T: Scalar> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<T: Scalar> Eq for Panel<T> {}
impl<T: Scalar> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// Integrates `f` over `[lo, hi]` to the relative tolerance in `opts`.
pub fn adaptive_simpson<T, F>(f: F, lo: T, hi: T, opts: &QuadratureOptions) -> Result<QuadratureEstimate<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!("quadrature needs a finite interval lo < hi (got [{lo}, {hi}])")));
    }
    if !(opts.rel_tol > 0.0 && opts.rel_tol.is_finite()) {
        return Err(Error::Domain(format!("relative tolerance must be positive (got {})", opts.rel_tol)));
    }
    let panels = opts.initial_panels.max(1);
    let quarter = T::lit(0.25);
    let span = (hi - lo) / T::from_usize(panels).expect("panel count fits scalar");

    let counter = Cell::new(0usize);
    let eval = |x: T| {
        counter.set(counter.get() + 1);
        f(x)
    };

    let mut heap = BinaryHeap::with_capacity(4 * panels);
    let mut left_value = eval(lo);
    for i in 0..panels {
        let a = lo + span * T::from_usize(i).unwrap();
        let b = if i + 1 == panels { hi } else { lo + span * T::from_usize(i + 1).unwrap() };
        let h = b - a;
        let nodes = [a + quarter * h, a + T::lit(0.5) * h, a + T::lit(0.75) * h];
        let fb = eval(b);
        let f = [left_value, eval(nodes[0]), eval(nodes[1]), eval(nodes[2]), fb];
        left_value = fb;
        heap.push(Panel::new(a, b, f));
    }

    let tol = T::lit(opts.rel_tol);
    let (mut value, mut error_bound) = totals(&heap);
    loop {
        let evaluations = counter.get();
        if error_bound <= tol * value.abs() {
            // Running sums drift; confirm against an ordered re-summation.
            let (exact_value, exact_error) = totals(&heap);
            if exact_error <= tol * exact_value.abs() {
                return Ok(QuadratureEstimate { value: exact_value, error_bound: exact_error, evaluations });
            }
            value = exact_value;
            error_bound = exact_error;
            continue;
        }
        if evaluations + 4 > opts.max_evaluations {
            let (value, error_bound) = totals(&heap);
            return Err(Error::NumericalFailure {
                estimate: value.as_f64(),
                error_bound: error_bound.as_f64(),
                evaluations,
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = worst.f[2];
        let (lo, hi) = (worst.lo, worst.hi);
        let centre = lo + (hi - lo) / T::two();
        if !(centre > lo && centre < hi) {
            // Panel cannot be split further in this precision.
            let (value, error_bound) = totals(&heap);
            let error_bound = error_bound + worst.err;
            return Err(Error::NumericalFailure {
                estimate: (value + worst.value()).as_f64(),
                error_bound: error_bound.as_f64(),
                evaluations,
            });
        }
        let lh = centre - lo;
        let rh = hi - centre;
        let left = Panel::new(
            lo,
            centre,
            [worst.f[0], eval(lo + quarter * lh), worst.f[1], eval(lo + T::lit(0.75) * lh), mid],
        );
        let right = Panel::new(
            centre,
            hi,
            [mid, eval(centre + quarter * rh), worst.f[3], eval(centre + T::lit(0.75) * rh), worst.f[4]],
        );
        value = value - worst.value() + left.value() + right.value();
        error_bound = (error_bound - worst.err + left.err + right.err).max(T::zero());
        heap.push(left);
        heap.push(right);
    }
}

fn totals<T: Scalar>(heap: &BinaryHeap<Panel<T>>) -> (T, T) {
    // Summed in position order so results do not depend on heap layout.
    let mut panels: Vec<&Panel<T>> = heap.iter().collect();
    panels.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(Ordering::Equal));
    panels
        .iter()
        .fold((T::zero(), T::zero()), |(v, e), p| (v + p.value(), e + p.err))
}
