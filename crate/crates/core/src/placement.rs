//! Transmitter placement: the analytic optimum, exhaustive lattice search,
//! raster export and multi-transmitter allocation policies.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::{report, trajectory_kernel};
use crate::error::{Error, Result};
use crate::geometry::{AreaConfig, Placement, Trajectory};
use crate::propagation::{watts_to_dbm, RfParams};
use crate::scalar::Scalar;

/// Header line of the sweep raster CSV.
pub const CSV_HEADER: &str = "a_m,b_m,kernel,avg_power_w,avg_power_dbm";

/// Cells within this relative distance of the maximum count as argmax ties.
pub const ARGMAX_REL_TOL: f64 = 1e-12;

/// The two optimal hover points: mid-span on each boundary between the
/// collision strips and the safe zone, `(l/2, ε)` and `(l/2, l − ε)`.
pub fn analytic_optimum<T: Scalar>(area: &AreaConfig<T>) -> [Placement<T>; 2] {
    let l = area.side_length_m();
    let mid = l / T::two();
    [Placement::new(mid, area.epsilon_m()), Placement::new(mid, l - area.epsilon_m())]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow<T> {
    pub a_m: T,
    pub b_m: T,
    /// Kernel summed over the swept trajectories, s·m⁻².
    pub kernel: T,
    pub avg_power_w: T,
    pub avg_power_dbm: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid<T> {
    pub resolution_m: T,
    /// Row-major by `a`, then `b`.
    pub rows: Vec<SweepRow<T>>,
    /// Every cell within [`ARGMAX_REL_TOL`] of the best kernel value, sorted by `a` then `b`.
    pub argmax_cells: Vec<Placement<T>>,
}

impl<T: Scalar> SweepGrid<T> {
    pub fn max_kernel(&self) -> T {
        self.rows.iter().map(|r| r.kernel).fold(T::neg_infinity(), T::max)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        out.write_all(CSV_HEADER.as_bytes())?;
        out.write_all(b"\n")?;
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", r.a_m, r.b_m, r.kernel, r.avg_power_w, r.avg_power_dbm)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::with_capacity(self.rows.len() * 64);
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

/// Lattice over `[lo, hi]` containing the midpoint and both endpoints, with
/// spacing `step` outward from the midpoint.
pub fn centered_axis<T: Scalar>(lo: T, hi: T, step: T) -> Vec<T> {
    let mid = (lo + hi) / T::two();
    let slack = step * T::lit(1e-9);
    let mut below = Vec::new();
    let mut above = Vec::new();
    let mut k = 1usize;
    loop {
        let offset = step * T::from_usize(k).unwrap();
        if mid - offset <= lo + slack {
            break;
        }
        below.push(mid - offset);
        above.push(mid + offset);
        k += 1;
    }
    let mut axis = Vec::with_capacity(2 * below.len() + 3);
    if hi > lo {
        axis.push(lo);
    }
    axis.extend(below.into_iter().rev());
    axis.push(mid);
    axis.extend(above);
    if hi > lo {
        axis.push(hi);
    }
    axis
}

/// Lattice over `[lo, hi]` stepping inward from both endpoints, mirror
/// symmetric about the midpoint. The midpoint is included only when it falls
/// on the lattice.
pub fn boundary_anchored_axis<T: Scalar>(lo: T, hi: T, step: T) -> Vec<T> {
    let mid = (lo + hi) / T::two();
    let slack = step * T::lit(1e-9);
    let mut left = Vec::new();
    let mut centre = None;
    let mut k = 0usize;
    loop {
        let offset = step * T::from_usize(k).unwrap();
        let x = lo + offset;
        if (x - mid).abs() <= slack {
            centre = Some(mid);
            break;
        }
        if x > mid {
            break;
        }
        left.push(x);
        k += 1;
    }
    let right: Vec<T> = left.iter().rev().map(|&x| hi - (x - lo)).collect();
    let mut axis = left;
    axis.extend(centre);
    axis.extend(right);
    axis
}

/// Evaluates the kernel over every feasible lattice cell of the safe zone.
///
/// The lattice always contains the column `a = l/2` and the rows `b = ε` and
/// `b = l − ε`, where the optimum lives.
pub fn grid_search<T: Scalar>(
    area: &AreaConfig<T>,
    rf: &RfParams<T>,
    resolution_m: T,
    trajectories: &[Trajectory],
) -> Result<SweepGrid<T>> {
    let l = area.side_length_m();
    let quarter = l / T::lit(4.0);
    if !(resolution_m > T::zero() && resolution_m <= quarter) {
        return Err(Error::Configuration(format!(
            "sweep resolution must lie in (0, l/4 = {quarter}] m (got {resolution_m})"
        )));
    }
    if trajectories.is_empty() {
        return Err(Error::Configuration("sweep needs at least one trajectory".into()));
    }
    let eps = area.epsilon_m();
    let a_axis = centered_axis(T::zero(), l, resolution_m);
    let b_axis = boundary_anchored_axis(eps, l - eps, resolution_m);
    let scale = rf.harvest_constant();
    let horizon = area.traversal_time();

    let columns = a_axis
        .par_iter()
        .map(|&a| {
            b_axis
                .iter()
                .map(|&b| {
                    let p = Placement::new(a, b);
                    let mut kernel = T::zero();
                    for traj in trajectories {
                        kernel = kernel + trajectory_kernel(*traj, &p, area)?;
                    }
                    let avg_power_w = scale * kernel / horizon;
                    Ok(SweepRow { a_m: a, b_m: b, kernel, avg_power_w, avg_power_dbm: watts_to_dbm(avg_power_w)? })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<SweepRow<T>> = columns.into_iter().flatten().collect();

    let best = rows.iter().map(|r| r.kernel).fold(T::neg_infinity(), T::max);
    let cutoff = best - best.abs() * T::lit(ARGMAX_REL_TOL);
    let argmax_cells = rows
        .iter()
        .filter(|r| r.kernel >= cutoff)
        .map(|r| Placement::new(r.a_m, r.b_m))
        .collect();

    Ok(SweepGrid { resolution_m, rows, argmax_cells })
}

/// How to place transmitters for the two-receiver scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AllocationPolicy {
    /// Stack every transmitter on the two optima; odd counts favour the lower edge.
    MaxTotal,
    /// Equal energy for both receivers; an odd leftover hovers at the centre `(l/2, l/2)`.
    Fair,
}

/// Placements for `n_tuavs` transmitters serving both edges.
///
/// Lower-edge optimum copies come first, then upper-edge ones, then (for the
/// fair policy with odd `n`) the centre point.
pub fn allocate<T: Scalar>(n_tuavs: usize, policy: AllocationPolicy, area: &AreaConfig<T>) -> Result<Vec<Placement<T>>> {
    if n_tuavs < 1 {
        return Err(Error::Domain("at least one transmitter is required".into()));
    }
    let [lower, upper] = analytic_optimum(area);
    let (n_lower, n_upper, centre) = match policy {
        AllocationPolicy::MaxTotal => (n_tuavs.div_ceil(2), n_tuavs / 2, false),
        AllocationPolicy::Fair => (n_tuavs / 2, n_tuavs / 2, n_tuavs % 2 == 1),
    };
    let mut out = Vec::with_capacity(n_tuavs);
    out.extend(std::iter::repeat(lower).take(n_lower));
    out.extend(std::iter::repeat(upper).take(n_upper));
    if centre {
        let mid = area.side_length_m() / T::two();
        out.push(Placement::new(mid, mid));
    }
    Ok(out)
}

/// Gain in dB of the candidate set's total average power over the baseline's.
pub fn compare_placements<T: Scalar>(
    candidate: &[Placement<T>],
    baseline: &[Placement<T>],
    trajectories: &[Trajectory],
    area: &AreaConfig<T>,
    rf: &RfParams<T>,
) -> Result<T> {
    let cand = report(candidate, trajectories, area, rf)?;
    let base = report(baseline, trajectories, area, rf)?;
    Ok(cand.total_avg_power_dbm - base.total_avg_power_dbm)
}
