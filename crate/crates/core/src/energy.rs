//! Received energy: the closed-form edge kernel, its quadrature cross-check,
//! and per-receiver aggregation into an [`EnergyReport`].
//!
//! A transmitter at `(a, b)` and a receiver crossing the lower edge give
//! received energy proportional to
//!
//! ```text
//! ∫₀ᵀ dt / ((V t − a)² + b²) = (atan(a / b) + atan((l − a) / b)) / (V b)
//! ```
//!
//! The upper edge is the same integral with `b` replaced by `l − b`. Physical
//! energy in joules is that kernel times the Friis constant
//! `η P_T G_T G_R λ² / (4π)²`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{AreaConfig, Placement, Trajectory};
use crate::propagation::{watts_to_dbm, RfParams};
use crate::quadrature::{adaptive_simpson, QuadratureEstimate, QuadratureOptions};
use crate::scalar::Scalar;

/// Largest relative tolerance accepted by [`energy_numeric`].
pub const MAX_QUADRATURE_TOL: f64 = 1e-3;

/// Time integral of inverse squared distance between a transmitter at
/// horizontal position `a`, perpendicular offset `b`, and a receiver crossing
/// one full edge. Units: s·m⁻².
pub fn edge_kernel<T: Scalar>(a: T, b: T, area: &AreaConfig<T>) -> Result<T> {
    let l = area.side_length_m();
    if !(b > T::zero()) || !b.is_finite() {
        return Err(Error::Domain(format!("edge kernel needs a positive offset b (got {b})")));
    }
    if !(a >= T::zero() && a <= l) {
        return Err(Error::Domain(format!("edge kernel needs 0 ≤ a ≤ {l} (got {a})")));
    }
    Ok(((a / b).atan() + ((l - a) / b).atan()) / (area.speed_mps() * b))
}

/// Kernel summed over both edges: proportional to the energy a single
/// transmitter at `(a, b)` delivers to the two receivers.
pub fn dual_edge_kernel<T: Scalar>(a: T, b: T, area: &AreaConfig<T>) -> Result<T> {
    area.check_placement(&Placement::new(a, b))?;
    Ok(edge_kernel(a, b, area)? + edge_kernel(a, area.side_length_m() - b, area)?)
}

/// Closed-form kernel between one trajectory and one feasible placement.
pub fn trajectory_kernel<T: Scalar>(traj: Trajectory, p: &Placement<T>, area: &AreaConfig<T>) -> Result<T> {
    area.check_placement(p)?;
    edge_kernel(p.a_m, traj.offset(area, p), area)
}

/// Evaluates the defining time integral by adaptive quadrature.
///
/// Independent of the closed form; used to cross-check it.
pub fn energy_numeric<T: Scalar>(
    traj: Trajectory,
    p: &Placement<T>,
    area: &AreaConfig<T>,
    rel_tol: f64,
) -> Result<QuadratureEstimate<T>> {
    if !(rel_tol > 0.0 && rel_tol <= MAX_QUADRATURE_TOL) {
        return Err(Error::Domain(format!(
            "quadrature tolerance must lie in (0, {MAX_QUADRATURE_TOL}] (got {rel_tol})"
        )));
    }
    area.check_placement(p)?;
    let target = p.point();
    let integrand = |t: T| {
        let pos = traj.position(area, t).expect("quadrature nodes lie in [0, T]");
        let dx = pos.x_m - target.x_m;
        let dy = pos.y_m - target.y_m;
        (dx * dx + dy * dy).recip()
    };
    adaptive_simpson(integrand, T::zero(), area.traversal_time(), &QuadratureOptions::with_rel_tol(rel_tol))
}

/// Energy and average harvested power for a set of transmitters and receivers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport<T> {
    /// `contributions_j[k][j]`: energy receiver `k` gets from transmitter `j`.
    pub contributions_j: Vec<Vec<T>>,
    pub per_ruav_energy_j: Vec<T>,
    pub per_tuav_energy_j: Vec<T>,
    pub total_energy_j: T,
    pub per_ruav_avg_power_w: Vec<T>,
    pub per_ruav_avg_power_dbm: Vec<T>,
    pub total_avg_power_w: T,
    pub total_avg_power_dbm: T,
    /// `min E_k / max E_k`, snapped to exactly 1 when the energies agree to 1e-9 relative.
    pub fairness_ratio: T,
    pub traversal_time_s: T,
}

impl<T: Scalar> EnergyReport<T> {
    pub fn ruav_count(&self) -> usize {
        self.per_ruav_energy_j.len()
    }

    pub fn is_fair(&self) -> bool {
        self.fairness_ratio == T::one()
    }
}

/// Aggregates energy over every (receiver, transmitter) pair.
pub fn report<T: Scalar>(
    placements: &[Placement<T>],
    trajectories: &[Trajectory],
    area: &AreaConfig<T>,
    rf: &RfParams<T>,
) -> Result<EnergyReport<T>> {
    if trajectories.is_empty() {
        return Err(Error::Domain("energy report needs at least one receiver trajectory".into()));
    }
    if placements.is_empty() {
        return Err(Error::Domain("energy report needs at least one transmitter placement".into()));
    }
    for p in placements {
        area.check_placement(p)?;
    }
    let scale = rf.harvest_constant();
    let horizon = area.traversal_time();

    let contributions_j = trajectories
        .iter()
        .map(|traj| {
            placements
                .iter()
                .map(|p| trajectory_kernel(*traj, p, area).map(|k| scale * k))
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let per_ruav_energy_j: Vec<T> = contributions_j.iter().map(|row| sum(row.iter().copied())).collect();
    let per_tuav_energy_j: Vec<T> = (0..placements.len())
        .map(|j| sum(contributions_j.iter().map(|row| row[j])))
        .collect();
    let total_energy_j = sum(per_ruav_energy_j.iter().copied());

    let per_ruav_avg_power_w: Vec<T> = per_ruav_energy_j.iter().map(|&e| e / horizon).collect();
    let per_ruav_avg_power_dbm = per_ruav_avg_power_w
        .iter()
        .map(|&w| watts_to_dbm(w))
        .collect::<Result<Vec<T>>>()?;
    let total_avg_power_w = total_energy_j / horizon;
    let total_avg_power_dbm = watts_to_dbm(total_avg_power_w)?;

    Ok(EnergyReport {
        fairness_ratio: fairness_ratio(&per_ruav_energy_j),
        contributions_j,
        per_ruav_energy_j,
        per_tuav_energy_j,
        total_energy_j,
        per_ruav_avg_power_w,
        per_ruav_avg_power_dbm,
        total_avg_power_w,
        total_avg_power_dbm,
        traversal_time_s: horizon,
    })
}

fn sum<T: Scalar>(it: impl Iterator<Item = T>) -> T {
    it.fold(T::zero(), |acc, x| acc + x)
}

/// `min / max` of the energies; exactly 1 when they agree to 1e-9 relative.
pub fn fairness_ratio<T: Scalar>(energies: &[T]) -> T {
    let (min, max) = energies
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &e| (lo.min(e), hi.max(e)));
    if energies.is_empty() || !(max > T::zero()) {
        return T::one();
    }
    let slack = T::lit(1e-9).max(T::lit(64.0) * T::epsilon());
    if max - min <= slack * max {
        T::one()
    } else {
        min / max
    }
}
