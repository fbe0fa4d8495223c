//! Square service area, receiver trajectories and transmitter placements.
//!
//! Receivers cruise back and forth along the lower (`y = 0`) and upper (`y = l`)
//! edges of an `l x l` square at constant speed. Transmitters hover at the same
//! altitude, so everything here is planar. A strip of width `ε` along each
//! receiver path (zone R1) is off limits; transmitters live in the closed band
//! `ε <= b <= l - ε` in between (zone R2).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Constraint text reported when a placement leaves the horizontal range.
pub const HORIZONTAL_CONSTRAINT: &str = "0 ≤ a ≤ l";
/// Constraint text reported when a placement enters a collision strip.
pub const VERTICAL_CONSTRAINT: &str = "ε ≤ b ≤ l − ε";

/// The square service area together with the receivers' cruising speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaConfig<T> {
    side_length_m: T,
    epsilon_m: T,
    speed_mps: T,
}

impl<T: Scalar> AreaConfig<T> {
    pub fn new(side_length_m: T, epsilon_m: T, speed_mps: T) -> Result<Self> {
        if !(side_length_m.is_finite() && side_length_m > T::zero()) {
            return Err(Error::invalid(
                "side_length_m",
                format!("must be positive and finite (got {side_length_m})"),
            ));
        }
        if !(speed_mps.is_finite() && speed_mps > T::zero()) {
            return Err(Error::invalid(
                "speed_mps",
                format!("must be positive and finite (got {speed_mps})"),
            ));
        }
        let half = side_length_m / T::two();
        if !(epsilon_m.is_finite() && epsilon_m > T::zero() && epsilon_m < half) {
            return Err(Error::invalid(
                "epsilon_m",
                format!("must satisfy 0 < ε < l/2 = {half} (got {epsilon_m})"),
            ));
        }
        Ok(Self { side_length_m, epsilon_m, speed_mps })
    }

    pub fn side_length_m(&self) -> T {
        self.side_length_m
    }

    pub fn epsilon_m(&self) -> T {
        self.epsilon_m
    }

    pub fn speed_mps(&self) -> T {
        self.speed_mps
    }

    /// Time for a receiver to cross one side of the square, `l / V`.
    pub fn traversal_time(&self) -> T {
        self.side_length_m / self.speed_mps
    }

    /// Checks the placement constraints, naming the first one violated.
    pub fn check_placement(&self, p: &Placement<T>) -> Result<()> {
        let l = self.side_length_m;
        if !(p.a_m >= T::zero() && p.a_m <= l) {
            return Err(Error::Infeasible {
                a: p.a_m.as_f64(),
                b: p.b_m.as_f64(),
                constraint: HORIZONTAL_CONSTRAINT,
            });
        }
        if !(p.b_m >= self.epsilon_m && p.b_m <= l - self.epsilon_m) {
            return Err(Error::Infeasible {
                a: p.a_m.as_f64(),
                b: p.b_m.as_f64(),
                constraint: VERTICAL_CONSTRAINT,
            });
        }
        Ok(())
    }

    /// True iff `p` lies in the closed safe zone R2.
    pub fn in_safe_zone(&self, p: &Placement<T>) -> bool {
        self.check_placement(p).is_ok()
    }
}

/// Which edge of the square a receiver cruises along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Edge {
    /// `y = 0`
    Lower,
    /// `y = l`
    Upper,
}

/// A receiver's straight-line path along one edge of the square, `x(t) = V t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Trajectory {
    pub edge: Edge,
}

impl Trajectory {
    pub const LOWER: Trajectory = Trajectory { edge: Edge::Lower };
    pub const UPPER: Trajectory = Trajectory { edge: Edge::Upper };

    /// Both receivers of the two-edge scenario, lower edge first.
    pub fn both() -> Vec<Trajectory> {
        vec![Self::LOWER, Self::UPPER]
    }

    /// Constant y-coordinate of the path.
    pub fn altitude_line<T: Scalar>(&self, area: &AreaConfig<T>) -> T {
        match self.edge {
            Edge::Lower => T::zero(),
            Edge::Upper => area.side_length_m(),
        }
    }

    /// Receiver position at time `t`, for `t` in `[0, T]`.
    pub fn position<T: Scalar>(&self, area: &AreaConfig<T>, t: T) -> Result<Point<T>> {
        let horizon = area.traversal_time();
        if !(t >= T::zero() && t <= horizon) {
            return Err(Error::Domain(format!(
                "time {t} s outside the traversal interval [0, {horizon}] s"
            )));
        }
        Ok(Point::new(area.speed_mps() * t, self.altitude_line(area)))
    }

    /// Perpendicular distance from the path to a placement: `b` for the lower
    /// edge, `l - b` for the upper one.
    pub fn offset<T: Scalar>(&self, area: &AreaConfig<T>, p: &Placement<T>) -> T {
        (p.b_m - self.altitude_line(area)).abs()
    }
}

/// Free function form of [`Trajectory::position`].
pub fn ruav_position<T: Scalar>(traj: Trajectory, area: &AreaConfig<T>, t: T) -> Result<Point<T>> {
    traj.position(area, t)
}

/// Free function form of [`AreaConfig::in_safe_zone`].
pub fn in_safe_zone<T: Scalar>(p: &Placement<T>, area: &AreaConfig<T>) -> bool {
    area.in_safe_zone(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    pub x_m: T,
    pub y_m: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x_m: T, y_m: T) -> Self {
        Self { x_m, y_m }
    }

    pub fn distance(&self, other: &Point<T>) -> T {
        (self.x_m - other.x_m).hypot(self.y_m - other.y_m)
    }
}

pub fn distance<T: Scalar>(p: &Point<T>, q: &Point<T>) -> T {
    p.distance(q)
}

/// Fixed horizontal position of a hovering transmitter.
///
/// Feasibility depends on the area, so construction is unchecked; use
/// [`AreaConfig::check_placement`] before evaluating energy.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Placement<T> {
    pub a_m: T,
    pub b_m: T,
}

impl<T: Scalar> Placement<T> {
    pub fn new(a_m: T, b_m: T) -> Self {
        Self { a_m, b_m }
    }

    pub fn point(&self) -> Point<T> {
        Point::new(self.a_m, self.b_m)
    }

    /// Reflection across the horizontal midline, `b -> l - b`.
    pub fn mirrored(&self, area: &AreaConfig<T>) -> Self {
        Self::new(self.a_m, area.side_length_m() - self.b_m)
    }
}
