//! Friis free-space received power and decibel conversions.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const SPEED_OF_LIGHT_MPS: f64 = 299_792_458.0;

/// Transmitter/receiver RF chain parameters.
///
/// Gains are given in dBi and converted to linear factors once, here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfParams<T> {
    tx_power_w: T,
    tx_gain_dbi: T,
    rx_gain_dbi: T,
    frequency_hz: T,
    light_speed_mps: T,
    efficiency: T,
    tx_gain: T,
    rx_gain: T,
}

impl<T: Scalar> RfParams<T> {
    /// Lossless harvesting, free-space speed of light.
    pub fn new(tx_power_w: T, tx_gain_dbi: T, rx_gain_dbi: T, frequency_hz: T) -> Result<Self> {
        Self::with_all(
            tx_power_w,
            tx_gain_dbi,
            rx_gain_dbi,
            frequency_hz,
            T::lit(SPEED_OF_LIGHT_MPS),
            T::one(),
        )
    }

    pub fn with_all(
        tx_power_w: T,
        tx_gain_dbi: T,
        rx_gain_dbi: T,
        frequency_hz: T,
        light_speed_mps: T,
        efficiency: T,
    ) -> Result<Self> {
        positive("tx_power_w", tx_power_w)?;
        positive("frequency_hz", frequency_hz)?;
        positive("light_speed_mps", light_speed_mps)?;
        if !tx_gain_dbi.is_finite() {
            return Err(Error::invalid("tx_gain_dbi", format!("must be finite (got {tx_gain_dbi})")));
        }
        if !rx_gain_dbi.is_finite() {
            return Err(Error::invalid("rx_gain_dbi", format!("must be finite (got {rx_gain_dbi})")));
        }
        if !(efficiency > T::zero() && efficiency <= T::one()) {
            return Err(Error::invalid("efficiency", format!("must lie in (0, 1] (got {efficiency})")));
        }
        Ok(Self {
            tx_power_w,
            tx_gain_dbi,
            rx_gain_dbi,
            frequency_hz,
            light_speed_mps,
            efficiency,
            tx_gain: dbi_to_linear(tx_gain_dbi),
            rx_gain: dbi_to_linear(rx_gain_dbi),
        })
    }

    /// 1 kW at 433 MHz with 6 dBi antennas on both ends.
    pub fn table_one() -> Self {
        Self::new(T::lit(1000.0), T::lit(6.0), T::lit(6.0), T::lit(433e6))
            .expect("reference RF parameters are valid")
    }

    pub fn with_efficiency(self, efficiency: T) -> Result<Self> {
        Self::with_all(
            self.tx_power_w,
            self.tx_gain_dbi,
            self.rx_gain_dbi,
            self.frequency_hz,
            self.light_speed_mps,
            efficiency,
        )
    }

    pub fn with_frequency(self, frequency_hz: T) -> Result<Self> {
        Self::with_all(
            self.tx_power_w,
            self.tx_gain_dbi,
            self.rx_gain_dbi,
            frequency_hz,
            self.light_speed_mps,
            self.efficiency,
        )
    }

    pub fn tx_power_w(&self) -> T {
        self.tx_power_w
    }
    pub fn tx_gain_dbi(&self) -> T {
        self.tx_gain_dbi
    }
    pub fn rx_gain_dbi(&self) -> T {
        self.rx_gain_dbi
    }
    pub fn frequency_hz(&self) -> T {
        self.frequency_hz
    }
    pub fn light_speed_mps(&self) -> T {
        self.light_speed_mps
    }
    pub fn efficiency(&self) -> T {
        self.efficiency
    }
    pub fn tx_gain_linear(&self) -> T {
        self.tx_gain
    }
    pub fn rx_gain_linear(&self) -> T {
        self.rx_gain
    }

    /// `c / f`
    pub fn wavelength(&self) -> T {
        self.light_speed_mps / self.frequency_hz
    }

    /// `P_T G_T G_R λ² / (4π)²` in W·m²: received power at 1 m before conversion losses.
    pub fn path_constant(&self) -> T {
        let lambda = self.wavelength();
        let four_pi = T::lit(4.0) * T::PI();
        self.tx_power_w * self.tx_gain * self.rx_gain * lambda * lambda / (four_pi * four_pi)
    }

    /// [`path_constant`](Self::path_constant) scaled by the conversion efficiency.
    pub fn harvest_constant(&self) -> T {
        self.efficiency * self.path_constant()
    }

    /// Harvested power at `range_m` metres, `η P_T G_T G_R λ² / (4π R)²`.
    pub fn received_power(&self, range_m: T) -> Result<T> {
        if !(range_m > T::zero()) || !range_m.is_finite() {
            return Err(Error::Domain(format!(
                "free-space model needs a positive finite range (got {range_m} m)"
            )));
        }
        Ok(self.harvest_constant() / (range_m * range_m))
    }
}

fn positive<T: Scalar>(field: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be positive and finite (got {v})")))
    }
}

pub fn friis_received_power<T: Scalar>(rf: &RfParams<T>, range_m: T) -> Result<T> {
    rf.received_power(range_m)
}

pub fn wavelength<T: Scalar>(rf: &RfParams<T>) -> T {
    rf.wavelength()
}

pub fn dbi_to_linear<T: Scalar>(dbi: T) -> T {
    T::lit(10.0).powf(dbi / T::lit(10.0))
}

pub fn watts_to_dbm<T: Scalar>(watts: T) -> Result<T> {
    if !(watts > T::zero()) || !watts.is_finite() {
        return Err(Error::Domain(format!("dBm needs a positive finite power (got {watts} W)")));
    }
    Ok(T::lit(10.0) * (watts / T::lit(1e-3)).log10())
}

pub fn dbm_to_watts<T: Scalar>(dbm: T) -> T {
    T::lit(1e-3) * T::lit(10.0).powf(dbm / T::lit(10.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wavelength_at_433_mhz() {
        let rf = RfParams::<f64>::table_one();
        // 299792458 / 433e6 by hand
        assert!((rf.wavelength() - 0.692_361_334_872_979).abs() < 1e-12);
    }

    #[test]
    fn wavelength_unit_and_halving() {
        let rf = RfParams::new(1.0, 0.0, 0.0, SPEED_OF_LIGHT_MPS).unwrap();
        assert_eq!(rf.wavelength(), 1.0);
        let base = RfParams::<f64>::table_one();
        let doubled = base.with_frequency(866e6).unwrap();
        assert!((doubled.wavelength() * 2.0 - base.wavelength()).abs() < 1e-15);
    }

    #[test]
    fn reference_received_power_at_5m() {
        let rf = RfParams::<f64>::table_one();
        // K = 1000 * 10^0.6 * 10^0.6 * λ² / (4π)², evaluated separately
        let k = 1000.0 * 3.981_071_705_534_972f64.powi(2) * 0.692_361_334_872_979f64.powi(2)
            / (16.0 * std::f64::consts::PI.powi(2));
        assert!((rf.path_constant() - 48.111_166_300_693).abs() < 1e-9);
        assert!((k - rf.path_constant()).abs() < 1e-9);
        let p = rf.received_power(5.0).unwrap();
        assert!((p - 1.924_446_652).abs() < 1e-8, "{p}");
    }

    #[test]
    fn cancelling_factors_give_unit_power() {
        let c = 4.0 * std::f64::consts::PI;
        let rf = RfParams::with_all(1.0, 0.0, 0.0, 1.0, c, 1.0).unwrap();
        assert!((rf.received_power(1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_positive_range_rejected() {
        let rf = RfParams::<f64>::table_one();
        assert!(matches!(rf.received_power(0.0), Err(Error::Domain(_))));
        assert!(matches!(friis_received_power(&rf, -3.0), Err(Error::Domain(_))));
    }

    #[test]
    fn bad_parameters_name_field() {
        let err = RfParams::new(1000.0, 6.0, 6.0, -1.0).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { field: "frequency_hz", .. }));
        let err = RfParams::<f64>::table_one().with_efficiency(1.5).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { field: "efficiency", .. }));
        let err = RfParams::new(0.0, 6.0, 6.0, 433e6).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { field: "tx_power_w", .. }));
    }

    #[test]
    fn dbm_conversions() {
        assert_eq!(watts_to_dbm(0.001f64).unwrap(), 0.0);
        assert_eq!(watts_to_dbm(1.0f64).unwrap(), 30.0);
        assert!((watts_to_dbm(0.3559f64).unwrap() - 25.5133).abs() < 1e-4);
        assert!(watts_to_dbm(0.0f64).is_err());
        assert!(watts_to_dbm(-1.0f64).is_err());
    }

    #[test]
    fn efficiency_shifts_power() {
        let rf = RfParams::<f64>::table_one();
        let half = rf.with_efficiency(0.5).unwrap();
        let p = watts_to_dbm(rf.received_power(10.0).unwrap()).unwrap();
        let q = watts_to_dbm(half.received_power(10.0).unwrap()).unwrap();
        assert!((p - q - 3.010_299_956_639_812).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn inverse_square(r in 0.1..1e4f64) {
            let rf = RfParams::<f64>::table_one();
            let p1 = rf.received_power(r).unwrap();
            let p2 = rf.received_power(2.0 * r).unwrap();
            prop_assert!((p1 / p2 - 4.0).abs() < 1e-12);
            prop_assert!((p1 * r * r - rf.harvest_constant()).abs() <= 1e-12 * rf.harvest_constant());
        }

        #[test]
        fn lower_frequency_more_power(f1 in 1e8..3e9f64, f2 in 1e8..3e9f64, r in 1.0..100.0f64) {
            prop_assume!(f1 < f2);
            let rf = RfParams::<f64>::table_one();
            let lo = rf.with_frequency(f1).unwrap().received_power(r).unwrap();
            let hi = rf.with_frequency(f2).unwrap().received_power(r).unwrap();
            prop_assert!(lo > hi);
        }

        #[test]
        fn dbm_round_trip(w in 1e-12..1e6f64) {
            let back = dbm_to_watts(watts_to_dbm(w).unwrap());
            prop_assert!(((back - w) / w).abs() < 1e-12);
        }

        #[test]
        fn dbm_increasing(a in 1e-9..1e3f64, b in 1e-9..1e3f64) {
            prop_assume!(a < b);
            prop_assert!(watts_to_dbm(a).unwrap() < watts_to_dbm(b).unwrap());
        }
    }
}
