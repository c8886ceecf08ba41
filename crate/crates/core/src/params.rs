//! Protocol constants and the channel-occupancy times derived from them.
//!
//! All durations are microseconds and all rates are bits per microsecond
//! (numerically equal to Mbit/s). Bit counts are exact integers.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the built-in 802.11g profile (54 Mbit/s data, 1 Mbit/s control).
pub const DOT11G_54: &str = "dot11g-54";

/// Default system capacity of each station queue (buffer plus the frame in service).
pub const DEFAULT_QUEUE_CAPACITY: u32 = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhyMacParams {
    pub mac_header_bits: u64,
    /// PLCP preamble.
    pub phy_preamble_bits: u64,
    pub plcp_header_bits: u64,
    pub ack_bits: u64,
    /// Constant payload per frame, E[PL].
    pub payload_bits: u64,
    pub data_rate: f64,
    /// Rate of the PLCP preamble/header and of control frames.
    pub basic_rate: f64,
    pub slot_sigma: f64,
    pub sifs: f64,
    pub difs: f64,
    pub eifs: f64,
    pub ack_timeout: f64,
    /// One-way propagation delay.
    pub prop_delta: f64,
    pub w0: u32,
    pub m: u32,
    pub w_max: u32,
    #[serde(rename = "queue_capacity_K", alias = "queue_capacity_k")]
    pub queue_capacity_k: u32,
}

impl PhyMacParams {
    /// 802.11g at 54 Mbit/s with PLCP and ACK at 1 Mbit/s.
    pub fn dot11g_54() -> Self {
        PhyMacParams {
            mac_header_bits: 28 * 8,
            phy_preamble_bits: 144,
            plcp_header_bits: 48,
            ack_bits: 14 * 8,
            payload_bits: 1025 * 8,
            data_rate: 54.0,
            basic_rate: 1.0,
            slot_sigma: 20.0,
            sifs: 10.0,
            difs: 50.0,
            eifs: 364.0,
            ack_timeout: 364.0,
            prop_delta: 1.0,
            w0: 32,
            m: 5,
            w_max: 1024,
            queue_capacity_k: DEFAULT_QUEUE_CAPACITY,
        }
    }

    pub fn profile(name: &str) -> Result<Self> {
        match name {
            DOT11G_54 => Ok(Self::dot11g_54()),
            other => Err(Error::Config(format!("unknown profile `{other}`"))),
        }
    }

    /// Resolves a built-in profile name, otherwise reads a JSON parameter file.
    pub fn resolve(name_or_path: &str) -> Result<Self> {
        if name_or_path == DOT11G_54 {
            return Self::profile(name_or_path);
        }
        let path = Path::new(name_or_path);
        if path.is_file() {
            Self::from_json_file(path)
        } else {
            Self::profile(name_or_path)
        }
    }

    pub fn from_json_str(json: &str) -> Result<Self> {
        let params: PhyMacParams = serde_json::from_str(json)?;
        params.validate()?;
        Ok(params)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("mac_header_bits", self.mac_header_bits),
            ("phy_preamble_bits", self.phy_preamble_bits),
            ("plcp_header_bits", self.plcp_header_bits),
            ("ack_bits", self.ack_bits),
            ("payload_bits", self.payload_bits),
        ];
        for (field, bits) in counts {
            if bits == 0 {
                return Err(Error::param(field, "bit count must be positive"));
            }
        }
        let durations = [
            ("data_rate", self.data_rate),
            ("basic_rate", self.basic_rate),
            ("slot_sigma", self.slot_sigma),
            ("sifs", self.sifs),
            ("difs", self.difs),
            ("eifs", self.eifs),
            ("ack_timeout", self.ack_timeout),
            ("prop_delta", self.prop_delta),
        ];
        for (field, value) in durations {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::param(
                    field,
                    format!("must be finite and > 0, got {value}"),
                ));
            }
        }
        if self.data_rate < self.basic_rate {
            return Err(Error::param(
                "data_rate",
                format!("{} is below basic_rate {}", self.data_rate, self.basic_rate),
            ));
        }
        if self.w0 < 2 {
            return Err(Error::param("w0", format!("must be >= 2, got {}", self.w0)));
        }
        if self.m < 1 {
            return Err(Error::param("m", "must be >= 1"));
        }
        let top = 2u64
            .checked_pow(self.m)
            .and_then(|scale| scale.checked_mul(self.w0 as u64));
        if top != Some(self.w_max as u64) {
            return Err(Error::param(
                "w_max",
                format!(
                    "expected w0 * 2^m, got {} with w0={} m={}",
                    self.w_max, self.w0, self.m
                ),
            ));
        }
        if self.queue_capacity_k < 1 {
            return Err(Error::param("queue_capacity_K", "must be >= 1"));
        }
        Ok(())
    }

    /// Contention window at backoff stage `stage` (capped at `m`).
    pub fn window(&self, stage: u32) -> u32 {
        self.w0 << stage.min(self.m)
    }
}

impl Default for PhyMacParams {
    fn default() -> Self {
        Self::dot11g_54()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedTimes {
    /// Channel busy time of a successful basic-access exchange.
    pub t_s: f64,
    /// Channel busy time of a collision.
    pub t_c: f64,
    /// PLCP preamble plus header at the basic rate.
    pub t_plcp: f64,
    /// ACK frame including its PLCP overhead.
    pub t_ack: f64,
    pub success_breakdown: Vec<(&'static str, f64)>,
    pub collision_breakdown: Vec<(&'static str, f64)>,
}

impl DerivedTimes {
    pub fn t_s_sum(&self) -> f64 {
        sum_in_order(&self.success_breakdown)
    }

    pub fn t_c_sum(&self) -> f64 {
        sum_in_order(&self.collision_breakdown)
    }
}

fn sum_in_order(parts: &[(&'static str, f64)]) -> f64 {
    parts.iter().fold(0.0, |acc, (_, us)| acc + us)
}

/// Basic-access (DATA + ACK) timing. A collision is terminated by EIFS.
pub fn derive_times(params: &PhyMacParams) -> Result<DerivedTimes> {
    params.validate()?;
    let t_plcp = (params.phy_preamble_bits + params.plcp_header_bits) as f64 / params.basic_rate;
    let t_ack = t_plcp + params.ack_bits as f64 / params.basic_rate;
    let t_frame = (params.mac_header_bits + params.payload_bits) as f64 / params.data_rate;

    let success_breakdown = vec![
        ("plcp", t_plcp),
        ("mac_frame", t_frame),
        ("sifs", params.sifs),
        ("prop_delay", params.prop_delta),
        ("ack", t_ack),
        ("difs", params.difs),
        ("prop_delay", params.prop_delta),
    ];
    let collision_breakdown = vec![
        ("plcp", t_plcp),
        ("mac_frame", t_frame),
        ("prop_delay", params.prop_delta),
        ("eifs", params.eifs),
    ];
    Ok(DerivedTimes {
        t_s: sum_in_order(&success_breakdown),
        t_c: sum_in_order(&collision_breakdown),
        t_plcp,
        t_ack,
        success_breakdown,
        collision_breakdown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plcp_and_ack_at_basic_rate() {
        let times = derive_times(&PhyMacParams::dot11g_54()).unwrap();
        assert_eq!(times.t_plcp, 192.0);
        assert_eq!(times.t_ack, 304.0);
    }

    #[test]
    fn eifs_matches_sifs_ack_difs() {
        let params = PhyMacParams::dot11g_54();
        let times = derive_times(&params).unwrap();
        assert_eq!(params.sifs + times.t_ack + params.difs, 364.0);
        assert_eq!(params.eifs, 364.0);
    }

    #[test]
    fn success_and_collision_totals() {
        // Hand sum: 192 + (224 + 8200)/54 + 10 + 1 + 304 + 50 + 1 = 714,
        // and 192 + 156 + 1 + 364 = 713.
        let times = derive_times(&PhyMacParams::dot11g_54()).unwrap();
        assert!((times.t_s - 714.0).abs() < 1e-9, "{}", times.t_s);
        assert!((times.t_c - 713.0).abs() < 1e-9, "{}", times.t_c);
    }

    #[test]
    fn breakdowns_sum_exactly() {
        let mut params = PhyMacParams::dot11g_54();
        for rate in [6.0, 11.0, 24.0, 36.0, 48.0, 54.0] {
            params.data_rate = rate;
            let times = derive_times(&params).unwrap();
            assert_eq!(times.t_s, times.t_s_sum());
            assert_eq!(times.t_c, times.t_c_sum());
            assert!(times.success_breakdown.iter().all(|(_, v)| *v >= 0.0));
        }
    }

    #[test]
    fn rejects_inconsistent_window() {
        let mut params = PhyMacParams::dot11g_54();
        params.w_max = 512;
        assert!(matches!(
            derive_times(&params),
            Err(Error::InvalidParams { field: "w_max", .. })
        ));
    }

    #[test]
    fn rejects_slow_data_rate() {
        let mut params = PhyMacParams::dot11g_54();
        params.data_rate = 0.5;
        assert!(params.validate().is_err());
        params.data_rate = 54.0;
        params.sifs = 0.0;
        assert!(params.validate().is_err());
        params.sifs = 10.0;
        params.w0 = 1;
        assert!(params.validate().is_err());
    }

    #[test]
    fn json_round_trip_uses_field_names() {
        let params = PhyMacParams::dot11g_54();
        let json = serde_json::to_string(&params).unwrap();
        assert!(json.contains("\"queue_capacity_K\":50"));
        assert_eq!(PhyMacParams::from_json_str(&json).unwrap(), params);
    }

    #[test]
    fn unknown_profile_is_config_error() {
        assert!(matches!(
            PhyMacParams::profile("dot11b"),
            Err(Error::Config(_))
        ));
        assert_eq!(
            PhyMacParams::resolve(DOT11G_54).unwrap(),
            PhyMacParams::dot11g_54()
        );
    }

    #[test]
    fn window_caps_at_last_stage() {
        let params = PhyMacParams::dot11g_54();
        assert_eq!(params.window(0), 32);
        assert_eq!(params.window(5), 1024);
        assert_eq!(params.window(9), 1024);
    }
}
