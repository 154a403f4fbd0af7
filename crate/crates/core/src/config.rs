//! Scenario constants and the structured-text configuration format.
//!
//! Powers are carried in dBm at the boundary and converted to mW once, here.
//! Internally all powers are mW, bandwidths are Hz (exposed in MHz where
//! rates are reported in Mbit/s).

use crate::error::{Error, Result};
use serde::Deserialize;

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

pub fn mw_to_dbm(mw: f64) -> f64 {
    10.0 * mw.log10()
}

/// Log-distance path loss `intercept + slope * log10(d)` in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossModel {
    pub intercept_db: f64,
    pub slope: f64,
}

impl PathLossModel {
    pub fn loss_db(&self, d_m: f64) -> f64 {
        self.intercept_db + self.slope * d_m.log10()
    }

    /// Amplitude gain `10^(-loss/20)`.
    pub fn amplitude_gain(&self, d_m: f64) -> f64 {
        10f64.powf(-self.loss_db(d_m) / 20.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Number of BS clusters (L).
    pub clusters: usize,
    /// BSs per cluster (M), one antenna each.
    pub bs_per_cluster: usize,
    /// Users per cluster (K).
    pub users_per_cluster: usize,
    /// CP antenna count (N).
    pub cp_antennas: usize,
    /// mmWave access bandwidth in Hz.
    pub access_bandwidth_hz: f64,
    /// Microwave fronthaul bandwidth in Hz.
    pub fronthaul_bandwidth_hz: f64,
    /// Thermal noise density in dBm/Hz.
    pub noise_density_dbm_hz: f64,
    /// Power-splitter noise power in dBm.
    pub split_noise_dbm: f64,
    /// Energy conversion efficiency, in (0, 1].
    pub eta: f64,
    /// Per-user minimum harvested energy in mW (uniform across users).
    pub e_min_mw: f64,
    /// CP transmit power budget in dBm.
    pub p_cp_max_dbm: f64,
    /// Per-BS transmit power budget in dBm (uniform across BSs).
    pub p_bs_max_dbm: f64,
    /// Radius of the disc users and BSs are dropped in, meters.
    pub cell_radius_m: f64,
    /// CP to cluster-center distance, meters.
    pub cp_distance_m: f64,
    /// Access-band path loss model.
    pub access_pathloss: PathLossModel,
    /// Fronthaul-band path loss model.
    pub fronthaul_pathloss: PathLossModel,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            clusters: 2,
            bs_per_cluster: 3,
            users_per_cluster: 2,
            cp_antennas: 8,
            access_bandwidth_hz: 40e6,
            fronthaul_bandwidth_hz: 20e6,
            noise_density_dbm_hz: -174.0,
            split_noise_dbm: -100.0,
            eta: 0.8,
            e_min_mw: 1e-9,
            p_cp_max_dbm: 40.0,
            p_bs_max_dbm: 30.0,
            cell_radius_m: 40.0,
            cp_distance_m: 300.0,
            access_pathloss: PathLossModel {
                intercept_db: 69.7,
                slope: 24.0,
            },
            fronthaul_pathloss: PathLossModel {
                intercept_db: 38.0,
                slope: 30.0,
            },
        }
    }
}

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(Error::Config(msg));
        if self.clusters < 1
            || self.bs_per_cluster < 1
            || self.users_per_cluster < 1
            || self.cp_antennas < 1
        {
            return err("clusters, bs_per_cluster, users_per_cluster and cp_antennas must all be >= 1".into());
        }
        if !(self.access_bandwidth_hz > 0.0) || !(self.fronthaul_bandwidth_hz > 0.0) {
            return err("bandwidths must be positive".into());
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return err(format!("eta must lie in (0, 1], got {}", self.eta));
        }
        if !(self.e_min_mw >= 0.0) {
            return err(format!("e_min_mw must be >= 0, got {}", self.e_min_mw));
        }
        if !(self.cell_radius_m > 0.0) || !(self.cp_distance_m > 0.0) {
            return err("cell_radius_m and cp_distance_m must be positive".into());
        }
        if !self.p_cp_max_dbm.is_finite() || !self.p_bs_max_dbm.is_finite() {
            return err("power budgets must be finite".into());
        }
        Ok(())
    }

    /// Thermal noise density in mW/Hz.
    pub fn noise_mw_per_hz(&self) -> f64 {
        dbm_to_mw(self.noise_density_dbm_hz)
    }

    /// Access-band noise power `B_mm * delta^2` in mW.
    pub fn access_noise_mw(&self) -> f64 {
        self.access_bandwidth_hz * self.noise_mw_per_hz()
    }

    /// Fronthaul-band noise power `B_mc * delta^2` in mW.
    pub fn fronthaul_noise_mw(&self) -> f64 {
        self.fronthaul_bandwidth_hz * self.noise_mw_per_hz()
    }

    /// Power-splitter noise `delta_u^2` in mW.
    pub fn split_noise_mw(&self) -> f64 {
        dbm_to_mw(self.split_noise_dbm)
    }

    pub fn p_cp_max_mw(&self) -> f64 {
        dbm_to_mw(self.p_cp_max_dbm)
    }

    pub fn p_bs_max_mw(&self) -> f64 {
        dbm_to_mw(self.p_bs_max_dbm)
    }

    pub fn access_bandwidth_mhz(&self) -> f64 {
        self.access_bandwidth_hz / 1e6
    }

    pub fn fronthaul_bandwidth_mhz(&self) -> f64 {
        self.fronthaul_bandwidth_hz / 1e6
    }

    /// Parse the sectioned key/value configuration format. Unset keys keep
    /// their default values; parse errors carry line/column positions.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ConfigFile =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let cfg = file.merge_over(SystemConfig::default());
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read {}: {}", path.display(), e))
        })?;
        Self::from_toml_str(&text)
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    system: SystemSection,
    #[serde(default)]
    powers: PowersSection,
    #[serde(default)]
    energy: EnergySection,
    #[serde(default)]
    pathloss: PathLossSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemSection {
    clusters: Option<usize>,
    bs_per_cluster: Option<usize>,
    users_per_cluster: Option<usize>,
    cp_antennas: Option<usize>,
    access_bandwidth_hz: Option<f64>,
    fronthaul_bandwidth_hz: Option<f64>,
    noise_density_dbm_hz: Option<f64>,
    split_noise_dbm: Option<f64>,
    cell_radius_m: Option<f64>,
    cp_distance_m: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PowersSection {
    p_cp_max_dbm: Option<f64>,
    p_bs_max_dbm: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnergySection {
    eta: Option<f64>,
    e_min_mw: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathLossSection {
    access_intercept_db: Option<f64>,
    access_slope: Option<f64>,
    fronthaul_intercept_db: Option<f64>,
    fronthaul_slope: Option<f64>,
}

impl ConfigFile {
    fn merge_over(self, mut cfg: SystemConfig) -> SystemConfig {
        macro_rules! take {
            ($sec:expr, $field:ident) => {
                if let Some(v) = $sec.$field {
                    cfg.$field = v;
                }
            };
        }
        take!(self.system, clusters);
        take!(self.system, bs_per_cluster);
        take!(self.system, users_per_cluster);
        take!(self.system, cp_antennas);
        take!(self.system, access_bandwidth_hz);
        take!(self.system, fronthaul_bandwidth_hz);
        take!(self.system, noise_density_dbm_hz);
        take!(self.system, split_noise_dbm);
        take!(self.system, cell_radius_m);
        take!(self.system, cp_distance_m);
        take!(self.powers, p_cp_max_dbm);
        take!(self.powers, p_bs_max_dbm);
        take!(self.energy, eta);
        take!(self.energy, e_min_mw);
        if let Some(v) = self.pathloss.access_intercept_db {
            cfg.access_pathloss.intercept_db = v;
        }
        if let Some(v) = self.pathloss.access_slope {
            cfg.access_pathloss.slope = v;
        }
        if let Some(v) = self.pathloss.fronthaul_intercept_db {
            cfg.fronthaul_pathloss.intercept_db = v;
        }
        if let Some(v) = self.pathloss.fronthaul_slope {
            cfg.fronthaul_pathloss.slope = v;
        }
        cfg
    }
}
