//! Physical-layer model: seeded channel drops and exact evaluation of the
//! fronthaul/access rates, SINRs, harvested energy and feasibility slacks.
//!
//! Conventions: rates in Mbit/s (log base 2), powers in mW. All functions are
//! pure; channel generation takes an explicit seed and never touches global
//! state.

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::C64;
use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

/// Radio band selector for path-loss evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    Access,
    Fronthaul,
}

/// Path loss in dB at distance `d_m` meters on the selected band.
pub fn pathloss_db(config: &SystemConfig, d_m: f64, band: Band) -> Result<f64> {
    if !(d_m > 0.0) {
        return Err(Error::Domain(format!(
            "path loss needs a positive distance, got {d_m}"
        )));
    }
    let model = match band {
        Band::Access => &config.access_pathloss,
        Band::Fronthaul => &config.fronthaul_pathloss,
    };
    Ok(model.loss_db(d_m))
}

/// Drop coordinates for one Monte Carlo realization. The CP sits at the
/// origin; cluster centers sit at fixed angles on the CP-distance circle.
#[derive(Debug, Clone)]
pub struct DropGeometry {
    pub cluster_centers: Vec<[f64; 2]>,
    /// `bs[l][m]` position of BS (l,m).
    pub bs: Vec<Vec<[f64; 2]>>,
    /// `users[l][k]` position of user (l,k).
    pub users: Vec<Vec<[f64; 2]>>,
}

pub fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// One channel drop: fronthaul rows `h[l][m]` (length N) from the CP to BS
/// (l,m), and access rows `g[j][l][k]` (length M) from cluster j's BSs to
/// user (l,k).
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub fronthaul: Vec<Vec<DVector<C64>>>,
    pub access: Vec<Vec<Vec<DVector<C64>>>>,
    pub seed: u64,
    pub geometry: DropGeometry,
}

impl ChannelRealization {
    pub fn clusters(&self) -> usize {
        self.fronthaul.len()
    }

    pub fn bs_per_cluster(&self) -> usize {
        self.fronthaul[0].len()
    }

    pub fn users_per_cluster(&self) -> usize {
        self.access[0][0].len()
    }

    pub fn cp_antennas(&self) -> usize {
        self.fronthaul[0][0].len()
    }
}

fn uniform_in_disc(rng: &mut impl Rng, center: [f64; 2], radius: f64) -> [f64; 2] {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = 2.0 * std::f64::consts::PI * rng.random::<f64>();
    [center[0] + r * theta.cos(), center[1] + r * theta.sin()]
}

/// Unit-variance circularly-symmetric complex Gaussian sample.
fn cn01(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Generate one seeded channel drop. Users and BSs are uniform in each
/// cluster disc; every channel entry is Rayleigh small-scale fading times the
/// amplitude gain of the band's log-distance path loss. The same
/// (config, seed) pair reproduces the drop bit for bit.
pub fn generate_channels(config: &SystemConfig, seed: u64) -> Result<ChannelRealization> {
    config.validate()?;
    let (l_n, m_n, k_n, n_n) = (
        config.clusters,
        config.bs_per_cluster,
        config.users_per_cluster,
        config.cp_antennas,
    );
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    let cluster_centers: Vec<[f64; 2]> = (0..l_n)
        .map(|l| {
            let angle = 2.0 * std::f64::consts::PI * l as f64 / l_n as f64;
            [
                config.cp_distance_m * angle.cos(),
                config.cp_distance_m * angle.sin(),
            ]
        })
        .collect();

    // Geometry first, then fronthaul entries, then access entries; the draw
    // order is part of the determinism contract.
    let bs: Vec<Vec<[f64; 2]>> = cluster_centers
        .iter()
        .map(|&c| {
            (0..m_n)
                .map(|_| uniform_in_disc(&mut rng, c, config.cell_radius_m))
                .collect()
        })
        .collect();
    let users: Vec<Vec<[f64; 2]>> = cluster_centers
        .iter()
        .map(|&c| {
            (0..k_n)
                .map(|_| uniform_in_disc(&mut rng, c, config.cell_radius_m))
                .collect()
        })
        .collect();

    let cp = [0.0, 0.0];
    let mut fronthaul = Vec::with_capacity(l_n);
    for l in 0..l_n {
        let mut row = Vec::with_capacity(m_n);
        for m in 0..m_n {
            let d = distance(cp, bs[l][m]);
            let amp = config.fronthaul_pathloss.amplitude_gain(d);
            row.push(DVector::from_fn(n_n, |_, _| cn01(&mut rng) * amp));
        }
        fronthaul.push(row);
    }

    let mut access = Vec::with_capacity(l_n);
    for j in 0..l_n {
        let mut per_l = Vec::with_capacity(l_n);
        for l in 0..l_n {
            let mut per_k = Vec::with_capacity(k_n);
            for k in 0..k_n {
                let g = DVector::from_fn(m_n, |m, _| {
                    let d = distance(bs[j][m], users[l][k]);
                    cn01(&mut rng) * config.access_pathloss.amplitude_gain(d)
                });
                per_k.push(g);
            }
            per_l.push(per_k);
        }
        access.push(per_l);
    }

    Ok(ChannelRealization {
        fronthaul,
        access,
        seed,
        geometry: DropGeometry {
            cluster_centers,
            bs,
            users,
        },
    })
}

fn check_beam_dims(chan: &ChannelRealization, v_all: &[DVector<C64>]) -> Result<()> {
    if v_all.len() != chan.clusters() {
        return Err(Error::Dimension {
            what: "fronthaul beamformer count",
            expected: chan.clusters(),
            got: v_all.len(),
        });
    }
    for v in v_all {
        if v.len() != chan.cp_antennas() {
            return Err(Error::Dimension {
                what: "fronthaul beamformer length",
                expected: chan.cp_antennas(),
                got: v.len(),
            });
        }
    }
    Ok(())
}

fn check_access_dims(chan: &ChannelRealization, w_all: &[Vec<DVector<C64>>]) -> Result<()> {
    if w_all.len() != chan.clusters() {
        return Err(Error::Dimension {
            what: "access beamformer cluster count",
            expected: chan.clusters(),
            got: w_all.len(),
        });
    }
    for per_k in w_all {
        if per_k.len() != chan.users_per_cluster() {
            return Err(Error::Dimension {
                what: "access beamformer user count",
                expected: chan.users_per_cluster(),
                got: per_k.len(),
            });
        }
        for w in per_k {
            if w.len() != chan.bs_per_cluster() {
                return Err(Error::Dimension {
                    what: "access beamformer length",
                    expected: chan.bs_per_cluster(),
                    got: w.len(),
                });
            }
        }
    }
    Ok(())
}

/// |row . col|^2 for a channel row and a beamforming vector.
fn gain(row: &DVector<C64>, col: &DVector<C64>) -> f64 {
    row.dot(col).norm_sqr()
}

/// Fronthaul rate of BS (l,m) in Mbit/s: the multicast beam of cluster l
/// against the beams of all other clusters plus thermal noise.
pub fn fronthaul_rate(
    chan: &ChannelRealization,
    v_all: &[DVector<C64>],
    l: usize,
    m: usize,
    config: &SystemConfig,
) -> Result<f64> {
    check_beam_dims(chan, v_all)?;
    let h = &chan.fronthaul[l][m];
    let signal = gain(h, &v_all[l]);
    let mut interference = 0.0;
    for (j, v) in v_all.iter().enumerate() {
        if j != l {
            interference += gain(h, v);
        }
    }
    let snr = signal / (interference + config.fronthaul_noise_mw());
    Ok(config.fronthaul_bandwidth_mhz() * (1.0 + snr).log2())
}

/// Multicast rate of cluster l: the worst BS decides.
pub fn cluster_fronthaul_rate(
    chan: &ChannelRealization,
    v_all: &[DVector<C64>],
    l: usize,
    config: &SystemConfig,
) -> Result<f64> {
    let mut min_rate = f64::INFINITY;
    for m in 0..chan.bs_per_cluster() {
        min_rate = min_rate.min(fronthaul_rate(chan, v_all, l, m, config)?);
    }
    Ok(min_rate)
}

/// Post-split SINR of user (l,k). The splitter diverts a `1/beta` share of
/// its own noise into the decoder branch.
pub fn access_sinr(
    chan: &ChannelRealization,
    w_all: &[Vec<DVector<C64>>],
    beta: f64,
    l: usize,
    k: usize,
    config: &SystemConfig,
) -> Result<f64> {
    check_access_dims(chan, w_all)?;
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Domain(format!(
            "split ratio must lie in (0, 1], got {beta}"
        )));
    }
    let g_own = &chan.access[l][l][k];
    let signal = gain(g_own, &w_all[l][k]);
    let mut interference = 0.0;
    for i in 0..chan.users_per_cluster() {
        if i != k {
            interference += gain(g_own, &w_all[l][i]);
        }
    }
    for j in 0..chan.clusters() {
        if j == l {
            continue;
        }
        let g_other = &chan.access[j][l][k];
        for i in 0..chan.users_per_cluster() {
            interference += gain(g_other, &w_all[j][i]);
        }
    }
    let noise = config.access_noise_mw() + config.split_noise_mw() / beta;
    Ok(signal / (interference + noise))
}

/// Access rate of user (l,k) in Mbit/s.
pub fn access_rate(
    chan: &ChannelRealization,
    w_all: &[Vec<DVector<C64>>],
    beta: f64,
    l: usize,
    k: usize,
    config: &SystemConfig,
) -> Result<f64> {
    let sinr = access_sinr(chan, w_all, beta, l, k, config)?;
    Ok(config.access_bandwidth_mhz() * (1.0 + sinr).log2())
}

/// Harvested energy of user (l,k) in mW: the `1-beta` share of everything the
/// antenna picks up, scaled by the conversion efficiency.
pub fn harvested_energy_mw(
    chan: &ChannelRealization,
    w_all: &[Vec<DVector<C64>>],
    beta: f64,
    l: usize,
    k: usize,
    config: &SystemConfig,
) -> Result<f64> {
    check_access_dims(chan, w_all)?;
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Domain(format!(
            "split ratio must lie in (0, 1], got {beta}"
        )));
    }
    let mut received = 0.0;
    for j in 0..chan.clusters() {
        let g = &chan.access[j][l][k];
        for i in 0..chan.users_per_cluster() {
            received += gain(g, &w_all[j][i]);
        }
    }
    Ok(config.eta * (1.0 - beta) * (received + config.access_noise_mw()))
}

/// A complete beamforming design with its achieved rates and energies.
#[derive(Debug, Clone)]
pub struct BeamformingSolution {
    /// Fronthaul multicast beams, one length-N vector per cluster.
    pub v: Vec<DVector<C64>>,
    /// Access beams, `w[l][k]` of length M.
    pub w: Vec<Vec<DVector<C64>>>,
    /// Split ratios in (0, 1).
    pub beta: Vec<Vec<f64>>,
    /// Achieved access rate per user, Mbit/s.
    pub per_user_rate: Vec<Vec<f64>>,
    /// Achieved multicast rate per cluster, Mbit/s.
    pub fronthaul_rate: Vec<f64>,
    /// Harvested energy per user, mW.
    pub harvested: Vec<Vec<f64>>,
    /// Sum of `per_user_rate`, Mbit/s.
    pub sum_rate: f64,
}

impl BeamformingSolution {
    /// Evaluate a design against a channel drop. Rates and energies are
    /// computed here so the stored record is always self-consistent.
    pub fn from_vectors(
        chan: &ChannelRealization,
        config: &SystemConfig,
        v: Vec<DVector<C64>>,
        w: Vec<Vec<DVector<C64>>>,
        beta: Vec<Vec<f64>>,
    ) -> Result<Self> {
        check_beam_dims(chan, &v)?;
        check_access_dims(chan, &w)?;
        for row in &beta {
            for &b in row {
                if !(b > 0.0 && b < 1.0) {
                    return Err(Error::Domain(format!(
                        "solution split ratios must lie in (0, 1), got {b}"
                    )));
                }
            }
        }
        let (l_n, k_n) = (chan.clusters(), chan.users_per_cluster());
        let mut per_user_rate = vec![vec![0.0; k_n]; l_n];
        let mut harvested = vec![vec![0.0; k_n]; l_n];
        let mut fronthaul = vec![0.0; l_n];
        let mut sum_rate = 0.0;
        for l in 0..l_n {
            for k in 0..k_n {
                per_user_rate[l][k] = access_rate(chan, &w, beta[l][k], l, k, config)?;
                harvested[l][k] = harvested_energy_mw(chan, &w, beta[l][k], l, k, config)?;
                sum_rate += per_user_rate[l][k];
            }
            fronthaul[l] = cluster_fronthaul_rate(chan, &v, l, config)?;
        }
        Ok(Self {
            v,
            w,
            beta,
            per_user_rate,
            fronthaul_rate: fronthaul,
            harvested,
            sum_rate,
        })
    }
}

/// Signed slacks of every constraint of the joint design problem; positive
/// means satisfied with margin. Slacks are raw (mW, Mbit/s); the normalized
/// view divides by each constraint's natural scale.
#[derive(Debug, Clone)]
pub struct FeasibilityReport {
    /// `E_lk - E_min` in mW.
    pub energy_slack_mw: Vec<Vec<f64>>,
    /// `P_cp_max - sum_l ||v_l||^2` in mW.
    pub cp_power_slack_mw: f64,
    /// `P_bs_max - sum_k |w_lk(m)|^2` in mW, per (l,m).
    pub bs_power_slack_mw: Vec<Vec<f64>>,
    /// `R_l^FH - sum_k R_lk^AC` in Mbit/s.
    pub fronthaul_slack_mbps: Vec<f64>,
    /// `min(beta, 1 - beta)`, positive strictly inside (0, 1).
    pub beta_range_slack: Vec<Vec<f64>>,
    scales: ReportScales,
}

#[derive(Debug, Clone)]
struct ReportScales {
    energy: f64,
    cp_power: f64,
    bs_power: f64,
    fronthaul: Vec<f64>,
}

impl FeasibilityReport {
    /// Worst normalized slack over all constraints (>= 0 means feasible).
    pub fn min_normalized_slack(&self) -> f64 {
        let mut worst = f64::INFINITY;
        for row in &self.energy_slack_mw {
            for &s in row {
                worst = worst.min(s / self.scales.energy);
            }
        }
        worst = worst.min(self.cp_power_slack_mw / self.scales.cp_power);
        for row in &self.bs_power_slack_mw {
            for &s in row {
                worst = worst.min(s / self.scales.bs_power);
            }
        }
        for (l, &s) in self.fronthaul_slack_mbps.iter().enumerate() {
            worst = worst.min(s / self.scales.fronthaul[l]);
        }
        for row in &self.beta_range_slack {
            for &s in row {
                worst = worst.min(s);
            }
        }
        worst
    }

    pub fn is_feasible(&self, tol: f64) -> bool {
        self.min_normalized_slack() >= -tol
    }

    /// Name and normalized slack of the most violated constraint.
    pub fn worst_constraint(&self) -> (String, f64) {
        let mut name = String::from("none");
        let mut worst = f64::INFINITY;
        let mut consider = |n: String, s: f64| {
            if s < worst {
                worst = s;
                name = n;
            }
        };
        for (l, row) in self.energy_slack_mw.iter().enumerate() {
            for (k, &s) in row.iter().enumerate() {
                consider(format!("min_harvested_energy[{l}][{k}]"), s / self.scales.energy);
            }
        }
        consider("cp_power_budget".into(), self.cp_power_slack_mw / self.scales.cp_power);
        for (l, row) in self.bs_power_slack_mw.iter().enumerate() {
            for (m, &s) in row.iter().enumerate() {
                consider(format!("bs_power_budget[{l}][{m}]"), s / self.scales.bs_power);
            }
        }
        for (l, &s) in self.fronthaul_slack_mbps.iter().enumerate() {
            consider(format!("fronthaul_capacity[{l}]"), s / self.scales.fronthaul[l]);
        }
        for (l, row) in self.beta_range_slack.iter().enumerate() {
            for (k, &s) in row.iter().enumerate() {
                consider(format!("split_ratio_range[{l}][{k}]"), s);
            }
        }
        (name, worst)
    }
}

/// Recompute every constraint of the design problem from the solution's raw
/// vectors and report signed slacks.
pub fn check_feasible(
    chan: &ChannelRealization,
    solution: &BeamformingSolution,
    config: &SystemConfig,
) -> Result<FeasibilityReport> {
    check_beam_dims(chan, &solution.v)?;
    check_access_dims(chan, &solution.w)?;
    let (l_n, m_n, k_n) = (
        chan.clusters(),
        chan.bs_per_cluster(),
        chan.users_per_cluster(),
    );

    let mut energy = vec![vec![0.0; k_n]; l_n];
    let mut beta_range = vec![vec![0.0; k_n]; l_n];
    let mut fronthaul = vec![0.0; l_n];
    let mut fh_scale = vec![1.0; l_n];
    for l in 0..l_n {
        let mut access_sum = 0.0;
        for k in 0..k_n {
            let beta = solution.beta[l][k];
            beta_range[l][k] = beta.min(1.0 - beta);
            let b_eval = beta.clamp(1e-15, 1.0);
            energy[l][k] =
                harvested_energy_mw(chan, &solution.w, b_eval, l, k, config)? - config.e_min_mw;
            access_sum += access_rate(chan, &solution.w, b_eval, l, k, config)?;
        }
        let fh = cluster_fronthaul_rate(chan, &solution.v, l, config)?;
        fronthaul[l] = fh - access_sum;
        fh_scale[l] = fh.max(1.0);
    }

    let used_cp: f64 = solution.v.iter().map(|v| v.norm_squared()).sum();
    let cp_power_slack = config.p_cp_max_mw() - used_cp;

    let mut bs_power = vec![vec![0.0; m_n]; l_n];
    for l in 0..l_n {
        for m in 0..m_n {
            let used: f64 = (0..k_n).map(|k| solution.w[l][k][m].norm_sqr()).sum();
            bs_power[l][m] = config.p_bs_max_mw() - used;
        }
    }

    Ok(FeasibilityReport {
        energy_slack_mw: energy,
        cp_power_slack_mw: cp_power_slack,
        bs_power_slack_mw: bs_power,
        fronthaul_slack_mbps: fronthaul,
        beta_range_slack: beta_range,
        scales: ReportScales {
            energy: config.e_min_mw.max(config.eta * config.access_noise_mw()),
            cp_power: config.p_cp_max_mw(),
            bs_power: config.p_bs_max_mw(),
            fronthaul: fh_scale,
        },
    })
}
