//! SNR sweeps and their CSV encoding.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use relaycap_core::analytic::{
    capacity_direct_only, capacity_full_csi, capacity_gain_high_snr, capacity_gain_iid,
    capacity_partial_csi,
};
use relaycap_core::channel::{preset_fig3, preset_iid};
use relaycap_core::quadrature::{
    capacity_direct_only_quadrature, capacity_full_csi_quadrature, capacity_partial_csi_quadrature,
};
use relaycap_core::{
    CapacityEstimate, Method, NetworkConfig, QuadratureSettings, Scheme, SimulationPlan,
};

use crate::error::SweepError;
use crate::parallel;

pub const CSV_HEADER: &str =
    "snr_db,preset,relay_count,scheme,method,capacity_bps_hz,std_error,samples,seed";
pub const GAIN_HEADER: &str = "snr_db,delta_c_exact,delta_c_approx";

/// Channel profile swept over the average SNR `γ̄ = 10^(snr_db/10)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    /// Every link has mean `γ̄`.
    Iid,
    /// `γ̄_ik = γ̄/i`, `γ̄_ki = γ̄/(2i)`, `γ̄_0 = γ̄/100`.
    Fig3,
    /// Explicit base means, each multiplied by `γ̄`.
    Custom {
        first_hop: Vec<f64>,
        second_hop: Vec<f64>,
        direct: f64,
    },
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Iid => "iid",
            Preset::Fig3 => "fig3",
            Preset::Custom { .. } => "custom",
        }
    }

    pub fn config(&self, mean_snr: f64, relay_count: usize) -> Result<NetworkConfig, SweepError> {
        Ok(match self {
            Preset::Iid => preset_iid(mean_snr, relay_count)?,
            Preset::Fig3 => preset_fig3(mean_snr, relay_count)?,
            Preset::Custom {
                first_hop,
                second_hop,
                direct,
            } => NetworkConfig::new(first_hop.clone(), second_hop.clone(), *direct)?
                .scaled(mean_snr)?,
        })
    }
}

pub fn parse_scheme(s: &str) -> Result<Vec<Scheme>, SweepError> {
    match s.trim() {
        "all" => Ok(Scheme::ALL.to_vec()),
        other => other
            .parse()
            .map(|s| vec![s])
            .map_err(|_| SweepError::Validation(format!("unknown scheme {other:?}"))),
    }
}

pub const ALL_METHODS: [Method; 3] = [Method::Analytic, Method::MonteCarlo, Method::Quadrature];

pub fn parse_method(s: &str) -> Result<Vec<Method>, SweepError> {
    match s.trim() {
        "all" => Ok(ALL_METHODS.to_vec()),
        "analytic" => Ok(vec![Method::Analytic]),
        "montecarlo" => Ok(vec![Method::MonteCarlo]),
        "quadrature" => Ok(vec![Method::Quadrature]),
        other => Err(SweepError::Validation(format!("unknown method {other:?}"))),
    }
}

/// Parses `START:STOP:STEP` in dB.
pub fn parse_snr_range(s: &str) -> Result<(f64, f64, f64), SweepError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || SweepError::Validation(format!("expected START:STOP:STEP, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let num = |p: &str| f64::from_str(p.trim()).map_err(|_| bad());
    Ok((num(parts[0])?, num(parts[1])?, num(parts[2])?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub snr_db_start: f64,
    pub snr_db_stop: f64,
    pub snr_db_step: f64,
    pub preset: Preset,
    pub relay_count: usize,
    pub schemes: Vec<Scheme>,
    pub methods: Vec<Method>,
    pub samples: u64,
    pub seed: u64,
    pub quadrature: QuadratureSettings,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            snr_db_start: 0.0,
            snr_db_stop: 30.0,
            snr_db_step: 5.0,
            preset: Preset::Iid,
            relay_count: 1,
            schemes: Scheme::ALL.to_vec(),
            methods: vec![Method::Analytic],
            samples: 100_000,
            seed: 1,
            quadrature: QuadratureSettings::default(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        let fail = |msg: String| Err(SweepError::Validation(msg));
        if !(self.snr_db_step > 0.0 && self.snr_db_step.is_finite()) {
            return fail(format!(
                "snr_db_step must be positive, got {}",
                self.snr_db_step
            ));
        }
        if !(self.snr_db_start.is_finite() && self.snr_db_stop.is_finite()) {
            return fail("SNR range must be finite".into());
        }
        if self.snr_db_start > self.snr_db_stop {
            return fail(format!(
                "snr_db_start {} exceeds snr_db_stop {}",
                self.snr_db_start, self.snr_db_stop
            ));
        }
        if self.relay_count == 0 {
            return fail("relay_count must be at least 1".into());
        }
        if self.schemes.is_empty() || self.methods.is_empty() {
            return fail("at least one scheme and one method are required".into());
        }
        if self.methods.contains(&Method::MonteCarlo) && self.samples == 0 {
            return fail("samples must be at least 1".into());
        }
        if let Preset::Custom {
            first_hop,
            second_hop,
            ..
        } = &self.preset
        {
            if first_hop.len() != self.relay_count || second_hop.len() != self.relay_count {
                return fail(format!(
                    "custom means need {} entries per hop, got {} and {}",
                    self.relay_count,
                    first_hop.len(),
                    second_hop.len()
                ));
            }
        }
        self.quadrature.validate()?;
        // surfaces bad custom means and relay-count limits before any work
        self.preset.config(1.0, self.relay_count)?;
        Ok(())
    }

    /// Grid points `start, start + step, ..` up to `stop` inclusive.
    pub fn grid(&self) -> Vec<f64> {
        let span = (self.snr_db_stop - self.snr_db_start) / self.snr_db_step;
        let n = (span + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|k| self.snr_db_start + k as f64 * self.snr_db_step)
            .collect()
    }
}

/// One CSV data row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub preset: &'static str,
    pub relay_count: usize,
    pub scheme: Scheme,
    pub estimate: CapacityEstimate,
    pub seed: u64,
}

impl fmt::Display for SweepRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.estimate;
        write!(
            f,
            "{},{},{},{},{},{:.16e},",
            self.snr_db, self.preset, self.relay_count, self.scheme, e.method, e.value
        )?;
        if e.method == Method::MonteCarlo {
            write!(f, "{:.16e},{},{}", e.std_error, e.samples, self.seed)
        } else {
            write!(f, ",{},", e.samples)
        }
    }
}

fn evaluate(
    spec: &SweepSpec,
    config: &NetworkConfig,
    scheme: Scheme,
    method: Method,
) -> Result<CapacityEstimate, SweepError> {
    let q = &spec.quadrature;
    Ok(match (method, scheme) {
        (Method::Analytic, Scheme::Full) => capacity_full_csi(config)?,
        (Method::Analytic, Scheme::Partial) => capacity_partial_csi(config)?,
        (Method::Analytic, Scheme::Direct) => capacity_direct_only(config),
        (Method::Quadrature, Scheme::Full) => capacity_full_csi_quadrature(config, q)?,
        (Method::Quadrature, Scheme::Partial) => capacity_partial_csi_quadrature(config, q)?,
        (Method::Quadrature, Scheme::Direct) => capacity_direct_only_quadrature(config, q)?,
        (Method::MonteCarlo, scheme) => {
            let plan = SimulationPlan::new(config.clone(), scheme, spec.samples, spec.seed)?;
            parallel::estimate_capacity(&plan)
        }
    })
}

/// Evaluates every `(snr, scheme, method)` combination, in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    let tasks: Vec<(f64, Scheme, Method)> = spec
        .grid()
        .into_iter()
        .flat_map(|snr| {
            spec.schemes
                .iter()
                .flat_map(move |&s| spec.methods.iter().map(move |&m| (snr, s, m)))
        })
        .collect();
    tasks
        .into_par_iter()
        .map(|(snr_db, scheme, method)| {
            let config = spec.preset.config(db_to_linear(snr_db), spec.relay_count)?;
            Ok(SweepRow {
                snr_db,
                preset: spec.preset.name(),
                relay_count: spec.relay_count,
                scheme,
                estimate: evaluate(spec, &config, scheme, method)?,
                seed: spec.seed,
            })
        })
        .collect()
}

pub fn db_to_linear(snr_db: f64) -> f64 {
    10f64.powf(snr_db / 10.0)
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    out.flush()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainRow {
    pub snr_db: f64,
    pub delta_c_exact: f64,
    pub delta_c_approx: f64,
}

/// Exact and high-SNR capacity gain of full over partial CSI; single relay,
/// i.i.d. links only.
pub fn run_gain(spec: &SweepSpec) -> Result<Vec<GainRow>, SweepError> {
    if spec.preset != Preset::Iid || spec.relay_count != 1 {
        return Err(SweepError::Validation(
            "the gain table is defined for the iid preset with one relay".into(),
        ));
    }
    spec.validate()?;
    spec.grid()
        .into_iter()
        .map(|snr_db| {
            let g = db_to_linear(snr_db);
            Ok(GainRow {
                snr_db,
                delta_c_exact: capacity_gain_iid(g)?,
                delta_c_approx: capacity_gain_high_snr(g)?,
            })
        })
        .collect()
}

pub fn write_gain_csv<W: Write>(rows: &[GainRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{GAIN_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{:.16e},{:.16e}",
            r.snr_db, r.delta_c_exact, r.delta_c_approx
        )?;
    }
    out.flush()
}
