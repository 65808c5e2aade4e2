//! `key = value` sweep files.
//!
//! ```text
//! # three relays, fig3 preset
//! preset = fig3
//! relay_count = 3
//! snr_db_start = 0
//! snr_db_stop = 30
//! snr_db_step = 2.5
//! schemes = full, partial
//! methods = analytic, montecarlo
//! samples = 1000000
//! seed = 7
//! ```
//!
//! Lists are comma separated. A custom preset takes its base means from
//! `custom_first_hop`, `custom_second_hop` and `custom_direct`.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::SweepError;
use crate::sweep::{parse_method, parse_scheme, Preset, SweepSpec};

/// Settings read from a file; unset keys leave the spec untouched.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub snr_db_start: Option<f64>,
    pub snr_db_stop: Option<f64>,
    pub snr_db_step: Option<f64>,
    pub preset: Option<String>,
    pub relay_count: Option<usize>,
    pub schemes: Option<String>,
    pub methods: Option<String>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub output_path: Option<PathBuf>,
    pub workers: Option<usize>,
    pub custom_first_hop: Option<Vec<f64>>,
    pub custom_second_hop: Option<Vec<f64>>,
    pub custom_direct: Option<f64>,
}

fn value<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<T, SweepError> {
    raw.parse()
        .map_err(|_| SweepError::Validation(format!("line {line}: bad value {raw:?} for {key}")))
}

pub fn parse_list(raw: &str) -> Result<Vec<f64>, SweepError> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| SweepError::Validation(format!("bad number {:?} in list", s.trim())))
        })
        .collect()
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, SweepError> {
        let mut cfg = ConfigFile::default();
        for (idx, line) in text.lines().enumerate() {
            let n = idx + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, raw) = line
                .split_once('=')
                .ok_or_else(|| SweepError::Validation(format!("line {n}: expected key = value")))?;
            let (key, raw) = (key.trim(), raw.trim());
            match key {
                "snr_db_start" => cfg.snr_db_start = Some(value(n, key, raw)?),
                "snr_db_stop" => cfg.snr_db_stop = Some(value(n, key, raw)?),
                "snr_db_step" => cfg.snr_db_step = Some(value(n, key, raw)?),
                "preset" => cfg.preset = Some(raw.to_string()),
                "relay_count" => cfg.relay_count = Some(value(n, key, raw)?),
                "schemes" => cfg.schemes = Some(raw.to_string()),
                "methods" => cfg.methods = Some(raw.to_string()),
                "samples" => cfg.samples = Some(value(n, key, raw)?),
                "seed" => cfg.seed = Some(value(n, key, raw)?),
                "output_path" => cfg.output_path = Some(PathBuf::from(raw)),
                "workers" => cfg.workers = Some(value(n, key, raw)?),
                "custom_first_hop" => cfg.custom_first_hop = Some(parse_list(raw)?),
                "custom_second_hop" => cfg.custom_second_hop = Some(parse_list(raw)?),
                "custom_direct" => cfg.custom_direct = Some(value(n, key, raw)?),
                other => {
                    return Err(SweepError::Validation(format!(
                        "line {n}: unknown key {other:?}"
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, SweepError> {
        let text = std::fs::read_to_string(path).map_err(|source| SweepError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Writes every set key into `spec`.
    pub fn apply(&self, spec: &mut SweepSpec) -> Result<(), SweepError> {
        if let Some(v) = self.snr_db_start {
            spec.snr_db_start = v;
        }
        if let Some(v) = self.snr_db_stop {
            spec.snr_db_stop = v;
        }
        if let Some(v) = self.snr_db_step {
            spec.snr_db_step = v;
        }
        if let Some(v) = self.relay_count {
            spec.relay_count = v;
        }
        if let Some(v) = &self.schemes {
            spec.schemes = parse_list_with(v, parse_scheme)?;
        }
        if let Some(v) = &self.methods {
            spec.methods = parse_list_with(v, parse_method)?;
        }
        if let Some(v) = self.samples {
            spec.samples = v;
        }
        if let Some(v) = self.seed {
            spec.seed = v;
        }
        let any_custom = self.custom_first_hop.is_some()
            || self.custom_second_hop.is_some()
            || self.custom_direct.is_some();
        let preset = match &self.preset {
            Some(name) => Some(name.as_str()),
            None if any_custom => Some("custom"),
            None => None,
        };
        if let Some(name) = preset {
            spec.preset = preset_from_parts(
                name,
                self.custom_first_hop.clone(),
                self.custom_second_hop.clone(),
                self.custom_direct,
            )?;
            if let (Preset::Custom { first_hop, .. }, None) = (&spec.preset, self.relay_count) {
                spec.relay_count = first_hop.len();
            }
        }
        Ok(())
    }
}

/// Parses a comma list where every item may itself expand (`all`).
pub fn parse_list_with<T: PartialEq>(
    raw: &str,
    item: impl Fn(&str) -> Result<Vec<T>, SweepError>,
) -> Result<Vec<T>, SweepError> {
    let mut out = Vec::new();
    for part in raw.split(',') {
        for v in item(part)? {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

pub fn preset_from_parts(
    name: &str,
    first_hop: Option<Vec<f64>>,
    second_hop: Option<Vec<f64>>,
    direct: Option<f64>,
) -> Result<Preset, SweepError> {
    match name {
        "iid" => Ok(Preset::Iid),
        "fig3" => Ok(Preset::Fig3),
        "custom" => match (first_hop, second_hop, direct) {
            (Some(first_hop), Some(second_hop), Some(direct)) => Ok(Preset::Custom {
                first_hop,
                second_hop,
                direct,
            }),
            _ => Err(SweepError::Validation(
                "custom preset needs first-hop, second-hop and direct means".into(),
            )),
        },
        other => Err(SweepError::Validation(format!("unknown preset {other:?}"))),
    }
}
