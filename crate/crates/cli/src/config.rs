//! Experiment configuration: a versioned JSON file merged with command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use pwlab_core::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Eigensweep,
    Shannon,
    Frames,
    Atomic,
    Cantor,
    Lacunary,
    Young,
    Osc,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = serde_json::to_value(self).expect("experiment names serialize");
        f.write_str(name.as_str().unwrap_or_default())
    }
}

/// Inclusive level range written `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelRange {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for LevelRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a, b.trim_start_matches('=')),
            None => (s, s),
        };
        let lo = a.trim().parse::<u32>().map_err(|e| format!("level range {s:?}: {e}"))?;
        let hi = b.trim().parse::<u32>().map_err(|e| format!("level range {s:?}: {e}"))?;
        if lo > hi {
            return Err(format!("level range {s:?} is empty"));
        }
        Ok(LevelRange { lo, hi })
    }
}

impl fmt::Display for LevelRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl Serialize for LevelRange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LevelRange {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// An exponent given as a decimal, a fraction `a/b`, or `inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(pub f64);

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "∞") {
            return Ok(Exponent(f64::INFINITY));
        }
        let v = match s.split_once('/') {
            Some((a, b)) => {
                let a: f64 = a.trim().parse().map_err(|e| format!("exponent {s:?}: {e}"))?;
                let b: f64 = b.trim().parse().map_err(|e| format!("exponent {s:?}: {e}"))?;
                a / b
            }
            None => s.parse().map_err(|e| format!("exponent {s:?}: {e}"))?,
        };
        if v.is_nan() {
            return Err(format!("exponent {s:?} is not a number"));
        }
        Ok(Exponent(v))
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str("inf")
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(v) => Ok(Exponent(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Every tunable parameter. Unset fields take the experiment's default; fields that do not
/// apply to the experiment are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Kernel bandwidth ω
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    /// Sampling rate R (samples at k/(2R))
    #[arg(long = "R", visible_alias = "rate")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    /// Grid half width T
    #[arg(long = "T", visible_alias = "half-width")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    /// Grid spacing h
    #[arg(long = "h", visible_alias = "spacing")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    /// Level range, e.g. 0..6
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<LevelRange>,
    /// Cantor recursion depth
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    /// Comma-separated exponents, e.g. 4/3,2,4
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Exponent>>,
    /// Number of lacunary levels J
    #[arg(long = "J", visible_alias = "levels")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<u32>,
    /// Taper width of the smooth window
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    /// Spacing of the sampling family X
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_spacing: Option<f64>,
    /// Half width of the partition cells
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bupu_half: Option<f64>,
    /// Exponent of the reconstruction space
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Exponent>,
    /// Stopping tolerance
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Half width of the region where samples are taken
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reach: Option<f64>,
    /// Number of random band-limited inputs
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functions: Option<usize>,
}

macro_rules! merge_fields {
    ($hi:expr, $lo:expr, $($f:ident),*) => {
        Params { $($f: $hi.$f.clone().or_else(|| $lo.$f.clone())),* }
    };
}

impl Params {
    /// Field-wise `self` over `other`.
    pub fn over(&self, other: &Params) -> Params {
        merge_fields!(
            self, other, omega, rate, half_width, spacing, n, depth, p, levels, margin, x_spacing, bupu_half, r, tol,
            max_iter, trials, seed, reach, functions
        )
    }

    fn set_keys(&self) -> Vec<String> {
        match serde_json::to_value(self) {
            Ok(serde_json::Value::Object(m)) => m.keys().cloned().collect(),
            _ => Vec::new(),
        }
    }
}

pub fn defaults(e: Experiment) -> Params {
    let base = Params { half_width: Some(64.0), ..Params::default() };
    match e {
        Experiment::Eigensweep => Params { omega: Some(0.5), n: Some(LevelRange { lo: 0, hi: 6 }), ..Params::default() },
        Experiment::Shannon => Params {
            omega: Some(0.5),
            rate: Some(0.5),
            spacing: Some(1.0 / 64.0),
            reach: Some(4096.0),
            functions: Some(3),
            seed: Some(1),
            ..base
        },
        Experiment::Frames | Experiment::Atomic => Params {
            omega: Some(0.5),
            spacing: Some(1.0 / 64.0),
            margin: Some(0.25),
            x_spacing: Some(0.125),
            bupu_half: Some(0.125),
            r: Some(Exponent(2.0)),
            tol: Some(if e == Experiment::Frames { 1e-9 } else { 1e-6 }),
            max_iter: Some(50),
            functions: Some(3),
            seed: Some(1),
            ..base
        },
        Experiment::Cantor => Params {
            depth: Some(12),
            p: Some(vec![Exponent(4.0 / 3.0), Exponent(2.0), Exponent(4.0)]),
            spacing: Some(1.0 / 32.0),
            trials: Some(1000),
            seed: Some(1),
            ..base
        },
        Experiment::Lacunary => {
            Params { levels: Some(6), p: Some(vec![Exponent(2.0)]), spacing: Some(1.0 / 128.0), ..base }
        }
        Experiment::Young => {
            Params { half_width: Some(8.0), spacing: Some(1.0 / 16.0), trials: Some(200), seed: Some(1), ..Params::default() }
        }
        Experiment::Osc => Params {
            omega: Some(0.5),
            n: Some(LevelRange { lo: 0, hi: 6 }),
            spacing: Some(1.0 / 256.0),
            ..base
        },
    }
}

/// The file form of a configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub schema_version: u32,
    pub experiment: Experiment,
    #[serde(default)]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        let file: ConfigFile = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        Ok(file)
    }
}

/// A fully resolved configuration; this is what artifacts echo.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub experiment: Experiment,
    pub params: Params,
}

impl ExperimentConfig {
    /// Flags over file over defaults; keys that the experiment does not use are an error.
    pub fn resolve(experiment: Experiment, flags: &Params, file: Option<&ConfigFile>) -> Result<Self> {
        if let Some(f) = file {
            if f.experiment != experiment {
                return Err(Error::InvalidArgument(format!(
                    "config file is for {} but {experiment} was requested",
                    f.experiment
                )));
            }
        }
        let given = match file {
            Some(f) => flags.over(&f.params),
            None => flags.clone(),
        };
        let base = defaults(experiment);
        let allowed = base.set_keys();
        if let Some(key) = given.set_keys().into_iter().find(|k| !allowed.contains(k)) {
            return Err(Error::InvalidArgument(format!("{key} does not apply to {experiment}")));
        }
        Ok(ExperimentConfig { schema_version: SCHEMA_VERSION, experiment, params: given.over(&base) })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configs serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_exponents_parse() {
        assert_eq!("0..6".parse::<LevelRange>().unwrap(), LevelRange { lo: 0, hi: 6 });
        assert_eq!("2..=3".parse::<LevelRange>().unwrap(), LevelRange { lo: 2, hi: 3 });
        assert_eq!("4".parse::<LevelRange>().unwrap(), LevelRange { lo: 4, hi: 4 });
        assert!("5..2".parse::<LevelRange>().is_err());
        assert_eq!("4/3".parse::<Exponent>().unwrap(), Exponent(4.0 / 3.0));
        assert_eq!("inf".parse::<Exponent>().unwrap().0, f64::INFINITY);
        assert!("x".parse::<Exponent>().is_err());
    }

    #[test]
    fn flags_win_over_the_file() {
        let file: ConfigFile = serde_json::from_str(
            r#"{"schema_version": 1, "experiment": "cantor", "params": {"depth": 8, "p": [2, "inf"]}}"#,
        )
        .unwrap();
        let flags = Params { depth: Some(10), ..Params::default() };
        let c = ExperimentConfig::resolve(Experiment::Cantor, &flags, Some(&file)).unwrap();
        assert_eq!(c.params.depth, Some(10));
        assert_eq!(c.params.p, Some(vec![Exponent(2.0), Exponent(f64::INFINITY)]));
        assert_eq!(c.params.spacing, Some(1.0 / 32.0));
    }

    #[test]
    fn foreign_keys_and_versions_are_rejected() {
        let flags = Params { depth: Some(3), ..Params::default() };
        let err = ExperimentConfig::resolve(Experiment::Eigensweep, &flags, None).unwrap_err();
        assert_eq!(err.precondition(), "argument");
        let file: std::result::Result<ConfigFile, _> =
            serde_json::from_str(r#"{"schema_version": 1, "experiment": "osc", "params": {"colour": 1}}"#);
        assert!(file.is_err());
    }

    #[test]
    fn echo_round_trips() {
        let c = ExperimentConfig::resolve(Experiment::Lacunary, &Params::default(), None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["params"]["levels"], 6);
        let back: Params = serde_json::from_value(v["params"].clone()).unwrap();
        assert_eq!(back, c.params);
    }
}
