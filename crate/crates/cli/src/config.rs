use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hankel_core::catalogue::Params;
use serde::Serialize;

pub const OUT_DIR_ENV: &str = "HANKEL_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub phi: f64,
    pub ode: f64,
    pub factorization: f64,
    pub commutator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { phi: 1e-8, ode: 1e-8, factorization: 1e-6, commutator: 1e-3 }
    }
}

/// Everything a command needs besides the case id.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: Params,
    pub grid_n: Option<usize>,
    pub tolerances: Tolerances,
    pub out_dir: PathBuf,
    pub format: Format,
}

/// Values read from a flat `key = value` file. Blank lines and `#` comments
/// are skipped; `param.<name>` keys supply case parameters.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct FileConfig {
    pub entries: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("config line {}: expected key=value, got '{line}'", k + 1);
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        for key in entries.keys() {
            let known = matches!(
                key.as_str(),
                "grid_n" | "out_dir" | "format" | "tol_phi" | "tol_ode" | "tol_factorization" | "tol_commutator"
            ) || key.starts_with("param.");
            if !known {
                bail!("config: unknown key '{key}'");
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }

    fn number(&self, key: &str) -> Result<Option<f64>> {
        self.entries
            .get(key)
            .map(|v| parse_number(key, v))
            .transpose()
    }
}

pub fn parse_number(name: &str, value: &str) -> Result<f64> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => bail!("{name}: expected a finite number, got '{value}'"),
    }
}

/// Flag values as given on the command line; `None` means not given.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub params: Vec<(String, String)>,
    pub grid_n: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub config: Option<PathBuf>,
}

/// Merges flags over the config file over defaults. The output directory
/// falls back to `HANKEL_OUT_DIR` and then the working directory.
pub fn resolve(o: &Overrides, env_out_dir: Option<String>) -> Result<RunConfig> {
    let file = match &o.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let mut params = Params::new();
    for (key, value) in &file.entries {
        if let Some(name) = key.strip_prefix("param.") {
            params.insert(name.to_string(), parse_number(key, value)?);
        }
    }
    for (name, value) in &o.params {
        params.insert(name.clone(), parse_number(name, value)?);
    }
    let grid_n = match (o.grid_n, file.number("grid_n")?) {
        (Some(n), _) => Some(n),
        (None, Some(v)) if v >= 1.0 && v.fract() == 0.0 => Some(v as usize),
        (None, Some(v)) => bail!("grid_n must be a positive integer, got {v}"),
        (None, None) => None,
    };
    let mut tolerances = Tolerances::default();
    for (key, slot) in [
        ("tol_phi", &mut tolerances.phi),
        ("tol_ode", &mut tolerances.ode),
        ("tol_factorization", &mut tolerances.factorization),
        ("tol_commutator", &mut tolerances.commutator),
    ] {
        if let Some(v) = file.number(key)? {
            if !(v > 0.0) {
                bail!("{key} must be positive, got {v}");
            }
            *slot = v;
        }
    }
    let format = match (o.format, file.entries.get("format").map(String::as_str)) {
        (Some(f), _) => f,
        (None, Some("csv")) | (None, None) => Format::Csv,
        (None, Some("json")) => Format::Json,
        (None, Some(other)) => bail!("format must be csv or json, got '{other}'"),
    };
    let out_dir = o
        .out_dir
        .clone()
        .or_else(|| file.entries.get("out_dir").map(PathBuf::from))
        .or_else(|| env_out_dir.filter(|s| !s.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    Ok(RunConfig { params, grid_n, tolerances, out_dir, format })
}

/// `start:stop:step`, inclusive of `start`, stopping before `stop + step/2`.
pub fn parse_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts[..] else {
        bail!("range must be start:stop:step, got '{text}'");
    };
    let (start, stop, step) =
        (parse_number("range start", start)?, parse_number("range stop", stop)?, parse_number("range step", step)?);
    if !(step > 0.0) || stop < start {
        bail!("range needs step > 0 and stop >= start, got '{text}'");
    }
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    if count > 100_000 {
        bail!("range '{text}' has too many points");
    }
    Ok((0..count).map(|k| start + step * k as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_is_inclusive() {
        let r = parse_range("-6:4:0.25").unwrap();
        assert_eq!(r.len(), 41);
        assert_eq!((r[0], r[40]), (-6.0, 4.0));
        assert_eq!(parse_range("0:1:0.3").unwrap().len(), 4);
        assert_eq!(parse_range("2:2:1").unwrap(), vec![2.0]);
        assert!(parse_range("1:0:1").is_err());
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:1:0").is_err());
    }

    #[test]
    fn flags_beat_file_beats_env() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "# run\ngrid_n = 64\nout_dir = from_file\nparam.shift = 1.5\ntol_phi = 1e-6\n").unwrap();
        let o = Overrides { config: Some(path), ..Default::default() };
        let c = resolve(&o, Some("from_env".into())).unwrap();
        assert_eq!(c.grid_n, Some(64));
        assert_eq!(c.out_dir, PathBuf::from("from_file"));
        assert_eq!(c.params["shift"], 1.5);
        assert_eq!(c.tolerances.phi, 1e-6);

        let o = Overrides {
            config: o.config,
            out_dir: Some("from_flag".into()),
            params: vec![("shift".into(), "2".into())],
            ..Default::default()
        };
        let c = resolve(&o, Some("from_env".into())).unwrap();
        assert_eq!(c.out_dir, PathBuf::from("from_flag"));
        assert_eq!(c.params["shift"], 2.0);

        let c = resolve(&Overrides::default(), Some("from_env".into())).unwrap();
        assert_eq!(c.out_dir, PathBuf::from("from_env"));
        assert_eq!(resolve(&Overrides::default(), None).unwrap().out_dir, PathBuf::from("."));
    }

    #[test]
    fn bad_config_is_rejected() {
        assert!(FileConfig::parse("grid_n 5").is_err());
        assert!(FileConfig::parse("colour = red").is_err());
        let o = Overrides { params: vec![("shift".into(), "abc".into())], ..Default::default() };
        assert!(resolve(&o, None).is_err());
    }
}
