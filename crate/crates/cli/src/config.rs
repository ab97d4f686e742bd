use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

pub const THREADS_ENV: &str = "KEROV_THREADS";
pub const HEADER_PREFIX: &str = "# kerov-run ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Human-readable lines (identities and dumps only).
    Text,
    Json,
    Csv,
}

/// Everything that determines the output of one run. It is written at the
/// top of every output and parses back to the same value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub samples: usize,
    pub kmax: usize,
    pub seed: u64,
    pub threads: Option<usize>,
    pub cap_boxes: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Subcommand options, as given or defaulted.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub options: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn header_line(&self) -> String {
        format!("{HEADER_PREFIX}{}", serde_json::to_string(self).expect("serializable"))
    }

    /// Reads the config back from the first line of an output written with
    /// [`RunConfig::header_line`] or from a JSON document with a `config` key.
    pub fn from_output(text: &str) -> Result<RunConfig> {
        let first = text.lines().next().unwrap_or("");
        if let Some(json) = first.strip_prefix(HEADER_PREFIX) {
            return Ok(serde_json::from_str(json)?);
        }
        let doc: serde_json::Value = serde_json::from_str(first)
            .or_else(|_| serde_json::from_str(text))
            .context("output has no config header")?;
        let cfg = doc.get("config").context("output has no config key")?;
        Ok(serde_json::from_value(cfg.clone())?)
    }
}

/// Defaults of one subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub n: usize,
    pub samples: usize,
    pub kmax: usize,
    pub cap_boxes: usize,
    pub format: Format,
}

/// Optional settings read from a TOML file; the same keys as the flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub samples: Option<usize>,
    pub kmax: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub cap_boxes: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Values given on the command line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlagValues {
    pub n: Option<usize>,
    pub samples: Option<usize>,
    pub kmax: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub cap_boxes: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

/// Flags over the config file over the environment (threads only) over the
/// subcommand defaults.
pub fn resolve(
    command: &str,
    flags: &FlagValues,
    file: &FileConfig,
    env_threads: Option<&str>,
    defaults: Defaults,
    seed_default: u64,
) -> Result<RunConfig> {
    let env_threads = match env_threads {
        Some(s) if !s.trim().is_empty() => Some(
            s.trim()
                .parse::<usize>()
                .with_context(|| format!("{THREADS_ENV} must be a positive integer, got {s:?}"))?,
        ),
        _ => None,
    };
    let threads = flags.threads.or(file.threads).or(env_threads);
    if threads == Some(0) {
        bail!("thread count must be positive");
    }
    Ok(RunConfig {
        command: command.to_string(),
        n: flags.n.or(file.n).unwrap_or(defaults.n),
        samples: flags.samples.or(file.samples).unwrap_or(defaults.samples),
        kmax: flags.kmax.or(file.kmax).unwrap_or(defaults.kmax),
        seed: flags.seed.or(file.seed).unwrap_or(seed_default),
        threads,
        cap_boxes: flags.cap_boxes.or(file.cap_boxes).unwrap_or(defaults.cap_boxes),
        format: flags.format.or(file.format).unwrap_or(defaults.format),
        out: flags.out.clone().or_else(|| file.out.clone()),
        options: BTreeMap::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: Defaults = Defaults {
        n: 10,
        samples: 20,
        kmax: 6,
        cap_boxes: 12,
        format: Format::Csv,
    };

    #[test]
    fn precedence() {
        let flags = FlagValues {
            n: Some(1),
            ..Default::default()
        };
        let file = FileConfig {
            n: Some(2),
            samples: Some(3),
            threads: Some(4),
            ..Default::default()
        };
        let c = resolve("x", &flags, &file, Some("7"), D, 9).unwrap();
        assert_eq!((c.n, c.samples, c.kmax, c.seed, c.threads), (1, 3, 6, 9, Some(4)));
        let c = resolve("x", &FlagValues::default(), &FileConfig::default(), Some("7"), D, 9).unwrap();
        assert_eq!(c.threads, Some(7));
        let flags = FlagValues {
            threads: Some(2),
            ..Default::default()
        };
        assert_eq!(resolve("x", &flags, &file, Some("7"), D, 9).unwrap().threads, Some(2));
        assert!(resolve("x", &FlagValues::default(), &FileConfig::default(), Some("many"), D, 9).is_err());
    }

    #[test]
    fn header_round_trip() {
        let mut c = resolve("clt", &FlagValues::default(), &FileConfig::default(), None, D, 5).unwrap();
        c.options.insert("variant".into(), "shape".into());
        let text = format!("{}\nname,n\n", c.header_line());
        assert_eq!(RunConfig::from_output(&text).unwrap(), c);
        let json = serde_json::json!({ "config": c, "report": {} }).to_string();
        assert_eq!(RunConfig::from_output(&json).unwrap(), c);
    }

    #[test]
    fn file_config_parses() {
        let f: FileConfig = toml::from_str("n = 100\nformat = \"json\"\n").unwrap();
        assert_eq!(f.n, Some(100));
        assert_eq!(f.format, Some(Format::Json));
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
    }
}
