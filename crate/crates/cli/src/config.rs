use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

pub const OUT_DIR_ENV: &str = "NCCR_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Pretty,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Pretty => "txt",
        }
    }
}

/// Keys accepted in the configuration file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub cap: Option<usize>,
    pub max_len: Option<usize>,
    pub seed: Option<u64>,
    pub output: Option<OutputFormat>,
    pub out_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub n: Option<usize>,
    pub cap: usize,
    pub max_len: usize,
    pub seed: u64,
    pub output: OutputFormat,
    pub out_dir: Option<PathBuf>,
}

impl Config {
    /// Flags win over the environment, which wins over the file.
    pub fn merge(flags: FileConfig, env_out_dir: Option<PathBuf>, file: FileConfig) -> Result<Self, CliError> {
        let n = flags.n.or(file.n);
        if let Some(n) = n {
            if n < 2 {
                return Err(CliError::Usage(format!("n must be at least 2, got {n}")));
            }
        }
        Ok(Config {
            n,
            cap: flags.cap.or(file.cap).unwrap_or(6),
            max_len: flags.max_len.or(file.max_len).unwrap_or(6),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            output: flags.output.or(file.output).unwrap_or_default(),
            out_dir: flags.out_dir.or(env_out_dir).or(file.out_dir),
        })
    }

    pub fn n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::Usage("--n is required (or set n in the config file)".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let flags = FileConfig {
            cap: Some(3),
            ..Default::default()
        };
        let file = FileConfig {
            n: Some(4),
            cap: Some(8),
            out_dir: Some("from-file".into()),
            ..Default::default()
        };
        let c = Config::merge(flags, Some("from-env".into()), file).unwrap();
        assert_eq!(c.n, Some(4));
        assert_eq!(c.cap, 3);
        assert_eq!(c.max_len, 6);
        assert_eq!(c.out_dir, Some(PathBuf::from("from-env")));
    }

    #[test]
    fn rejects_small_rank_and_unknown_keys() {
        let flags = FileConfig {
            n: Some(1),
            ..Default::default()
        };
        assert!(Config::merge(flags, None, FileConfig::default()).is_err());
        assert!(toml::from_str::<FileConfig>("rank = 3").is_err());
        let f: FileConfig = toml::from_str("n = 3\noutput = \"csv\"").unwrap();
        assert_eq!(f.output, Some(OutputFormat::Csv));
    }
}
