use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{Format, RunArgs};
use crate::error::{Error, Result};
use crate::io::{CovarianceRequest, Flavor, Resolved};

/// Settings of one run, from a JSON file such as
///
/// ```json
/// { "input": "request.json", "N": [16, 32], "samples": 20000, "seed": 7,
///   "out": "table.csv", "format": "csv" }
/// ```
///
/// with command-line flags taking precedence. Relative paths in the file are
/// resolved against the file's directory.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub flavor: Option<Flavor>,
    #[serde(rename = "N", default)]
    pub n: Vec<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.input, &mut cfg.out].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn merge(args: &RunArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        Ok(RunConfig {
            input: args.input.clone().or(file.input),
            flavor: args.flavor.or(file.flavor),
            n: if args.n.is_empty() { file.n } else { args.n.clone() },
            samples: args.samples.or(file.samples),
            seed: args.seed.or(file.seed),
            out: args.out.clone().or(file.out),
            format: args.format.or(file.format),
        })
    }

    /// Loads and resolves the request file.
    pub fn request(&self) -> Result<Resolved> {
        let path = self
            .input
            .as_ref()
            .ok_or_else(|| Error::Invalid("--input is required".into()))?;
        CovarianceRequest::load(path)?.resolve(self.flavor)
    }
}
