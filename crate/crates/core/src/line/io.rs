use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Rational;

use super::{BrigadeConfig, TrajectoryRecord, VelocityProfile};

/// JSON form of one worker's profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileFile {
    pub breakpoints: Vec<Rational>,
    pub values: Vec<Rational>,
}

/// JSON form of a line: `{ "workers": [...], "bounds": ["b", "B"] }`, the
/// bounds being optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub workers: Vec<ProfileFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<(Rational, Rational)>,
}

impl ConfigFile {
    pub fn into_config(self) -> Result<BrigadeConfig> {
        let profiles = self
            .workers
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                VelocityProfile::new(w.breakpoints, w.values)
                    .map_err(|e| Error::Config(format!("worker {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        BrigadeConfig::new(profiles, self.bounds)
    }
}

impl From<&BrigadeConfig> for ConfigFile {
    fn from(cfg: &BrigadeConfig) -> Self {
        ConfigFile {
            workers: cfg
                .profiles()
                .iter()
                .map(|p| ProfileFile { breakpoints: p.breakpoints().to_vec(), values: p.values().to_vec() })
                .collect(),
            bounds: Some(cfg.bounds().clone()),
        }
    }
}

pub fn read_config(path: &Path) -> Result<BrigadeConfig> {
    let text = std::fs::read_to_string(path)?;
    let file: ConfigFile = serde_json::from_str(&text)?;
    file.into_config()
}

/// CSV with columns `step, x_2..x_n, elapsed` as `p/q`, followed by the
/// same quantities as 12-significant-digit decimals. Step 0 has no elapsed.
pub fn write_trajectory_csv<W: Write>(tr: &TrajectoryRecord, out: W) -> Result<()> {
    let dim = tr.states.first().map_or(0, |s| s.dim());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["step".to_string()];
    header.extend((2..dim + 2).map(|i| format!("x{i}")));
    header.push("elapsed".into());
    header.extend((2..dim + 2).map(|i| format!("x{i}_dec12")));
    header.push("elapsed_dec12".into());
    w.write_record(&header).map_err(csv_err)?;
    for (step, s) in tr.states.iter().enumerate() {
        let elapsed = step.checked_sub(1).map(|k| &tr.reset_times[k]);
        let mut row = vec![step.to_string()];
        row.extend(s.coordinates().iter().map(Rational::to_string));
        row.push(elapsed.map(Rational::to_string).unwrap_or_default());
        row.extend(s.coordinates().iter().map(|x| x.to_decimal(12)));
        row.push(elapsed.map(|t| t.to_decimal(12)).unwrap_or_default());
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn trajectory_csv(tr: &TrajectoryRecord) -> String {
    let mut buf = Vec::new();
    write_trajectory_csv(tr, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
