use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Informational,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Informational => "informational",
        })
    }
}

/// A named `(x, y)` sequence for plotting.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Series {
    pub name: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: &str, x_label: &str, y_label: &str, points: Vec<(f64, f64)>) -> Self {
        Self { name: name.into(), x_label: x_label.into(), y_label: y_label.into(), points }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub id: String,
    pub inputs: serde_json::Value,
    pub metrics: BTreeMap<String, f64>,
    pub series: Vec<Series>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct Stamped<'a> {
    #[serde(flatten)]
    report: &'a Report,
    config_hash: String,
    generated_at: u64,
}

impl Report {
    pub fn new<C: Serialize>(id: &str, inputs: &C) -> Self {
        Self {
            id: id.into(),
            inputs: serde_json::to_value(inputs).expect("config serializes"),
            metrics: BTreeMap::new(),
            series: Vec::new(),
            verdict: Verdict::Informational,
            notes: Vec::new(),
        }
    }

    pub fn metric(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.insert(name.into(), value);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// First 16 hex digits of the SHA-256 of the inputs echo.
    pub fn config_hash(&self) -> String {
        let digest = Sha256::digest(self.inputs.to_string().as_bytes());
        hex::encode(&digest[..8])
    }

    /// Deterministic JSON of everything but the timestamp.
    pub fn payload(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("series,x_label,y_label,x,y\n");
        for s in &self.series {
            for (x, y) in &s.points {
                out.push_str(&format!("{},{},{},{x:e},{y:e}\n", s.name, s.x_label, s.y_label));
            }
        }
        out
    }

    /// Writes `<id>.<hash>.report` and `<id>.<hash>.csv` atomically.
    pub fn write_to(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        fs::create_dir_all(dir)?;
        let stem = format!("{}.{}", self.id, self.config_hash());
        let generated_at =
            std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let stamped = Stamped { report: self, config_hash: self.config_hash(), generated_at };
        let json = serde_json::to_string_pretty(&stamped).map_err(|e| Error::Parse(e.to_string()))?;
        let report = dir.join(format!("{stem}.report"));
        let csv = dir.join(format!("{stem}.csv"));
        atomic_write(&report, json.as_bytes())?;
        atomic_write(&csv, self.to_csv().as_bytes())?;
        Ok((report, csv))
    }
}

/// Write to a sibling temporary file, then rename over the target.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
