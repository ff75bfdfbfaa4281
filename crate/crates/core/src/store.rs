//! Append-only report directory: one JSON file per run plus `index.csv`
//! with one row per file.
//!
//! Index columns, fixed: `file, kind, q, sigma0, t0, lhs_re, lhs_im,
//! main_term, residual_re, residual_im, identity_gap, slope`. Fields that do
//! not apply to a report kind are left empty.

use std::fs::{self, OpenOptions};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::{Error, Result};
use crate::moment::{ExponentFit, MomentReport};

pub const INDEX_FILE: &str = "index.csv";

#[derive(Debug, Clone, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IndexRow {
    pub file: String,
    pub kind: String,
    pub q: Option<u64>,
    pub sigma0: Option<f64>,
    pub t0: Option<f64>,
    pub lhs_re: Option<f64>,
    pub lhs_im: Option<f64>,
    pub main_term: Option<f64>,
    pub residual_re: Option<f64>,
    pub residual_im: Option<f64>,
    pub identity_gap: Option<f64>,
    pub slope: Option<f64>,
}

impl IndexRow {
    pub fn for_moment(r: &MomentReport) -> Self {
        Self {
            kind: "moment".into(),
            q: Some(r.q),
            sigma0: Some(r.s0.sigma0),
            t0: Some(r.s0.t0),
            lhs_re: Some(r.lhs_direct.re),
            lhs_im: Some(r.lhs_direct.im),
            main_term: Some(r.main_term),
            residual_re: Some(r.residual.re),
            residual_im: Some(r.residual.im),
            identity_gap: Some(r.identity_gap),
            ..Self::default()
        }
    }

    pub fn for_fit(f: &ExponentFit) -> Self {
        Self {
            kind: "fit".into(),
            sigma0: Some(f.s0.sigma0),
            t0: Some(f.s0.t0),
            slope: Some(f.slope),
            ..Self::default()
        }
    }

    pub fn kind(kind: &str) -> Self {
        Self {
            kind: kind.into(),
            ..Self::default()
        }
    }

    /// The row as CSV with a header line.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(self)?;
        let bytes = w.into_inner().map_err(|e| Error::Validation(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Directory of reports. Writes are append-only and assume a single writer.
#[derive(Debug, Clone)]
pub struct ReportStore {
    dir: PathBuf,
}

impl ReportStore {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn index_path(&self) -> PathBuf {
        self.dir.join(INDEX_FILE)
    }

    pub fn rows(&self) -> Result<Vec<IndexRow>> {
        let path = self.index_path();
        if !path.exists() {
            return Ok(Vec::new());
        }
        let mut r = csv::Reader::from_path(&path)?;
        Ok(r.deserialize().collect::<Result<Vec<IndexRow>, _>>()?)
    }

    /// Writes `report` as `<unix-seconds>-<sequence>-<kind>.json` and appends
    /// its index row; returns the report path.
    pub fn persist<T: serde::Serialize>(&self, report: &T, mut row: IndexRow) -> Result<PathBuf> {
        let seq = self.rows()?.len();
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let name = format!("{stamp}-{seq:05}-{}.json", row.kind);
        let path = self.dir.join(&name);
        let mut json = serde_json::to_string_pretty(report)?;
        json.push('\n');
        fs::write(&path, json).map_err(|e| Error::io(&path, e))?;

        row.file = name;
        let index = self.index_path();
        let fresh = !index.exists();
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&index)
            .map_err(|e| Error::io(&index, e))?;
        let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
        w.serialize(&row)?;
        w.flush().map_err(|e| Error::io(&index, e))?;
        Ok(path)
    }
}
