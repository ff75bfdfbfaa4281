//! Client for a remote Maass-form database with a JSON API.
//!
//! One `GET {endpoint}?label={label}&_format=json` per fetch. The response is
//! expected to look like
//!
//! ```json
//! {"data": [{"label": "...", "spectral_parameter": 13.7797,
//!            "parity": "even", "precision_digits": 13,
//!            "coefficients": [1.0, 1.549, ...]}]}
//! ```
//!
//! where `coefficients` lists `lambda(1), lambda(2), ...` as numbers or
//! decimal strings, `parity` may instead be given as `symmetry` (0 even,
//! 1 odd), and `precision_digits` is optional.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;

use super::fixture::{load_form, write_fixture};
use super::form::{bundled_form, MaassForm, Parity, BUNDLED_LABEL};
use crate::error::{Error, Result};

/// Setting this variable to `1` disables all network access.
pub const OFFLINE_ENV: &str = "MOMENT_FORGE_OFFLINE";

/// Overrides the API endpoint, e.g. for a mirror.
pub const ENDPOINT_ENV: &str = "MOMENT_FORGE_ENDPOINT";

const DEFAULT_PRECISION: u32 = 10;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FetchConfig {
    pub endpoint: String,
    pub timeout_secs: u64,
    pub offline: bool,
}

impl Default for FetchConfig {
    fn default() -> Self {
        Self {
            endpoint: "https://www.lmfdb.org/api/maass_newforms/".into(),
            timeout_secs: 30,
            offline: false,
        }
    }
}

impl FetchConfig {
    /// Default configuration with the offline flag and endpoint taken from
    /// the environment.
    pub fn from_env() -> Self {
        let d = Self::default();
        Self {
            offline: std::env::var(OFFLINE_ENV).is_ok_and(|v| v == "1"),
            endpoint: std::env::var(ENDPOINT_ENV).unwrap_or(d.endpoint),
            ..d
        }
    }

    pub fn url(&self, label: &str) -> String {
        let sep = if self.endpoint.contains('?') { '&' } else { '?' };
        format!("{}{sep}label={label}&_format=json", self.endpoint)
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Remote { url: String },
    BundledFallback { reason: String },
}

/// Where a fetched fixture came from and where it was written.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FetchOutcome {
    pub path: PathBuf,
    pub label: String,
    pub depth: usize,
    pub origin: Origin,
}

impl FetchOutcome {
    /// Human-readable notice for fallbacks, `None` for genuine remote fetches.
    pub fn notice(&self) -> Option<String> {
        match &self.origin {
            Origin::Remote { .. } => None,
            Origin::BundledFallback { reason } => Some(format!(
                "offline fallback: wrote bundled fixture for {} ({reason})",
                self.label
            )),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Float(f64),
    Text(String),
}

impl Number {
    fn text(&self) -> String {
        match self {
            Number::Float(x) => format!("{x:?}"),
            Number::Text(s) => s.trim().to_string(),
        }
    }
}

#[derive(Deserialize)]
struct Record {
    spectral_parameter: Number,
    #[serde(default)]
    parity: Option<String>,
    #[serde(default)]
    symmetry: Option<u8>,
    #[serde(default)]
    precision_digits: Option<u32>,
    coefficients: Vec<Number>,
}

#[derive(Deserialize)]
struct Payload {
    data: Vec<Record>,
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    start + column.saturating_sub(1)
}

fn payload_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Payload {
        offset,
        message: message.into(),
    }
}

/// Decodes a response body into a form with the first `n` coefficients.
pub fn parse_payload(body: &str, label: &str, n: usize, url: &str) -> Result<MaassForm> {
    let payload: Payload = serde_json::from_str(body)
        .map_err(|e| payload_err(byte_offset(body, e.line(), e.column()), e.to_string()))?;
    let record = payload
        .data
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotFound(label.to_string()))?;
    if record.coefficients.len() < n {
        return Err(Error::PartialData {
            requested: n,
            available: record.coefficients.len(),
        });
    }
    let parity = match (record.parity.as_deref(), record.symmetry) {
        (Some("even"), _) | (None, Some(0)) => Parity::Even,
        (Some("odd"), _) | (None, Some(1)) => Parity::Odd,
        (p, s) => {
            return Err(payload_err(
                0,
                format!("record has no usable parity (parity {p:?}, symmetry {s:?})"),
            ))
        }
    };
    let decimals: Vec<String> = record.coefficients[..n].iter().map(Number::text).collect();
    for (i, d) in decimals.iter().enumerate() {
        if d.parse::<f64>().map(|x| !x.is_finite()).unwrap_or(true) {
            return Err(payload_err(0, format!("coefficient {} is not a decimal: {d:?}", i + 1)));
        }
    }
    MaassForm::from_parts(
        record.spectral_parameter.text(),
        decimals,
        format!("remote {url}"),
        record.precision_digits.unwrap_or(DEFAULT_PRECISION),
        parity,
    )
}

fn fallback(label: &str, n: usize, out: &Path, reason: String) -> Result<FetchOutcome> {
    if label != BUNDLED_LABEL {
        return Err(Error::Network(format!(
            "{reason}; no bundled fixture for label {label:?} (bundled: {BUNDLED_LABEL:?})"
        )));
    }
    let form = bundled_form();
    if n > form.depth() {
        return Err(Error::PartialData {
            requested: n,
            available: form.depth(),
        });
    }
    write_fixture(&form.truncated(n)?, out)?;
    let outcome = FetchOutcome {
        path: out.to_path_buf(),
        label: label.to_string(),
        depth: n,
        origin: Origin::BundledFallback { reason },
    };
    if let Some(msg) = outcome.notice() {
        log::warn!("{msg}");
    }
    Ok(outcome)
}

/// Fetches `lambda(1..=n)` for `label` and writes a fixture to `out`.
///
/// When the network is disabled or unreachable and `label` names the bundled
/// form, the bundled fixture is written instead and the outcome says so.
pub fn fetch_remote(label: &str, n: usize, out: impl AsRef<Path>, cfg: &FetchConfig) -> Result<FetchOutcome> {
    let out = out.as_ref();
    if n == 0 {
        return Err(Error::InvalidParameter("coefficient count N must be >= 1".into()));
    }
    if label.trim().is_empty() {
        return Err(Error::InvalidParameter("empty label".into()));
    }
    if cfg.offline {
        return fallback(label, n, out, format!("{OFFLINE_ENV}=1"));
    }
    let url = cfg.url(label);
    let agent = ureq::AgentBuilder::new()
        .timeout(Duration::from_secs(cfg.timeout_secs))
        .build();
    let body = match agent.get(&url).call() {
        Ok(resp) => resp
            .into_string()
            .map_err(|e| Error::Network(format!("reading {url}: {e}")))?,
        Err(ureq::Error::Status(404, _)) => return Err(Error::NotFound(label.to_string())),
        Err(ureq::Error::Status(code, _)) => {
            return Err(Error::Network(format!("{url}: HTTP status {code}")))
        }
        Err(ureq::Error::Transport(t)) => {
            return fallback(label, n, out, format!("network unavailable: {t}"))
        }
    };
    let form = parse_payload(&body, label, n, &url)?;
    write_fixture(&form, out)?;
    let loaded = load_form(out)?;
    Ok(FetchOutcome {
        path: out.to_path_buf(),
        label: label.to_string(),
        depth: loaded.depth(),
        origin: Origin::Remote { url },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payload_offsets_point_at_the_fault() {
        let body = "{\"data\": [\n  {\"spectral_parameter\": 1.0, \"coefficients\": [1.0,, 2]}]}";
        match parse_payload(body, "x", 1, "u") {
            Err(Error::Payload { offset, .. }) => assert_eq!(&body[offset - 1..offset], ","),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_data_is_not_found_and_short_data_is_partial() {
        assert!(matches!(parse_payload("{\"data\": []}", "nope", 1, "u"), Err(Error::NotFound(_))));
        let body = r#"{"data":[{"spectral_parameter":"13.7","symmetry":0,"coefficients":[1.0,"0.5"]}]}"#;
        assert!(matches!(
            parse_payload(body, "x", 3, "u"),
            Err(Error::PartialData { requested: 3, available: 2 })
        ));
        let f = parse_payload(body, "x", 2, "u").unwrap();
        assert_eq!(f.lambda(2), 0.5);
        assert_eq!(f.parity(), Parity::Even);
    }

    #[test]
    fn zero_depth_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let r = fetch_remote(BUNDLED_LABEL, 0, dir.path().join("f"), &FetchConfig::default());
        assert!(matches!(r, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn offline_falls_back_with_notice() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = FetchConfig {
            offline: true,
            ..FetchConfig::default()
        };
        let out = fetch_remote(BUNDLED_LABEL, 1000, dir.path().join("f.txt"), &cfg).unwrap();
        assert!(out.notice().unwrap().contains("offline fallback"));
        let f = load_form(&out.path).unwrap();
        assert_eq!(f.depth(), 1000);
        assert!(matches!(
            fetch_remote("other", 10, dir.path().join("g.txt"), &cfg),
            Err(Error::Network(_))
        ));
    }
}
