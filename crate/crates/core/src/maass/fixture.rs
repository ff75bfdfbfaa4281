//! Text fixture grammar:
//!
//! ```text
//! # comment
//! spectral_parameter = 13.7797...
//! precision_digits = 13
//! source = free text
//! parity = even
//! 1,1.0
//! 2,1.5493...
//! ```
//!
//! Header lines precede the records; records run `n = 1, 2, ...` without gaps.

use std::fmt::Write as _;
use std::path::Path;

use super::form::{MaassForm, Parity};
use crate::error::{Error, Result};

const KEYS: [&str; 4] = ["spectral_parameter", "precision_digits", "source", "parity"];

fn format_err(path: &str, line: usize, message: impl Into<String>) -> Error {
    Error::FixtureFormat {
        path: path.to_string(),
        line,
        message: message.into(),
    }
}

/// Parses fixture text without running the Hecke checks; `path` is only used
/// in error messages.
pub fn parse_fixture(text: &str, path: &str) -> Result<MaassForm> {
    let mut header: [Option<String>; 4] = Default::default();
    let mut decimals: Vec<String> = Vec::new();
    let mut in_records = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            if in_records {
                return Err(format_err(path, lineno, "header line after coefficient records"));
            }
            let key = key.trim();
            let slot = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| format_err(path, lineno, format!("unknown header key {key:?}")))?;
            if header[slot].is_some() {
                return Err(format_err(path, lineno, format!("duplicate header key {key:?}")));
            }
            header[slot] = Some(value.trim().to_string());
            continue;
        }
        in_records = true;
        let (n_text, value) = line
            .split_once(',')
            .ok_or_else(|| format_err(path, lineno, format!("expected `n,value`, found {line:?}")))?;
        let n: usize = n_text
            .trim()
            .parse()
            .map_err(|_| format_err(path, lineno, format!("bad index {n_text:?}")))?;
        let expected = decimals.len() + 1;
        if n != expected {
            return Err(format_err(
                path,
                lineno,
                format!("gap in coefficient records: expected n = {expected}, found n = {n}"),
            ));
        }
        let value = value.trim();
        if value.parse::<f64>().map(|x| !x.is_finite()).unwrap_or(true) {
            return Err(format_err(path, lineno, format!("bad decimal {value:?} for n = {n}")));
        }
        decimals.push(value.to_string());
    }
    let [spectral, precision, source, parity] = header;
    let missing = |k: &str| format_err(path, 0, format!("missing header key {k:?}"));
    let spectral = spectral.ok_or_else(|| missing("spectral_parameter"))?;
    let precision: u32 = precision
        .ok_or_else(|| missing("precision_digits"))?
        .parse()
        .map_err(|_| format_err(path, 0, "precision_digits must be a positive integer"))?;
    if !(3..=40).contains(&precision) {
        return Err(format_err(path, 0, format!("precision_digits {precision} outside 3..=40")));
    }
    let source = source.ok_or_else(|| missing("source"))?;
    let parity = match parity.ok_or_else(|| missing("parity"))?.as_str() {
        "even" => Parity::Even,
        "odd" => Parity::Odd,
        other => return Err(format_err(path, 0, format!("parity must be even or odd, got {other:?}"))),
    };
    if spectral.parse::<f64>().map(|x| !(x > 0.0)).unwrap_or(true) {
        return Err(format_err(path, 0, format!("bad spectral_parameter {spectral:?}")));
    }
    if decimals.is_empty() {
        return Err(format_err(path, 0, "no coefficient records"));
    }
    MaassForm::from_parts(spectral, decimals, source, precision, parity)
}

/// Reads, parses and Hecke-validates a fixture file.
pub fn load_form(path: impl AsRef<Path>) -> Result<MaassForm> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let form = parse_fixture(&text, &path.display().to_string())?;
    form.validate_hecke()?;
    if form.parity() == Parity::Odd {
        log::warn!(
            "{}: form is odd; the approximate functional equations assume an even form",
            path.display()
        );
    }
    Ok(form)
}

/// Serializes a form in the fixture grammar.
pub fn render_fixture(form: &MaassForm) -> String {
    let mut out = String::with_capacity(form.depth() * 24 + 256);
    let parity = match form.parity() {
        Parity::Even => "even",
        Parity::Odd => "odd",
    };
    let _ = writeln!(out, "spectral_parameter = {}", form.spectral_text());
    let _ = writeln!(out, "precision_digits = {}", form.precision_digits());
    let _ = writeln!(out, "source = {}", form.source());
    let _ = writeln!(out, "parity = {parity}");
    for (i, d) in form.decimals().iter().enumerate() {
        let _ = writeln!(out, "{},{}", i + 1, d);
    }
    out
}

/// Writes a form to `path` in the fixture grammar.
pub fn write_fixture(form: &MaassForm, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, render_fixture(form)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maass::bundled_form;

    const SMALL: &str = "# test\nspectral_parameter = 13.5\nprecision_digits = 13\nsource = unit\nparity = even\n1,1.0\n2,0.5\n3,-0.25\n";

    #[test]
    fn parses_header_and_records() {
        let f = parse_fixture(SMALL, "t").unwrap();
        assert_eq!(f.depth(), 3);
        assert_eq!(f.lambda(3), -0.25);
        assert_eq!(f.source(), "unit");
        assert_eq!(f.spectral_parameter(), 13.5);
    }

    #[test]
    fn gap_is_a_structural_error() {
        let text = SMALL.replace("3,-0.25", "4,-0.25");
        match parse_fixture(&text, "t") {
            Err(Error::FixtureFormat { line, message, .. }) => {
                assert_eq!(line, 8);
                assert!(message.contains("expected n = 3"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_fifth_record_detected_in_real_data() {
        let text = render_fixture(&bundled_form().truncated(50).unwrap());
        let cut: String = text
            .lines()
            .filter(|l| !l.starts_with("5,"))
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(matches!(parse_fixture(&cut, "t"), Err(Error::FixtureFormat { .. })));
    }

    #[test]
    fn lambda_one_must_be_one() {
        let text = render_fixture(&bundled_form().truncated(100).unwrap()).replace("\n1,1.00000000000000\n", "\n1,0.9\n");
        let f = parse_fixture(&text, "t").unwrap();
        assert!(matches!(f.validate_hecke(), Err(Error::Validation(_))));
    }

    #[test]
    fn malformed_header_rejected() {
        assert!(parse_fixture(&SMALL.replace("parity = even", "parity = both"), "t").is_err());
        assert!(parse_fixture(&SMALL.replace("source = unit\n", ""), "t").is_err());
        assert!(parse_fixture(&SMALL.replace("source", "origin"), "t").is_err());
        assert!(parse_fixture(&SMALL.replace("2,0.5", "2,abc"), "t").is_err());
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.txt");
        let f = bundled_form().truncated(5000).unwrap();
        write_fixture(&f, &path).unwrap();
        let g = load_form(&path).unwrap();
        assert_eq!(f, g);
        assert_eq!(render_fixture(&f), std::fs::read_to_string(&path).unwrap());
        for n in 1..=g.depth() {
            assert_eq!(f.lambda(n).to_bits(), g.lambda(n).to_bits());
        }
    }

    #[test]
    fn float_built_forms_round_trip() {
        let f = MaassForm::from_coefficients(9.5, &[1.0, 0.1 + 0.2, -1.0 / 3.0], "x", 13, Parity::Odd).unwrap();
        let g = parse_fixture(&render_fixture(&f), "t").unwrap();
        assert_eq!(f, g);
    }
}
