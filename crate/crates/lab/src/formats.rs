//! File formats: field CSV (`x[,y],value`), domain descriptor JSON, report
//! JSON with stable keys, and atomic writes (temp file + rename).

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::ser::{Serialize, Serializer};
use serde::Deserialize;

use fconlab_core::{ConcavityReport, Domain, DomainShape, Field, Interval, Verdict, Witness};

/// A real number that serializes as a JSON number when finite and as the
/// strings `"inf"` / `"-inf"` / `"nan"` otherwise (JSON has no infinities).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JsonReal(pub f64);

impl Serialize for JsonReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else if self.0.is_nan() {
            s.serialize_str("nan")
        } else if self.0 > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

/// A concavity witness as it appears in report JSON. Coordinates are written
/// as arrays so 1D and 2D reports share a schema.
#[derive(Clone, Debug, serde::Serialize)]
pub struct WitnessRecord {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub mu: f64,
    pub slack: JsonReal,
}

impl WitnessRecord {
    pub fn new(w: &Witness, is_1d: bool) -> WitnessRecord {
        let coords = |c: (f64, f64)| if is_1d { vec![c.0] } else { vec![c.0, c.1] };
        WitnessRecord {
            x: coords(w.x),
            y: coords(w.y),
            mu: w.mu,
            slack: JsonReal(w.slack.to_f64()),
        }
    }
}

/// Report emitted by the `check` subcommand.
#[derive(Debug, serde::Serialize)]
pub struct CheckReport {
    pub verdict: &'static str,
    pub min_slack: JsonReal,
    pub witnesses: Vec<WitnessRecord>,
    pub tolerance: f64,
    pub n_triples: usize,
}

impl CheckReport {
    pub fn new(report: &ConcavityReport, is_1d: bool) -> CheckReport {
        CheckReport {
            verdict: verdict_str(report.verdict),
            min_slack: JsonReal(report.min_slack.to_f64()),
            witnesses: report
                .witnesses
                .iter()
                .map(|w| WitnessRecord::new(w, is_1d))
                .collect(),
            tolerance: report.tolerance,
            n_triples: report.n_triples,
        }
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::CertifiedOnSamples => "certified_on_samples",
        Verdict::Violated => "violated",
    }
}

/// Domain descriptor document, e.g.
/// `{"shape": "interval", "lo": 0.0, "hi": 1.0, "h": 0.01}` or
/// `{"shape": "polygon", "vertices": [[0,0],[1,0],[0,1]], "h": 0.05}`.
#[derive(Clone, Debug, serde::Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainDescriptor {
    Interval { lo: f64, hi: f64, h: f64 },
    Polygon { vertices: Vec<(f64, f64)>, h: f64 },
}

impl DomainDescriptor {
    pub fn build(&self) -> Result<Arc<Domain>> {
        let domain = match self {
            DomainDescriptor::Interval { lo, hi, h } => Domain::interval(*lo, *hi, *h),
            DomainDescriptor::Polygon { vertices, h } => Domain::polygon(vertices.clone(), *h),
        };
        Ok(Arc::new(domain.map_err(anyhow::Error::msg)?))
    }

    pub fn of(domain: &Domain) -> DomainDescriptor {
        match domain.shape() {
            DomainShape::Interval { lo, hi } => DomainDescriptor::Interval {
                lo: *lo,
                hi: *hi,
                h: domain.h(),
            },
            DomainShape::Polygon { vertices } => DomainDescriptor::Polygon {
                vertices: vertices.clone(),
                h: domain.h(),
            },
        }
    }
}

/// Serialize a field as CSV, one node per row in the domain's node order.
/// Floats use the shortest round-trippable decimal form, so parse/emit is
/// idempotent byte-for-byte.
pub fn field_to_csv(field: &Field) -> String {
    let domain = field.domain();
    let mut out = String::new();
    out.push_str(if domain.is_1d() { "x,value\n" } else { "x,y,value\n" });
    for (node, &v) in field.values().iter().enumerate() {
        let (x, y) = domain.coords(node);
        if domain.is_1d() {
            out.push_str(&format!("{x},{v}\n"));
        } else {
            out.push_str(&format!("{x},{y},{v}\n"));
        }
    }
    out
}

fn parse_float(token: &str, line: usize) -> Result<f64> {
    token
        .trim()
        .parse::<f64>()
        .with_context(|| format!("line {line}: cannot parse '{token}' as a number"))
}

/// Parse a field CSV. Without an explicit domain, a uniform 1D interval
/// domain is inferred from the `x` column; 2D files need a domain descriptor
/// because the polygon mask cannot be recovered from the node list alone.
pub fn field_from_csv(
    text: &str,
    domain: Option<Arc<Domain>>,
    range: Interval,
) -> Result<Field> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().context("empty field CSV")?;
    let is_1d = match header.trim() {
        "x,value" => true,
        "x,y,value" => false,
        other => bail!("unrecognized field CSV header '{other}' (expected 'x,value' or 'x,y,value')"),
    };
    let mut coords = Vec::new();
    let mut values = Vec::new();
    for (ix, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = ix + 1;
        let cols: Vec<&str> = line.split(',').collect();
        let expected = if is_1d { 2 } else { 3 };
        if cols.len() != expected {
            bail!("line {lineno}: expected {expected} columns, found {}", cols.len());
        }
        let x = parse_float(cols[0], lineno)?;
        let y = if is_1d { 0.0 } else { parse_float(cols[1], lineno)? };
        coords.push((x, y));
        values.push(parse_float(cols[if is_1d { 1 } else { 2 }], lineno)?);
    }
    let domain = match domain {
        Some(d) => d,
        None if is_1d => infer_interval_domain(&coords)?,
        None => bail!("2D field CSV needs an explicit domain descriptor"),
    };
    if domain.len() != values.len() {
        bail!(
            "field has {} rows but the domain has {} nodes",
            values.len(),
            domain.len()
        );
    }
    for (node, &(x, y)) in coords.iter().enumerate() {
        let (dx, dy) = domain.coords(node);
        let tol = 1e-9 * domain.h();
        if (x - dx).abs() > tol || (y - dy).abs() > tol {
            bail!("row {} coordinates ({x}, {y}) do not match domain node ({dx}, {dy})", node + 2);
        }
    }
    Field::from_values(domain, values, range).map_err(anyhow::Error::msg)
}

fn infer_interval_domain(coords: &[(f64, f64)]) -> Result<Arc<Domain>> {
    if coords.len() < 2 {
        bail!("need at least two rows to infer a 1D domain");
    }
    let h = coords[1].0 - coords[0].0;
    if !(h > 0.0) {
        bail!("x column must be strictly increasing to infer a 1D domain");
    }
    for w in coords.windows(2) {
        if ((w[1].0 - w[0].0) - h).abs() > 1e-9 * h {
            bail!("x column is not uniformly spaced; supply a domain descriptor");
        }
    }
    let lo = coords[0].0;
    let hi = coords[coords.len() - 1].0;
    Ok(Arc::new(
        Domain::interval(lo, hi, h).map_err(anyhow::Error::msg)?,
    ))
}

/// Write bytes atomically: a temp file in the destination directory, flushed
/// and renamed over the target.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .with_context(|| format!("invalid output path {}", path.display()))?;
    let tmp_name = format!(".{}.{}.tmp", file_name.to_string_lossy(), process::id());
    let tmp_path = match dir {
        Some(d) => d.join(&tmp_name),
        None => Path::new(&tmp_name).to_path_buf(),
    };
    let mut file = fs::File::create(&tmp_path)
        .with_context(|| format!("cannot create {}", tmp_path.display()))?;
    file.write_all(bytes)?;
    file.sync_all()?;
    drop(file);
    fs::rename(&tmp_path, path)
        .with_context(|| format!("cannot move temp file onto {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use fconlab_core::Transform;

    #[test]
    fn csv_roundtrip_is_byte_identical() {
        let domain = Arc::new(Domain::interval(-1.0, 1.0, 0.25).unwrap());
        let range = Interval::open(0.0, 2.0);
        let field = Field::from_fn(domain, range, |x, _| (-x * x).exp()).unwrap();
        let text = field_to_csv(&field);
        let parsed = field_from_csv(&text, None, range).unwrap();
        assert_eq!(field_to_csv(&parsed), text);
        assert_eq!(parsed.values(), field.values());
    }

    #[test]
    fn csv_2d_requires_domain_and_roundtrips() {
        let domain = Arc::new(
            Domain::polygon(vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], 0.25).unwrap(),
        );
        let range = Interval::open(-10.0, 10.0);
        let field = Field::from_fn(domain.clone(), range, |x, y| x + 2.0 * y).unwrap();
        let text = field_to_csv(&field);
        assert!(text.starts_with("x,y,value\n"));
        assert!(field_from_csv(&text, None, range).is_err());
        let parsed = field_from_csv(&text, Some(domain), range).unwrap();
        assert_eq!(field_to_csv(&parsed), text);
    }

    #[test]
    fn malformed_csv_is_rejected_with_line_numbers() {
        let range = Interval::open(-1.0, 1.0);
        let err = field_from_csv("x,value\n0,0\n0.5,oops\n", None, range)
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3"), "{err}");
        assert!(field_from_csv("wrong,header\n", None, range).is_err());
        assert!(field_from_csv("x,value\n0,0\n0.5,0.1\n0.75,0.2\n", None, range).is_err());
    }

    #[test]
    fn domain_descriptor_roundtrip() {
        let d = DomainDescriptor::Interval { lo: 0.0, hi: 1.0, h: 0.125 };
        let built = d.build().unwrap();
        let echoed = DomainDescriptor::of(&built);
        let json = serde_json::to_string(&echoed).unwrap();
        assert_eq!(json, r#"{"shape":"interval","lo":0.0,"hi":1.0,"h":0.125}"#);
        let parsed: DomainDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.build().unwrap().len(), built.len());
    }

    #[test]
    fn json_real_encodes_infinities_as_strings() {
        let vals = vec![JsonReal(1.5), JsonReal(f64::NEG_INFINITY), JsonReal(f64::INFINITY)];
        assert_eq!(serde_json::to_string(&vals).unwrap(), r#"[1.5,"-inf","inf"]"#);
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = std::env::temp_dir().join(format!("fconlab-test-{}", process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("report.json");
        atomic_write(&path, b"one").unwrap();
        atomic_write(&path, b"two").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"two");
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn check_report_serializes_with_stable_keys() {
        let domain = Arc::new(Domain::interval(-1.0, 1.0, 0.5).unwrap());
        let range = Interval::closed(0.0, 2.0);
        let field = Field::from_fn(domain, range, |x, _| 1.0 + x * x).unwrap();
        let report =
            fconlab_core::check_f_concave(&Transform::power(1.0), &field, 1e-9).unwrap();
        let json = serde_json::to_string(&CheckReport::new(&report, true)).unwrap();
        let keys: Vec<usize> = ["verdict", "min_slack", "witnesses", "tolerance", "n_triples"]
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{json}");
    }
}
