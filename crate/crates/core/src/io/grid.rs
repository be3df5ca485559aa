//! Text formats for spectra, ridge curves and condensate densities.
//!
//! ```text
//! # pbec-grid v1
//! # k_axis 1/m: k0,k1,...
//! # omega_axis rad/s: w0,w1,...
//! # config_sha256: ...
//! # version: ...
//! # units: ...
//! # config: key = value      (one line per key)
//! v(w0,k0),v(w0,k1),...      (one row per omega, ascending)
//! ```
//!
//! Numbers carry 17 significant digits.

use ndarray::Array2;

use super::{sci, Provenance};
use crate::cgpe::{coordinates, ComplexField2D};
use crate::error::{Error, Result};
use crate::open_spectrum::{DispersionCurve, SpectrumGrid};

pub const GRID_MAGIC: &str = "# pbec-grid v1";
pub const CURVE_MAGIC: &str = "# pbec-curve v1";
pub const DENSITY_MAGIC: &str = "# pbec-density v1";

fn join(values: &[f64]) -> String {
    values.iter().map(|v| sci(*v)).collect::<Vec<_>>().join(",")
}

pub fn write_grid(grid: &SpectrumGrid, prov: &Provenance) -> String {
    let mut s = String::new();
    s.push_str(GRID_MAGIC);
    s.push('\n');
    s.push_str(&format!("# k_axis 1/m: {}\n", join(&grid.k_axis)));
    s.push_str(&format!("# omega_axis rad/s: {}\n", join(&grid.omega_axis)));
    s.push_str(&prov.header_lines());
    for row in grid.values.rows() {
        s.push_str(&join(row.as_slice().expect("standard layout")));
        s.push('\n');
    }
    s
}

/// Header fields after the magic line: `key: value` comments, config lines collected separately.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Header {
    pub fields: Vec<(String, String)>,
    pub config: String,
}

impl Header {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|f| f.0 == key).map(|f| f.1.as_str())
    }
}

fn parse_numbers(s: &str, what: &str) -> Result<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Format(format!("bad number `{t}` in {what}"))))
        .collect()
}

fn split_header<'a>(text: &'a str, magic: &str) -> Result<(Header, Vec<&'a str>)> {
    let mut lines = text.lines();
    if lines.next() != Some(magic) {
        return Err(Error::Format(format!("expected `{magic}` on line 1")));
    }
    let mut header = Header::default();
    let mut body = Vec::new();
    for line in lines {
        if let Some(c) = line.strip_prefix("# ") {
            if let Some(cfg) = c.strip_prefix("config: ") {
                header.config.push_str(cfg);
                header.config.push('\n');
            } else if let Some((k, v)) = c.split_once(": ") {
                header.fields.push((k.to_string(), v.to_string()));
            }
        } else if !line.is_empty() {
            body.push(line);
        }
    }
    Ok((header, body))
}

pub fn read_grid(text: &str) -> Result<(SpectrumGrid, Header)> {
    let (header, body) = split_header(text, GRID_MAGIC)?;
    let k = parse_numbers(header.get("k_axis 1/m").ok_or_else(|| Error::Format("missing k_axis".into()))?, "k_axis")?;
    let w = parse_numbers(
        header.get("omega_axis rad/s").ok_or_else(|| Error::Format("missing omega_axis".into()))?,
        "omega_axis",
    )?;
    if body.len() != w.len() {
        return Err(Error::Format(format!("{} data rows for {} omega samples", body.len(), w.len())));
    }
    let mut values = Vec::with_capacity(k.len() * w.len());
    for (i, row) in body.iter().enumerate() {
        let r = parse_numbers(row, "data row")?;
        if r.len() != k.len() {
            return Err(Error::Format(format!("row {i} has {} values, expected {}", r.len(), k.len())));
        }
        values.extend(r);
    }
    let values = Array2::from_shape_vec((w.len(), k.len()), values).expect("checked shape");
    Ok((SpectrumGrid::new(k, w, values)?, header))
}

/// Rows `k,omega_peak,flag`; a flagged column has an empty peak and flag 1.
pub fn write_curve(curve: &DispersionCurve, prov: &Provenance) -> String {
    let mut s = format!("{CURVE_MAGIC}\n{}k,omega_peak,flag\n", prov.header_lines());
    for (k, w) in curve.k.iter().zip(&curve.omega_peak) {
        match w {
            Some(w) => s.push_str(&format!("{},{},0\n", sci(*k), sci(*w))),
            None => s.push_str(&format!("{},,1\n", sci(*k))),
        }
    }
    s
}

pub fn read_curve(text: &str) -> Result<(DispersionCurve, Header)> {
    let (header, body) = split_header(text, CURVE_MAGIC)?;
    let mut k = Vec::new();
    let mut omega_peak = Vec::new();
    for line in body.iter().skip_while(|l| l.starts_with("k,")) {
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Format(format!("curve row `{line}` needs three fields")));
        }
        k.push(parts[0].parse::<f64>().map_err(|_| Error::Format(format!("bad k `{}`", parts[0])))?);
        omega_peak.push(match parts[2] {
            "1" => None,
            "0" => Some(parts[1].parse::<f64>().map_err(|_| Error::Format(format!("bad peak `{}`", parts[1])))?),
            f => return Err(Error::Format(format!("bad flag `{f}`"))),
        });
    }
    Ok((DispersionCurve { k, omega_peak }, header))
}

/// Condensate density `|ψ|²` (1/m²), rows along y, columns along x.
pub fn write_density(field: &ComplexField2D, mu: f64, prov: &Provenance) -> String {
    let x = coordinates(field.n(), field.extent);
    let mut s = String::new();
    s.push_str(DENSITY_MAGIC);
    s.push('\n');
    s.push_str(&format!("# x_axis m: {}\n# y_axis m: {}\n", join(&x), join(&x)));
    s.push_str(&format!("# mu rad/s: {}\n# particles: {}\n", sci(mu), sci(field.particle_number())));
    s.push_str(&prov.header_lines());
    for row in field.density().rows() {
        s.push_str(&join(&row.to_vec()));
        s.push('\n');
    }
    s
}
