//! The repo-wide state file format: UTF-8 text, first line `dim N`, then
//! one line of `N` comma-separated complex entries for a pure state or
//! `N` such lines (row-major) for a density matrix. Complex entries read
//! `a+bi` / `a-bi` with plain decimal or scientific reals.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec};
use crate::phase_space::{DensityOperator, PureState};

/// Contents of a state file.
#[derive(Clone, Debug)]
pub enum LoadedState {
    Pure(PureState),
    Density(DensityOperator),
}

impl LoadedState {
    pub fn dim(&self) -> usize {
        match self {
            LoadedState::Pure(s) => s.dim(),
            LoadedState::Density(r) => r.dim(),
        }
    }

    /// View as a density operator either way.
    pub fn density(&self) -> DensityOperator {
        match self {
            LoadedState::Pure(s) => DensityOperator::from_pure(s),
            LoadedState::Density(r) => r.clone(),
        }
    }
}

/// Shortest decimal rendering that round-trips the exact f64 value.
pub fn format_f64(x: f64) -> String {
    format!("{x}")
}

/// `a+bi` / `a-bi` with round-tripping decimals.
pub fn format_complex(z: C64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", format_f64(z.re), format_f64(-z.im))
    } else {
        format!("{}+{}i", format_f64(z.re), format_f64(z.im))
    }
}

/// Parse `a+bi`, `a-bi`, or a bare real.
pub fn parse_complex(token: &str) -> Result<C64> {
    let s = token.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty complex entry".into()));
    }
    if let Some(body) = s.strip_suffix('i') {
        // Split at the last '+'/'-' that is not a leading sign and not an
        // exponent sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        let k = split.ok_or_else(|| Error::Parse(format!("malformed complex entry `{s}`")))?;
        let re: f64 = body[..k]
            .parse()
            .map_err(|_| Error::Parse(format!("bad real part in `{s}`")))?;
        let sign = if bytes[k] as char == '-' { -1.0 } else { 1.0 };
        let im_str = &body[k + 1..];
        let im: f64 = if im_str.is_empty() {
            1.0
        } else {
            im_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad imaginary part in `{s}`")))?
        };
        Ok(C64::new(re, sign * im))
    } else {
        let re: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad real entry `{s}`")))?;
        Ok(C64::new(re, 0.0))
    }
}

fn parse_row(line: &str, expected: usize) -> Result<Vec<C64>> {
    let entries: Vec<C64> = line
        .split(',')
        .map(parse_complex)
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != expected {
        return Err(Error::Parse(format!(
            "expected {expected} entries per row, found {}",
            entries.len()
        )));
    }
    Ok(entries)
}

/// Parse the file format from text.
pub fn parse_state_text(text: &str) -> Result<LoadedState> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty state file".into()))?;
    let dim: usize = header
        .trim()
        .strip_prefix("dim")
        .ok_or_else(|| Error::Parse("first line must read `dim N`".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse("first line must read `dim N`".into()))?;
    let rows: Vec<Vec<C64>> = lines
        .map(|line| parse_row(line, dim))
        .collect::<Result<Vec<_>>>()?;
    match rows.len() {
        1 => {
            let amps = CVec::from_vec(rows.into_iter().next().unwrap());
            Ok(LoadedState::Pure(PureState::new(amps)?))
        }
        n if n == dim => {
            let mut m = CMat::zeros(dim, dim);
            for (r, row) in rows.iter().enumerate() {
                for (c, &z) in row.iter().enumerate() {
                    m[(r, c)] = z;
                }
            }
            Ok(LoadedState::Density(DensityOperator::new(m)?))
        }
        n => Err(Error::Parse(format!(
            "expected 1 or {dim} data lines, found {n}"
        ))),
    }
}

pub fn read_state_file(path: &Path) -> Result<LoadedState> {
    parse_state_text(&std::fs::read_to_string(path)?)
}

/// Render a pure state in the file format.
pub fn render_pure(state: &PureState) -> String {
    let mut out = format!("dim {}\n", state.dim());
    let line: Vec<String> = state.amplitudes().iter().map(|&z| format_complex(z)).collect();
    let _ = writeln!(out, "{}", line.join(","));
    out
}

/// Render a density matrix in the file format.
pub fn render_density(rho: &DensityOperator) -> String {
    let n = rho.dim();
    let mut out = format!("dim {n}\n");
    for r in 0..n {
        let line: Vec<String> = (0..n).map(|c| format_complex(rho.matrix()[(r, c)])).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}

pub fn write_pure(path: &Path, state: &PureState) -> Result<()> {
    Ok(std::fs::write(path, render_pure(state))?)
}

pub fn write_density(path: &Path, rho: &DensityOperator) -> Result<()> {
    Ok(std::fs::write(path, render_density(rho))?)
}
