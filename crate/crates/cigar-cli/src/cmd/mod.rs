pub mod asym;
pub mod green;
pub mod martin;
pub mod sturm;
pub mod surface;
pub mod verify;

use std::f64::consts::PI;

use cigar::surface::BoundaryPoint;

use crate::error::{CliError, CliResult};

pub fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {s}"))
    }
}

pub fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be finite, got {s}"))
    }
}

/// Angles as plain numbers or in the forms `pi`, `pi/N`, `K*pi/N`.
pub fn angle(s: &str) -> Result<f64, String> {
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| format!("bad angle {s}"))?),
        None => (s, 1.0),
    };
    let k = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(k) => k.trim_end_matches('*').parse::<f64>().map_err(|_| format!("bad angle {s}"))?,
        None => return Err(format!("bad angle {s}")),
    };
    Ok(k * PI / den)
}

/// `theta=ANGLE` or `xi=VALUE`.
pub fn boundary_point(s: &str) -> Result<BoundaryPoint, String> {
    match s.split_once('=') {
        Some(("theta", v)) => BoundaryPoint::circle(angle(v)?).map_err(|e| e.to_string()),
        Some(("xi", v)) => Ok(BoundaryPoint::RealLine { xi: finite(v)? }),
        _ => Err(format!("expected theta=ANGLE or xi=VALUE, got {s}")),
    }
}

/// `POINT:WEIGHT` with POINT as in [`boundary_point`].
pub fn atom(s: &str) -> Result<cigar::martin::Atom, String> {
    let (p, w) = s.rsplit_once(':').ok_or_else(|| format!("expected POINT:WEIGHT, got {s}"))?;
    Ok(cigar::martin::Atom { point: boundary_point(p)?, weight: finite(w)? })
}

/// Evenly spaced grid, or a geometric one when `log` is set.
pub fn grid(flag: &str, from: f64, to: f64, n: usize, log: bool) -> CliResult<Vec<f64>> {
    if n == 0 {
        return Err(CliError::usage(flag, "needs at least one point"));
    }
    if log && !(from > 0.0 && to > 0.0) {
        return Err(CliError::usage(flag, "a logarithmic grid needs positive end points"));
    }
    let t = |i: usize| if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
    Ok((0..n)
        .map(|i| if log { (from.ln() + (to.ln() - from.ln()) * t(i)).exp() } else { from + (to - from) * t(i) })
        .collect())
}

pub fn describe(omega: BoundaryPoint) -> (&'static str, Option<f64>, Option<f64>) {
    match omega {
        BoundaryPoint::RealLine { xi } => ("real_line", Some(xi), None),
        BoundaryPoint::Circle { theta } => ("circle", None, Some(theta)),
    }
}
