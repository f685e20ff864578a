//! Numeric n-fans: existence by bracketing, the radius by bisection, vertex
//! coordinates, and SVG/CSV output.

mod render;

pub use render::{render, Format};

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{Coeff, Rational, Scalar};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("a fan needs at least one side")]
    Empty,
    #[error("expected {expected} values, got {found}")]
    Count { expected: usize, found: usize },
    #[error("value {0} must be positive")]
    NonPositive(String),
    #[error("central angle must lie in (0, 2pi]; p = cos(delta/2) = {0} is out of range")]
    AngleRange(String),
    #[error("a {0}-fan with central angle 2pi given by central distances is degenerate")]
    Degenerate(usize),
    #[error("no convex fan with these data exists: {0}")]
    NoSolution(String),
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("unsupported output format {0:?}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataKind {
    CentralDistances,
    SideLengths,
}

impl DataKind {
    /// The quantity called u for this kind of data.
    pub fn u_convention(self) -> &'static str {
        match self {
            DataKind::CentralDistances => "u = 1/r",
            DataKind::SideLengths => "u = 1/(2r)",
        }
    }
}

/// Given data of an n-fan. `p = cos(δ/2)` is exact when known; the values
/// are exact as well so that certificates can be built from the same spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FanSpec {
    pub n: usize,
    pub p: Option<Scalar>,
    pub delta: f64,
    pub kind: DataKind,
    pub values: Vec<Scalar>,
}

fn validate_values(values: &[Scalar]) -> Result<(), GeomError> {
    if values.is_empty() {
        return Err(GeomError::Empty);
    }
    if let Some(bad) = values.iter().find(|v| v.signum() <= 0) {
        return Err(GeomError::NonPositive(bad.to_string()));
    }
    Ok(())
}

impl FanSpec {
    /// Exact angle parameter p = cos(δ/2) ∈ [−1, 1).
    pub fn new(kind: DataKind, p: Scalar, values: Vec<Scalar>) -> Result<Self, GeomError> {
        validate_values(&values)?;
        let one = Scalar::one();
        if p.checked_sub(&one).map_or(true, |d| d.signum() >= 0) || p.checked_add(&one).map_or(true, |s| s.signum() < 0) {
            return Err(GeomError::AngleRange(p.to_string()));
        }
        let delta = 2.0 * p.to_f64().clamp(-1.0, 1.0).acos();
        let spec = FanSpec { n: values.len(), p: Some(p), delta, kind, values };
        spec.check_degenerate()?;
        Ok(spec)
    }

    /// Angle known only numerically; values given as floats are stored
    /// as the exact binary fractions they denote.
    pub fn numeric(kind: DataKind, delta: f64, values: &[f64]) -> Result<Self, GeomError> {
        if !(delta > 0.0 && delta <= 2.0 * PI) {
            return Err(GeomError::AngleRange(format!("{}", (delta / 2.0).cos())));
        }
        let values: Vec<Scalar> = values
            .iter()
            .map(|&v| Rational::from_f64(v).map(Scalar::from).ok_or_else(|| GeomError::NonPositive(v.to_string())))
            .collect::<Result<_, _>>()?;
        validate_values(&values)?;
        let spec = FanSpec { n: values.len(), p: None, delta, kind, values };
        spec.check_degenerate()?;
        Ok(spec)
    }

    pub fn is_full_turn(&self) -> bool {
        match &self.p {
            Some(p) => p.checked_add(&Scalar::one()).map_or(false, |s| s.is_zero()),
            None => (self.delta - 2.0 * PI).abs() < 1e-15,
        }
    }

    fn check_degenerate(&self) -> Result<(), GeomError> {
        if self.kind == DataKind::CentralDistances && self.is_full_turn() && self.n <= 2 {
            return Err(GeomError::Degenerate(self.n));
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), GeomError> {
        validate_values(&self.values)?;
        if self.values.len() != self.n {
            return Err(GeomError::Count { expected: self.n, found: self.values.len() });
        }
        if !(self.delta > 0.0 && self.delta <= 2.0 * PI + 1e-15) {
            return Err(GeomError::AngleRange(format!("{}", (self.delta / 2.0).cos())));
        }
        self.check_degenerate()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.values.iter().map(Coeff::to_f64).collect()
    }

    pub fn p_f64(&self) -> f64 {
        self.p.as_ref().map_or_else(|| (self.delta / 2.0).cos(), Coeff::to_f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FanSolution {
    pub radius: f64,
    /// u = 1/r for central distances, 1/(2r) for side lengths.
    pub u: f64,
    pub half_angles: Vec<f64>,
    pub vertices: Vec<[f64; 2]>,
    /// |Σαᵢ − δ/2| at the returned solution.
    pub residual: f64,
    pub iterations: usize,
    /// Value of the exact family polynomial at this solution, when the data
    /// fit a family.
    pub family_residual: Option<f64>,
}

/// F(u) = Σ arccos(dᵢ·u), strictly decreasing on (0, 1/max dᵢ].
pub fn central_objective(d: &[f64], u: f64) -> f64 {
    d.iter().map(|&di| (di * u).clamp(-1.0, 1.0).acos()).sum()
}

/// G(u) = Σ arcsin(aᵢ·u), strictly increasing on (0, 1/max aᵢ].
pub fn side_objective(a: &[f64], u: f64) -> f64 {
    a.iter().map(|&ai| (ai * u).clamp(-1.0, 1.0).asin()).sum()
}

/// Solves for the radius. The bracket (0, 1/max) for u is searched through
/// the angle θ of the longest datum, a monotone reparametrization with
/// bounded slope, so the residual reaches rounding level.
pub fn solve_radius(spec: &FanSpec, tol: f64) -> Result<FanSolution, GeomError> {
    if !(tol > 0.0) {
        return Err(GeomError::BadTolerance);
    }
    spec.validate()?;
    let vals = spec.values_f64();
    let target = spec.delta / 2.0;
    let m = vals.iter().cloned().fold(f64::MIN, f64::max);
    let n = vals.len() as f64;

    // angles as a function of θ ∈ [0, π/2], in atan2 form: acos and asin
    // lose accuracy near ±1, which is exactly where the longest datum sits
    let ratios: Vec<(f64, f64)> = vals.iter().map(|&v| (v / m, (m - v) * (m + v) / (m * m))).collect();
    let angles: Box<dyn Fn(f64) -> Vec<f64>> = match spec.kind {
        // cos α = k·cos θ with θ = arccos(m·u); u runs from 1/m down to 0
        DataKind::CentralDistances => Box::new(move |t: f64| {
            let (c, s) = (t.cos(), t.sin());
            ratios.iter().map(|&(k, one_minus_k2)| (one_minus_k2 + k * k * s * s).sqrt().atan2(k * c)).collect()
        }),
        // sin α = k·sin θ with θ = arcsin(m·u)
        DataKind::SideLengths => Box::new(move |t: f64| {
            let (c, s) = (t.cos(), t.sin());
            ratios.iter().map(|&(k, one_minus_k2)| (k * s).atan2((one_minus_k2 + k * k * c * c).sqrt())).collect()
        }),
    };
    let sum = |t: f64| angles(t).iter().sum::<f64>();

    let (lo_val, hi_val) = (sum(0.0), sum(FRAC_PI_2));
    let exists = match spec.kind {
        DataKind::CentralDistances => target > lo_val && target < n * FRAC_PI_2,
        DataKind::SideLengths => target > 0.0 && target <= hi_val + tol,
    };
    if !exists {
        let range = match spec.kind {
            DataKind::CentralDistances => format!("delta/2 = {target} must lie in ({lo_val}, {})", n * FRAC_PI_2),
            DataKind::SideLengths => format!("delta/2 = {target} must lie in (0, {hi_val}]"),
        };
        return Err(GeomError::NoSolution(range));
    }

    // Σ(θ) is increasing in θ for both kinds
    let (mut lo, mut hi) = (0.0f64, FRAC_PI_2);
    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = sum(mid) - target;
        if f.abs() <= tol * 1e-3 {
            lo = mid;
            hi = mid;
            break;
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta = {
        let (fl, fh) = ((sum(lo) - target).abs(), (sum(hi) - target).abs());
        if fl <= fh {
            lo
        } else {
            hi
        }
    };
    let half_angles = angles(theta);
    let residual = (half_angles.iter().sum::<f64>() - target).abs();
    if residual > tol {
        return Err(GeomError::NoSolution(format!("bisection stalled with residual {residual:e}")));
    }
    let u = match spec.kind {
        DataKind::CentralDistances => theta.cos() / m,
        DataKind::SideLengths => theta.sin() / m,
    };
    let radius = match spec.kind {
        DataKind::CentralDistances => 1.0 / u,
        DataKind::SideLengths => 1.0 / (2.0 * u),
    };
    let mut sol = FanSolution { radius, u, half_angles, vertices: Vec::new(), residual, iterations, family_residual: None };
    sol.vertices = fan_vertices(&sol, spec);
    sol.family_residual = crate::fanpoly::family_residual(spec, &sol);
    Ok(sol)
}

/// A₀ at angle 0 on the circle of radius r about the origin, Aᵢ at angle
/// 2(α₁ + … + αᵢ), counterclockwise. A full turn closes exactly.
pub fn fan_vertices(sol: &FanSolution, spec: &FanSpec) -> Vec<[f64; 2]> {
    let r = sol.radius;
    let mut out = Vec::with_capacity(sol.half_angles.len() + 1);
    out.push([r, 0.0]);
    let mut acc = 0.0;
    for a in &sol.half_angles {
        acc += 2.0 * a;
        out.push([r * acc.cos(), r * acc.sin()]);
    }
    if spec.is_full_turn() {
        if let Some(last) = out.last_mut() {
            *last = [r, 0.0];
        }
    }
    out
}

/// Distances from the origin to the chords AᵢAᵢ₊₁.
pub fn central_distances_of(vertices: &[[f64; 2]]) -> Vec<f64> {
    vertices
        .windows(2)
        .map(|w| {
            let mx = 0.5 * (w[0][0] + w[1][0]);
            let my = 0.5 * (w[0][1] + w[1][1]);
            mx.hypot(my)
        })
        .collect()
}

pub fn side_lengths_of(vertices: &[[f64; 2]]) -> Vec<f64> {
    vertices.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).collect()
}
