//! Closed-form lower bounds on the largest normalized-Laplacian eigenvalue.
//!
//! | bound            | value                         | applies when               |
//! |------------------|-------------------------------|----------------------------|
//! | classical        | `n/(n-1)`                     | always (equality iff `K_n`)|
//! | non-complete     | `(n+1)/(n-1)`                 | `G` is not complete        |
//! | minimum degree   | `1 + 1/sqrt(δ(n-1-δ))`        | `1 <= δ <= (n-1)/2`        |
//! | maximum degree   | `2m/(2m-Δ)`                   | `m >= 1`                   |
//!
//! Rational bounds carry an exact [`Fraction`] next to their `f64` value.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::BoundsError;
use crate::graph::Graph;
use crate::spectral;

pub type Fraction = Ratio<i64>;

pub fn fraction(num: i64, den: i64) -> Fraction {
    Ratio::new(num, den)
}

pub fn to_f64(q: Fraction) -> f64 {
    q.to_f64().expect("small fractions convert")
}

/// Serializes a fraction as `"p/q"` (or `"p"` when integral).
pub fn serialize_fraction<S: Serializer>(q: &Fraction, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn serialize_opt_fraction<S: Serializer>(q: &Option<Fraction>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

pub fn parse_fraction(s: &str) -> Option<Fraction> {
    s.trim().parse().ok()
}

/// `n/(n-1)`.
pub fn classical_lower_bound(n: usize) -> Result<Fraction, BoundsError> {
    if n < 2 {
        return Err(BoundsError::TooFewVertices { n, min: 2 });
    }
    Ok(fraction(n as i64, n as i64 - 1))
}

/// `(n+1)/(n-1)`, valid for every non-complete graph on `n` vertices.
pub fn non_complete_lower_bound(n: usize) -> Result<Fraction, BoundsError> {
    if n < 3 {
        return Err(BoundsError::TooFewVertices { n, min: 3 });
    }
    Ok(fraction(n as i64 + 1, n as i64 - 1))
}

/// `η = sqrt(δ(n-1-δ))`, so that the minimum-degree bound is `1 + 1/η`.
pub fn eta(n: usize, d_min: usize) -> Result<f64, BoundsError> {
    check_min_degree(n, d_min)?;
    Ok(((d_min * (n - 1 - d_min)) as f64).sqrt())
}

fn check_min_degree(n: usize, d_min: usize) -> Result<(), BoundsError> {
    if n < 3 {
        return Err(BoundsError::TooFewVertices { n, min: 3 });
    }
    if d_min == 0 {
        return Err(BoundsError::DMinZero);
    }
    if 2 * d_min > n - 1 {
        return Err(BoundsError::DMinTooLarge { n, d_min });
    }
    Ok(())
}

/// `ψ(n, δ) = 1 + 1/sqrt(δ(n-1-δ))` for `1 <= δ <= (n-1)/2`.
pub fn min_degree_lower_bound(n: usize, d_min: usize) -> Result<f64, BoundsError> {
    Ok(1.0 + 1.0 / eta(n, d_min)?)
}

/// Exact value of the minimum-degree bound when `δ(n-1-δ)` is a perfect square.
pub fn min_degree_exact(n: usize, d_min: usize) -> Result<Option<Fraction>, BoundsError> {
    check_min_degree(n, d_min)?;
    let p = (d_min * (n - 1 - d_min)) as u64;
    let r = p.isqrt();
    Ok((r * r == p).then(|| fraction(r as i64 + 1, r as i64)))
}

/// `2m/(2m-Δ)`.
pub fn li_guo_shiu_bound(m: usize, delta: usize) -> Result<Fraction, BoundsError> {
    if m == 0 || delta == 0 || delta >= 2 * m {
        return Err(BoundsError::DegreeOutOfRange { m, delta });
    }
    Ok(fraction(2 * m as i64, 2 * m as i64 - delta as i64))
}

/// One bound value: the exact fraction where the formula is rational.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub value: f64,
    #[serde(serialize_with = "serialize_opt_fraction")]
    pub exact: Option<Fraction>,
}

impl BoundValue {
    pub fn exact(q: Fraction) -> Self {
        BoundValue {
            value: to_f64(q),
            exact: Some(q),
        }
    }

    pub fn real(value: f64) -> Self {
        BoundValue { value, exact: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Classical,
    NonComplete,
    MinDegree,
    LiGuoShiu,
}

/// All applicable bounds for one graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub d_min: usize,
    pub delta: usize,
    pub classical: BoundValue,
    /// Absent for complete graphs.
    pub non_complete: Option<BoundValue>,
    /// Absent when `d_min > (n-1)/2`; the formula is not extrapolated there.
    pub min_degree: Option<BoundValue>,
    pub li_guo_shiu: BoundValue,
    pub best: BoundValue,
    pub best_kind: BoundKind,
    pub lambda_n: Option<f64>,
}

impl BoundReport {
    pub fn present(&self) -> Vec<(BoundKind, BoundValue)> {
        let mut out = vec![(BoundKind::Classical, self.classical)];
        if let Some(b) = self.non_complete {
            out.push((BoundKind::NonComplete, b));
        }
        if let Some(b) = self.min_degree {
            out.push((BoundKind::MinDegree, b));
        }
        out.push((BoundKind::LiGuoShiu, self.li_guo_shiu));
        out
    }

    /// Bounds exceeding `lambda_n + tol`; always empty for a correct report.
    pub fn violations(&self, tol: f64) -> Vec<(BoundKind, f64)> {
        let Some(l) = self.lambda_n else {
            return Vec::new();
        };
        self.present()
            .into_iter()
            .filter(|(_, b)| b.value > l + tol)
            .map(|(k, b)| (k, b.value))
            .collect()
    }
}

pub fn bound_report(g: &Graph, compute_spectrum: bool) -> Result<BoundReport, BoundsError> {
    if let Some(v) = g.isolated_vertex() {
        return Err(spectral_isolated(v));
    }
    let n = g.n();
    let m = g.edge_count();
    let d_min = g.min_degree();
    let delta = g.max_degree();

    let classical = BoundValue::exact(classical_lower_bound(n)?);
    let non_complete = if g.is_complete() {
        None
    } else {
        Some(BoundValue::exact(non_complete_lower_bound(n)?))
    };
    let min_degree = if n >= 3 && 2 * d_min < n {
        Some(BoundValue {
            value: min_degree_lower_bound(n, d_min)?,
            exact: min_degree_exact(n, d_min)?,
        })
    } else {
        None
    };
    let li_guo_shiu = BoundValue::exact(li_guo_shiu_bound(m, delta)?);

    let mut best = (BoundKind::Classical, classical);
    for (kind, b) in [
        (BoundKind::NonComplete, non_complete),
        (BoundKind::MinDegree, min_degree),
        (BoundKind::LiGuoShiu, Some(li_guo_shiu)),
    ] {
        if let Some(b) = b {
            if b.value > best.1.value {
                best = (kind, b);
            }
        }
    }
    let lambda_n = if compute_spectrum {
        Some(spectral::lambda_max(g)?)
    } else {
        None
    };
    Ok(BoundReport {
        n,
        m,
        d_min,
        delta,
        classical,
        non_complete,
        min_degree,
        li_guo_shiu,
        best: best.1,
        best_kind: best.0,
        lambda_n,
    })
}

fn spectral_isolated(v: usize) -> BoundsError {
    BoundsError::Spectral(crate::error::SpectralError::IsolatedVertex(v))
}
