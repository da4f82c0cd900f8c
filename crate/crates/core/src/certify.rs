//! Rayleigh-quotient certificates for the non-complete and minimum-degree
//! lower bounds.
//!
//! Both certificates use the same three-level witness. Pick non-adjacent
//! `v, w` at distance two, let `X = N(v) ∩ N(w)` and `A = |X|`, and set
//!
//! ```text
//! f(x) = -1             for x in X
//! f(v) = c · A / d(v)
//! f(w) = c · A / d(w)
//! f    = 0              elsewhere
//! ```
//!
//! with `c = (n-1)/2` for the bound `(n+1)/(n-1)` and `c = η = sqrt(δ(n-1-δ))`
//! for the bound `1 + 1/η`. The scale makes `Lf = bound · f` hold exactly at
//! `v` and `w`, and `-Lf(x) >= bound` holds on `X`, so `f Lf >= bound f²`
//! pointwise. Summing against the degrees gives `<Lf, f> >= bound <f, f>`.
//!
//! A [`PointwiseAudit`] records that pointwise inequality per vertex, so a
//! certificate can be checked with nothing more than [`apply_laplacian`].

use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundValue};
use crate::error::CertifyError;
use crate::format;
use crate::graph::{Graph, VertexSet};
use crate::spectral::{apply_laplacian, rayleigh_quotient, VertexFunction};

/// Slack tolerance for "the inequality holds".
pub const SLACK_TOL: f64 = 1e-9;
/// Slack tolerance for "the inequality is tight".
pub const EQUALITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Three-level witness for `(n+1)/(n-1)`.
    NonComplete,
    /// Three-level witness for `1 + 1/η`.
    MinDegree,
    /// Antisymmetric witness on a complete component, certifying `k/(k-1)`.
    Classical,
    /// Disconnected graph closed through its smallest component.
    SmallestComponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    NonComplete,
    MinDegree,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub method: Method,
    /// How a `SmallestComponent` certificate closes: `Classical` on a complete
    /// component or `NonComplete` on a non-complete one.
    pub closing: Option<Method>,
    /// Certified lower bound on `λ_n` of the whole graph.
    pub bound: BoundValue,
    /// Value the witness satisfies pointwise; at least `bound`.
    pub component_bound: BoundValue,
    /// Witness on the whole graph (zero outside `component`).
    pub witness: VertexFunction,
    pub pair: Option<(usize, usize)>,
    /// `N(v) ∩ N(w)`.
    pub common: VertexSet,
    /// `A = |N(v) ∩ N(w)|`.
    pub a: usize,
    /// `D = (d(v) + d(w)) / 2`.
    pub d: Option<f64>,
    pub eta: Option<f64>,
    pub component: VertexSet,
    /// True when the witness lives on a proper component of a disconnected graph.
    pub component_argument: bool,
    pub rayleigh: f64,
}

impl Certificate {
    pub fn record(&self, g: &Graph, audit: &PointwiseAudit) -> CertificateRecord {
        CertificateRecord {
            version: CertificateRecord::VERSION,
            graph6: format::to_graph6(g),
            method: self.method,
            closing: self.closing,
            component_argument: self.component_argument,
            pair: self.pair,
            common: self.common.to_vec(),
            a: self.a,
            d: self.d,
            eta: self.eta,
            component: self.component.to_vec(),
            witness: self.witness.0.clone(),
            bound: self.bound.exact.map(|q| q.to_string()),
            bound_value: self.bound.value,
            component_bound: self.component_bound.exact.map(|q| q.to_string()),
            component_bound_value: self.component_bound.value,
            rayleigh: self.rayleigh,
            slacks: audit.entries.iter().map(|e| (e.vertex, e.slack)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    V,
    W,
    Common,
    /// Support vertex of a `Classical` witness.
    Support,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuditEntry {
    pub vertex: usize,
    pub role: Role,
    pub f: f64,
    pub lf: f64,
    /// `sign(f(x)) · Lf(x) - bound · |f(x)|`; equals `Lf(v) - bound · f(v)` at
    /// the endpoints and `-Lf(x) - bound` on the common neighbourhood.
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointwiseAudit {
    pub bound: f64,
    pub entries: Vec<AuditEntry>,
    /// `f(v) + f(w)`, checked against `A`.
    pub endpoint_mass: Option<f64>,
    pub a: usize,
}

impl PointwiseAudit {
    pub fn min_slack(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.slack)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.min_slack() >= -tol
    }

    /// Every pointwise inequality is an equality within `tol`.
    pub fn is_tight(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.slack.abs() <= tol)
    }

    pub fn slack_at(&self, vertex: usize) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.vertex == vertex)
            .map(|e| e.slack)
    }
}

fn lowest(set: VertexSet) -> Option<usize> {
    set.first()
}

/// Chooses the witness pair: `v` is the lowest-index vertex with
/// `d(v) <= n-2` (or with `d(v) = δ` for [`Mode::MinDegree`]) and `w` the
/// lowest-index vertex of `N_2(v)`.
pub fn select_witness_pair(g: &Graph, mode: Mode) -> Result<(usize, usize), CertifyError> {
    let n = g.n();
    if g.is_complete() {
        return Err(CertifyError::GraphComplete);
    }
    if !g.is_connected() {
        return Err(CertifyError::Disconnected);
    }
    let v = match mode {
        Mode::NonComplete => (0..n).find(|&v| g.degree(v) + 2 <= n),
        Mode::MinDegree => {
            let d_min = g.min_degree();
            if 2 * d_min > n - 1 {
                return Err(CertifyError::DMinTooLarge { n, d_min });
            }
            (0..n).find(|&v| g.degree(v) == d_min)
        }
    }
    .expect("a non-complete graph has a vertex of degree at most n-2");
    let w = lowest(g.neighborhood_at_distance(v, 2))
        .expect("connected and v is not universal, so N_2(v) is nonempty");
    Ok((v, w))
}

fn common_neighbourhood(g: &Graph, v: usize, w: usize) -> Result<VertexSet, CertifyError> {
    if v == w || g.has_edge(v, w) {
        return Err(CertifyError::AdjacentPair(v, w));
    }
    let common = g.neighbors(v).intersection(g.neighbors(w));
    if common.is_empty() {
        return Err(CertifyError::EmptyCommonNeighborhood(v, w));
    }
    Ok(common)
}

fn three_level(
    g: &Graph,
    v: usize,
    w: usize,
    common: VertexSet,
    fv: f64,
    fw: f64,
) -> VertexFunction {
    let mut f = VertexFunction::zeros(g.n());
    for x in common {
        f[x] = -1.0;
    }
    f[v] = fv;
    f[w] = fw;
    f
}

/// `f = -1` on `N(v) ∩ N(w)`, `(n-1)/2 · A/d(v)` at `v`, `(n-1)/2 · A/d(w)` at `w`.
pub fn build_non_complete_witness(
    g: &Graph,
    v: usize,
    w: usize,
) -> Result<VertexFunction, CertifyError> {
    let common = common_neighbourhood(g, v, w)?;
    let n = g.n();
    let a = common.len();
    let scale = |d: usize| ((n - 1) * a) as f64 / (2 * d) as f64;
    Ok(three_level(
        g,
        v,
        w,
        common,
        scale(g.degree(v)),
        scale(g.degree(w)),
    ))
}

/// `f = -1` on `N(v) ∩ N(w)`, `η · A/d(v)` at `v`, `η · A/d(w)` at `w`, with
/// `η = sqrt(δ(n-1-δ))`. Returns the witness and `η`.
pub fn build_min_degree_witness(
    g: &Graph,
    v: usize,
    w: usize,
) -> Result<(VertexFunction, f64), CertifyError> {
    let n = g.n();
    let d_min = g.min_degree();
    if g.degree(v) != d_min {
        return Err(CertifyError::NotMinimumDegree {
            v,
            degree: g.degree(v),
            d_min,
        });
    }
    let eta = bounds::eta(n, d_min).map_err(|_| CertifyError::DMinTooLarge { n, d_min })?;
    let common = common_neighbourhood(g, v, w)?;
    let a = common.len() as f64;
    let f = three_level(
        g,
        v,
        w,
        common,
        eta * a / g.degree(v) as f64,
        eta * a / g.degree(w) as f64,
    );
    Ok((f, eta))
}

/// Records `f(x)`, `Lf(x)` and the pointwise slack for every vertex in the
/// witness support, measured against `cert.component_bound`.
pub fn audit_pointwise(g: &Graph, cert: &Certificate) -> Result<PointwiseAudit, CertifyError> {
    let lf = apply_laplacian(g, &cert.witness)?;
    let bound = cert.component_bound.value;
    let role = |x: usize| match cert.pair {
        Some((v, _)) if v == x => Role::V,
        Some((_, w)) if w == x => Role::W,
        _ if cert.common.contains(x) => Role::Common,
        _ => Role::Support,
    };
    let entries = cert
        .witness
        .support()
        .into_iter()
        .map(|x| {
            let f = cert.witness[x];
            AuditEntry {
                vertex: x,
                role: role(x),
                f,
                lf: lf[x],
                slack: f.signum() * lf[x] - bound * f.abs(),
            }
        })
        .collect();
    Ok(PointwiseAudit {
        bound,
        entries,
        endpoint_mass: cert.pair.map(|(v, w)| cert.witness[v] + cert.witness[w]),
        a: cert.a,
    })
}

fn check_endpoint_mass(audit: &PointwiseAudit) -> Result<(), CertifyError> {
    match audit.endpoint_mass {
        Some(sum) if sum < audit.a as f64 - SLACK_TOL => {
            Err(CertifyError::EndpointMassBelowA { sum, a: audit.a })
        }
        _ => Ok(()),
    }
}

fn ensure_degrees(g: &Graph) -> Result<(), CertifyError> {
    match g.isolated_vertex() {
        Some(v) => Err(crate::error::SpectralError::IsolatedVertex(v).into()),
        None => Ok(()),
    }
}

fn finish(g: &Graph, mut cert: Certificate) -> Result<(Certificate, PointwiseAudit), CertifyError> {
    cert.rayleigh = rayleigh_quotient(g, &cert.witness)?;
    let audit = audit_pointwise(g, &cert)?;
    check_endpoint_mass(&audit)?;
    Ok((cert, audit))
}

fn pair_fields(g: &Graph, v: usize, w: usize) -> (VertexSet, usize, f64) {
    let common = g.neighbors(v).intersection(g.neighbors(w));
    let d = (g.degree(v) + g.degree(w)) as f64 / 2.0;
    (common, common.len(), d)
}

/// Antisymmetric witness `1_a - 1_b` on a complete component `{a, b, ...}`
/// of size `k`; an eigenfunction for `k/(k-1)`.
fn complete_component_witness(g: &Graph, component: VertexSet) -> VertexFunction {
    let mut it = component.iter();
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    let mut f = VertexFunction::zeros(g.n());
    f[a] = 1.0;
    f[b] = -1.0;
    f
}

/// Certifies `λ_n >= (n+1)/(n-1)` for a non-complete graph without isolated
/// vertices. Disconnected graphs are closed through their smallest component.
pub fn certify_non_complete(g: &Graph) -> Result<(Certificate, PointwiseAudit), CertifyError> {
    ensure_degrees(g)?;
    if g.is_complete() {
        return Err(CertifyError::GraphComplete);
    }
    let n = g.n();
    let bound = BoundValue::exact(
        bounds::non_complete_lower_bound(n).expect("non-complete, no isolated vertex: n >= 3"),
    );

    if g.is_connected() {
        let (v, w) = select_witness_pair(g, Mode::NonComplete)?;
        let witness = build_non_complete_witness(g, v, w)?;
        let (common, a, d) = pair_fields(g, v, w);
        return finish(
            g,
            Certificate {
                method: Method::NonComplete,
                closing: None,
                bound,
                component_bound: bound,
                witness,
                pair: Some((v, w)),
                common,
                a,
                d: Some(d),
                eta: None,
                component: g.vertices(),
                component_argument: false,
                rayleigh: f64::NAN,
            },
        );
    }

    let parts = g.connected_components();
    let smallest = parts.smallest().expect("n >= 1");
    let (sub, map) = g.induced_subgraph(smallest)?;
    let k = sub.n();
    let lift = |f: &VertexFunction| {
        let mut out = VertexFunction::zeros(n);
        for (i, &x) in map.iter().enumerate() {
            out[x] = f[i];
        }
        out
    };
    let cert = if sub.is_complete() {
        Certificate {
            method: Method::SmallestComponent,
            closing: Some(Method::Classical),
            bound,
            component_bound: BoundValue::exact(bounds::classical_lower_bound(k).expect("k >= 2")),
            witness: complete_component_witness(g, smallest),
            pair: None,
            common: VertexSet::EMPTY,
            a: 0,
            d: None,
            eta: None,
            component: smallest,
            component_argument: true,
            rayleigh: f64::NAN,
        }
    } else {
        let (inner, _) = certify_non_complete(&sub)?;
        let (iv, iw) = inner.pair.expect("connected certificate has a pair");
        let (v, w) = (map[iv], map[iw]);
        let (common, a, d) = pair_fields(g, v, w);
        Certificate {
            method: Method::SmallestComponent,
            closing: Some(Method::NonComplete),
            bound,
            component_bound: inner.bound,
            witness: lift(&inner.witness),
            pair: Some((v, w)),
            common,
            a,
            d: Some(d),
            eta: None,
            component: smallest,
            component_argument: true,
            rayleigh: f64::NAN,
        }
    };
    finish(g, cert)
}

/// Certifies `λ_n >= 1 + 1/sqrt(δ(n-1-δ))` when `1 <= δ <= (n-1)/2`.
///
/// `v` is the lowest-index vertex of minimum degree. When the component of
/// `v` is not complete the three-level witness is built with the full `n`
/// (which only weakens the bound). When it is complete, that component is
/// `K_{δ+1}` and the antisymmetric witness certifies `(δ+1)/δ >= 1 + 1/η`.
pub fn certify_min_degree(g: &Graph) -> Result<(Certificate, PointwiseAudit), CertifyError> {
    ensure_degrees(g)?;
    let n = g.n();
    let d_min = g.min_degree();
    if n < 3 || 2 * d_min > n - 1 {
        return Err(CertifyError::DMinTooLarge { n, d_min });
    }
    let psi = bounds::min_degree_lower_bound(n, d_min).expect("domain checked");
    let bound = BoundValue {
        value: psi,
        exact: bounds::min_degree_exact(n, d_min).expect("domain checked"),
    };
    let v = (0..n).find(|&v| g.degree(v) == d_min).expect("n >= 1");
    let component = g.component_of(v);
    let component_argument = component != g.vertices();

    let cert = match lowest(g.neighborhood_at_distance(v, 2)) {
        Some(w) => {
            let (witness, eta) = build_min_degree_witness(g, v, w)?;
            let (common, a, d) = pair_fields(g, v, w);
            Certificate {
                method: Method::MinDegree,
                closing: None,
                bound,
                component_bound: bound,
                witness,
                pair: Some((v, w)),
                common,
                a,
                d: Some(d),
                eta: Some(eta),
                component,
                component_argument,
                rayleigh: f64::NAN,
            }
        }
        None => {
            // N_2(v) empty: every neighbour has degree >= δ = |component| - 1.
            let k = component.len();
            Certificate {
                method: Method::Classical,
                closing: None,
                bound,
                component_bound: BoundValue::exact(
                    bounds::classical_lower_bound(k).expect("k >= 2"),
                ),
                witness: complete_component_witness(g, component),
                pair: None,
                common: VertexSet::EMPTY,
                a: 0,
                d: None,
                eta: None,
                component,
                component_argument,
                rayleigh: f64::NAN,
            }
        }
    };
    finish(g, cert)
}

/// Both sides of the minimum-degree lemma
/// `(η/(n-1)) · max(1, d_v+d_w+2-n) · (1/d_v + 1/d_w - 1/η) >= 1/η - 1/(n-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemmaEvaluation {
    pub n: usize,
    pub d_v: usize,
    pub d_w: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// `1` when `d_v + d_w <= n - 1`, else `2`.
    pub case: u8,
}

pub fn lemma_evaluate(n: usize, d_v: usize, d_w: usize) -> Result<LemmaEvaluation, CertifyError> {
    if n < 3 || d_v == 0 || 2 * d_v > n - 1 || d_w < d_v || d_w + 2 > n {
        return Err(CertifyError::LemmaDomain { n, d_v, d_w });
    }
    let eta = ((d_v * (n - 1 - d_v)) as f64).sqrt();
    let n1 = (n - 1) as f64;
    let overlap = (d_v + d_w + 2).saturating_sub(n).max(1) as f64;
    let lhs = eta / n1 * overlap * (1.0 / d_v as f64 + 1.0 / d_w as f64 - 1.0 / eta);
    let rhs = 1.0 / eta - 1.0 / n1;
    Ok(LemmaEvaluation {
        n,
        d_v,
        d_w,
        lhs,
        rhs,
        slack: lhs - rhs,
        case: if d_v + d_w < n { 1 } else { 2 },
    })
}

/// Truth of the lemma inequality with slack tolerance `-1e-12`.
pub fn lemma_check(n: usize, d_v: usize, d_w: usize) -> Result<bool, CertifyError> {
    Ok(lemma_evaluate(n, d_v, d_w)?.slack >= -EQUALITY_TOL)
}

/// Summary of a full lemma grid `3 <= n <= n_max`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaGrid {
    pub n_max: usize,
    pub points: u64,
    pub failures: Vec<LemmaEvaluation>,
    pub worst_slack: f64,
    /// Largest `|slack|` on the boundary `d_w = n - 1 - d_v`.
    pub boundary_max_abs_slack: f64,
    pub boundary_points: u64,
}

pub fn lemma_grid(n_max: usize) -> LemmaGrid {
    let mut grid = LemmaGrid {
        n_max,
        points: 0,
        failures: Vec::new(),
        worst_slack: f64::INFINITY,
        boundary_max_abs_slack: 0.0,
        boundary_points: 0,
    };
    for n in 3..=n_max {
        for d_v in 1..=(n - 1) / 2 {
            for d_w in d_v..=n - 2 {
                let e = lemma_evaluate(n, d_v, d_w).expect("grid stays in domain");
                grid.points += 1;
                grid.worst_slack = grid.worst_slack.min(e.slack);
                if e.slack < -EQUALITY_TOL {
                    grid.failures.push(e);
                }
                if d_w == n - 1 - d_v {
                    grid.boundary_points += 1;
                    grid.boundary_max_abs_slack = grid.boundary_max_abs_slack.max(e.slack.abs());
                }
            }
        }
    }
    grid
}

/// Self-contained serialized certificate: enough to re-check the bound with
/// only the graph6 string and [`apply_laplacian`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub version: u32,
    pub graph6: String,
    pub method: Method,
    pub closing: Option<Method>,
    /// Set when a disconnected graph was certified through one component.
    pub component_argument: bool,
    pub pair: Option<(usize, usize)>,
    pub common: Vec<usize>,
    pub a: usize,
    pub d: Option<f64>,
    pub eta: Option<f64>,
    pub component: Vec<usize>,
    pub witness: Vec<f64>,
    /// Exact bound as `p/q` when rational.
    pub bound: Option<String>,
    pub bound_value: f64,
    pub component_bound: Option<String>,
    pub component_bound_value: f64,
    pub rayleigh: f64,
    pub slacks: Vec<(usize, f64)>,
}

impl CertificateRecord {
    pub const VERSION: u32 = 1;
}

/// Outcome of re-checking a [`CertificateRecord`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reverification {
    pub valid: bool,
    pub rayleigh: f64,
    pub min_slack: f64,
    pub problems: Vec<String>,
}

fn exact_or_value(exact: &Option<String>, value: f64) -> Result<f64, CertifyError> {
    match exact {
        Some(s) => bounds::parse_fraction(s)
            .map(bounds::to_f64)
            .ok_or_else(|| CertifyError::InvalidRecord(format!("bad fraction {s:?}"))),
        None => Ok(value),
    }
}

/// Recomputes `Lf` from the record's graph and witness and checks the
/// pointwise inequality, the quotient and the bound ordering.
pub fn reverify(record: &CertificateRecord) -> Result<Reverification, CertifyError> {
    let g = format::parse_graph6(&record.graph6)?;
    if record.witness.len() != g.n() {
        return Err(CertifyError::InvalidRecord(format!(
            "witness has {} entries for {} vertices",
            record.witness.len(),
            g.n()
        )));
    }
    let f = VertexFunction(record.witness.clone());
    let lf = apply_laplacian(&g, &f)?;
    let bound = exact_or_value(&record.bound, record.bound_value)?;
    let target = exact_or_value(&record.component_bound, record.component_bound_value)?;
    let mut problems = Vec::new();

    let mut min_slack = f64::INFINITY;
    for x in f.support() {
        let slack = f[x].signum() * lf[x] - target * f[x].abs();
        min_slack = min_slack.min(slack);
        if slack < -SLACK_TOL {
            problems.push(format!("pointwise slack {slack:e} at vertex {x}"));
        }
    }
    let rayleigh = rayleigh_quotient(&g, &f)?;
    if rayleigh < target - SLACK_TOL {
        problems.push(format!(
            "rayleigh {rayleigh} below witnessed value {target}"
        ));
    }
    if target < bound - SLACK_TOL {
        problems.push(format!(
            "witnessed value {target} below claimed bound {bound}"
        ));
    }
    if (rayleigh - record.rayleigh).abs() > 1e-12 * rayleigh.abs().max(1.0) {
        problems.push(format!(
            "recorded rayleigh {} differs from recomputed {rayleigh}",
            record.rayleigh
        ));
    }
    let allowed: VertexSet = match record.pair {
        Some((v, w)) => record.common.iter().copied().chain([v, w]).collect(),
        None => record.component.iter().copied().collect(),
    };
    if f.support().iter().any(|&x| !allowed.contains(x)) {
        problems.push("witness is nonzero outside {v, w} ∪ N(v) ∩ N(w)".into());
    }
    Ok(Reverification {
        valid: problems.is_empty(),
        rayleigh,
        min_slack,
        problems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::spectral;

    #[test]
    fn pair_selection() {
        assert_eq!(
            select_witness_pair(&cycle(5).unwrap(), Mode::NonComplete).unwrap(),
            (0, 2)
        );
        assert_eq!(
            select_witness_pair(&complete_minus_edge(7).unwrap(), Mode::NonComplete).unwrap(),
            (0, 1)
        );
        assert_eq!(
            select_witness_pair(&star(5).unwrap(), Mode::MinDegree).unwrap(),
            (1, 2)
        );
        assert_eq!(
            select_witness_pair(&complete(4).unwrap(), Mode::NonComplete),
            Err(CertifyError::GraphComplete)
        );
        let two_edges = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            select_witness_pair(&two_edges, Mode::NonComplete),
            Err(CertifyError::Disconnected)
        );
        assert_eq!(
            select_witness_pair(&complete_minus_edge(5).unwrap(), Mode::MinDegree),
            Err(CertifyError::DMinTooLarge { n: 5, d_min: 3 })
        );
    }

    #[test]
    fn non_complete_witnesses() {
        let c5 = cycle(5).unwrap();
        assert_eq!(
            build_non_complete_witness(&c5, 0, 2).unwrap().0,
            vec![1.0, -1.0, 1.0, 0.0, 0.0]
        );

        let g = complete_minus_edge(5).unwrap();
        assert_eq!(
            build_non_complete_witness(&g, 0, 1).unwrap().0,
            vec![2.0, 2.0, -1.0, -1.0, -1.0]
        );

        let g = glued_complete(4).unwrap();
        let f = build_non_complete_witness(&g, 1, 4).unwrap();
        assert_eq!(f.0, vec![-1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);

        assert_eq!(
            build_non_complete_witness(&c5, 0, 1),
            Err(CertifyError::AdjacentPair(0, 1))
        );
        let p4 = path(4).unwrap();
        assert_eq!(
            build_non_complete_witness(&p4, 0, 3),
            Err(CertifyError::EmptyCommonNeighborhood(0, 3))
        );
    }

    #[test]
    fn non_complete_eigen_equation_at_endpoints() {
        for g in [
            cycle(7).unwrap(),
            complete_minus_edge(9).unwrap(),
            star(6).unwrap(),
        ] {
            let (v, w) = select_witness_pair(&g, Mode::NonComplete).unwrap();
            let f = build_non_complete_witness(&g, v, w).unwrap();
            let lf = apply_laplacian(&g, &f).unwrap();
            let b = bounds::to_f64(bounds::non_complete_lower_bound(g.n()).unwrap());
            assert!((lf[v] - b * f[v]).abs() < 1e-12);
            assert!((lf[w] - b * f[w]).abs() < 1e-12);
        }
    }

    #[test]
    fn min_degree_witnesses() {
        let s5 = star(5).unwrap();
        let (f, eta) = build_min_degree_witness(&s5, 1, 2).unwrap();
        let r3 = 3f64.sqrt();
        assert!((eta - r3).abs() < 1e-15);
        assert_eq!(f.0, vec![-1.0, r3, r3, 0.0, 0.0]);
        let lf = apply_laplacian(&s5, &f).unwrap();
        let psi = 1.0 + 1.0 / r3;
        assert!((lf[1] - (r3 + 1.0)).abs() < 1e-12);
        assert!((lf[1] - psi * r3).abs() < 1e-12);

        let g = glued_complete(4).unwrap();
        let (f, eta) = build_min_degree_witness(&g, 1, 4).unwrap();
        assert_eq!(eta, 3.0);
        assert_eq!(f, build_non_complete_witness(&g, 1, 4).unwrap());

        let p3 = path(3).unwrap();
        let (f, eta) = build_min_degree_witness(&p3, 0, 2).unwrap();
        assert_eq!(eta, 1.0);
        assert_eq!(f.0, vec![1.0, -1.0, 1.0]);

        assert!(matches!(
            build_min_degree_witness(&s5, 0, 1),
            Err(CertifyError::NotMinimumDegree { v: 0, .. })
        ));
    }

    #[test]
    fn certify_non_complete_examples() {
        let (c, audit) = certify_non_complete(&cycle(5).unwrap()).unwrap();
        assert_eq!(c.method, Method::NonComplete);
        assert_eq!(c.bound.exact, Some(bounds::fraction(3, 2)));
        assert!((c.rayleigh - 5.0 / 3.0).abs() < 1e-15);
        assert!((audit.slack_at(1).unwrap() - 0.5).abs() < 1e-15);
        assert!(audit.slack_at(0).unwrap().abs() < 1e-15);

        let (c, audit) = certify_non_complete(&complete_minus_edge(7).unwrap()).unwrap();
        assert!((c.rayleigh - 4.0 / 3.0).abs() < 1e-15);
        assert!(audit.is_tight(EQUALITY_TOL));

        let (_, audit) = certify_non_complete(&complete_minus_edge(5).unwrap()).unwrap();
        assert!(audit.is_tight(EQUALITY_TOL));
        assert_eq!(audit.entries.len(), 5);

        let tt =
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let (c, audit) = certify_non_complete(&tt).unwrap();
        assert_eq!(c.method, Method::SmallestComponent);
        assert_eq!(c.closing, Some(Method::Classical));
        assert_eq!(c.component_bound.exact, Some(bounds::fraction(3, 2)));
        assert_eq!(c.bound.exact, Some(bounds::fraction(7, 5)));
        assert!((c.rayleigh - 1.5).abs() < 1e-15);
        assert!(audit.holds(SLACK_TOL));

        assert_eq!(
            certify_non_complete(&complete(5).unwrap()).unwrap_err(),
            CertifyError::GraphComplete
        );
        let iso = Graph::from_edge_list(4, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            certify_non_complete(&iso),
            Err(CertifyError::Spectral(_))
        ));
    }

    #[test]
    fn certify_non_complete_recurses_into_non_complete_component() {
        // P_3 (vertices 0..3) next to K_4 (vertices 3..7): the path is smallest.
        let mut edges = vec![(0, 1), (1, 2)];
        for u in 3..7 {
            for v in u + 1..7 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edge_list(7, &edges).unwrap();
        let (c, audit) = certify_non_complete(&g).unwrap();
        assert_eq!(c.closing, Some(Method::NonComplete));
        assert_eq!(c.pair, Some((0, 2)));
        assert_eq!(c.component_bound.exact, Some(bounds::fraction(2, 1)));
        assert!((c.rayleigh - 2.0).abs() < 1e-12);
        assert!(audit.holds(SLACK_TOL));
    }

    #[test]
    fn certify_min_degree_examples() {
        let (c, _) = certify_min_degree(&star(9).unwrap()).unwrap();
        assert!((c.bound.value - (1.0 + 1.0 / 7f64.sqrt())).abs() < 1e-15);
        assert!((c.bound.value - 1.37796).abs() < 1e-5);
        assert!(c.rayleigh <= 2.0 + 1e-12);

        let g = glued_complete(5).unwrap();
        let (c, audit) = certify_min_degree(&g).unwrap();
        assert_eq!(c.bound.exact, Some(bounds::fraction(5, 4)));
        assert!((c.rayleigh - 1.25).abs() < 1e-12);
        assert!(audit.is_tight(EQUALITY_TOL));
        assert!((spectral::lambda_max(&g).unwrap() - 1.25).abs() < 1e-12);

        let (c, _) = certify_min_degree(&cycle(6).unwrap()).unwrap();
        assert!((c.bound.value - (1.0 + 1.0 / 6f64.sqrt())).abs() < 1e-15);

        assert!(matches!(
            certify_min_degree(&complete(5).unwrap()),
            Err(CertifyError::DMinTooLarge { .. })
        ));
    }

    #[test]
    fn certify_min_degree_disconnected() {
        // K_3 next to K_4: min degree 2 lives on the complete triangle.
        let mut edges = vec![(0, 1), (1, 2), (0, 2)];
        for u in 3..7 {
            for v in u + 1..7 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edge_list(7, &edges).unwrap();
        let (c, audit) = certify_min_degree(&g).unwrap();
        assert_eq!(c.method, Method::Classical);
        assert!(c.component_argument);
        assert_eq!(c.component_bound.exact, Some(bounds::fraction(3, 2)));
        assert!(c.component_bound.value >= c.bound.value);
        assert!(audit.holds(SLACK_TOL));

        // P_3 next to C_4: the witness is built on the path with the full n.
        let g =
            Graph::from_edge_list(7, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        let (c, audit) = certify_min_degree(&g).unwrap();
        assert_eq!(c.method, Method::MinDegree);
        assert!(c.component_argument);
        assert_eq!(c.eta, Some(5f64.sqrt()));
        assert!(audit.holds(SLACK_TOL));
        assert!(c.rayleigh >= c.bound.value - SLACK_TOL);
    }

    #[test]
    fn audit_examples() {
        let s5 = star(5).unwrap();
        let (c, audit) = certify_min_degree(&s5).unwrap();
        // -Lf(center) = (4 + 2√3)/4 = 1 + √3/2; slack = that minus (1 + 1/√3).
        let lf0 = (4.0 + 2.0 * 3f64.sqrt()) / 4.0;
        let expected = lf0 - (1.0 + 1.0 / 3f64.sqrt());
        assert!((audit.slack_at(0).unwrap() - expected).abs() < 1e-15);
        assert!((expected - (3f64.sqrt() / 2.0 - 1.0 / 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(c.pair, Some((1, 2)));
        assert!(audit.endpoint_mass.unwrap() >= audit.a as f64);
    }

    #[test]
    fn lemma_examples() {
        let e = lemma_evaluate(5, 1, 3).unwrap();
        assert_eq!(e.case, 1);
        assert!(e.slack.abs() < 1e-12);
        assert!(lemma_check(5, 1, 3).unwrap());
        let e = lemma_evaluate(7, 3, 5).unwrap();
        assert_eq!(e.case, 2);
        assert!(e.slack > 0.0);
        assert!(lemma_check(9, 4, 4).unwrap());
        assert_eq!(lemma_evaluate(9, 4, 4).unwrap().case, 1);
        assert!(lemma_check(6, 3, 4).is_err());
        assert!(lemma_check(6, 2, 1).is_err());
        assert!(lemma_check(6, 2, 5).is_err());
        assert!(lemma_check(2, 1, 1).is_err());
    }

    #[test]
    fn records_reverify() {
        for g in [
            cycle(5).unwrap(),
            star(6).unwrap(),
            glued_complete(3).unwrap(),
        ] {
            let (c, audit) = certify_non_complete(&g).unwrap();
            let rec = c.record(&g, &audit);
            let json = serde_json::to_string(&rec).unwrap();
            let back: CertificateRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(back, rec);
            assert!(reverify(&back).unwrap().valid);
        }
        let g = cycle(5).unwrap();
        let (c, audit) = certify_non_complete(&g).unwrap();
        let mut rec = c.record(&g, &audit);
        rec.witness[3] = 0.5;
        let r = reverify(&rec).unwrap();
        assert!(!r.valid);
        let mut rec = c.record(&g, &audit);
        rec.bound = Some("2".into());
        assert!(!reverify(&rec).unwrap().valid);
    }
}
