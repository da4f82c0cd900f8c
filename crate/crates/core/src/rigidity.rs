//! Equality cases of `λ_n >= (n+1)/(n-1)`.
//!
//! Equality holds exactly when the complement, with isolated vertices
//! removed, is a single edge or `K_{(n-1)/2, (n-1)/2}`. The classifier here
//! is pure combinatorics; [`equality_eigenbasis`] supplies the closed-form
//! eigenfunctions that prove the converse direction.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, Fraction};
use crate::error::{RigidityError, SpectralError};
use crate::generators;
use crate::graph::{Graph, VertexSet};
use crate::spectral::{self, degree_inner_product, verify_eigenpair, VertexFunction};

/// Tolerance for closed-form eigenpair verification.
pub const EIGENPAIR_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictKind {
    /// `G` is `K_n` minus the edge `(v, w)`.
    SingleEdgeComplement {
        v: usize,
        w: usize,
    },
    /// `G` is two cliques `{center} ∪ p_v` and `{center} ∪ p_w` with no edges
    /// between `p_v` and `p_w`.
    BalancedBipartiteComplement {
        p_v: Vec<usize>,
        p_w: Vec<usize>,
        center: usize,
    },
    NotEquality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityVerdict {
    #[serde(flatten)]
    pub kind: VerdictKind,
    /// Vertices isolated in the complement, dropped before classification.
    pub removed_isolated: Vec<usize>,
}

impl RigidityVerdict {
    pub fn is_equality(&self) -> bool {
        !matches!(self.kind, VerdictKind::NotEquality)
    }

    pub fn tag(&self) -> &'static str {
        match self.kind {
            VerdictKind::SingleEdgeComplement { .. } => "SingleEdgeComplement",
            VerdictKind::BalancedBipartiteComplement { .. } => "BalancedBipartiteComplement",
            VerdictKind::NotEquality => "NotEquality",
        }
    }
}

pub fn classify_equality(g: &Graph) -> Result<RigidityVerdict, RigidityError> {
    if let Some(v) = g.isolated_vertex() {
        return Err(SpectralError::IsolatedVertex(v).into());
    }
    let n = g.n();
    let complement = g.complement();
    let removed: Vec<usize> = (0..n).filter(|&v| complement.degree(v) == 0).collect();
    let not_equality = |removed_isolated| RigidityVerdict {
        kind: VerdictKind::NotEquality,
        removed_isolated,
    };
    let Some((core, map)) = complement.remove_isolated_vertices() else {
        return Ok(not_equality(removed));
    };
    if core.edge_count() == 1 {
        return Ok(RigidityVerdict {
            kind: VerdictKind::SingleEdgeComplement {
                v: map[0],
                w: map[1],
            },
            removed_isolated: removed,
        });
    }
    if n % 2 == 1 && removed.len() == 1 {
        if let Some((p, q)) = core.complete_bipartite_parts() {
            let half = (n - 1) / 2;
            if p.len() == half && q.len() == half {
                let lift = |s: VertexSet| s.iter().map(|i| map[i]).collect::<Vec<_>>();
                return Ok(RigidityVerdict {
                    kind: VerdictKind::BalancedBipartiteComplement {
                        p_v: lift(p),
                        p_w: lift(q),
                        center: removed[0],
                    },
                    removed_isolated: removed,
                });
            }
        }
    }
    Ok(not_equality(removed))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenPair {
    #[serde(serialize_with = "bounds::serialize_fraction")]
    pub eigenvalue: Fraction,
    pub f: VertexFunction,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EqualityEigenbasis {
    /// A complete eigenbasis: the constant, the named eigenfunctions, then a
    /// degree-orthonormal completion of their orthogonal complement.
    pub pairs: Vec<EigenPair>,
    /// Eigenvalue on the orthogonal complement of the named functions, fixed
    /// by `Σ λ_i = n`.
    #[serde(serialize_with = "serialize_opt")]
    pub complement_eigenvalue: Option<Fraction>,
    #[serde(serialize_with = "bounds::serialize_fraction")]
    pub trace: Fraction,
}

fn serialize_opt<S: serde::Serializer>(q: &Option<Fraction>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

impl EqualityEigenbasis {
    /// Distinct eigenvalues with multiplicities, ascending.
    pub fn multiplicities(&self) -> Vec<(Fraction, usize)> {
        let mut vals: Vec<Fraction> = self.pairs.iter().map(|p| p.eigenvalue).collect();
        vals.sort();
        let mut out: Vec<(Fraction, usize)> = Vec::new();
        for v in vals {
            match out.last_mut() {
                Some((u, c)) if *u == v => *c += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    pub fn largest(&self) -> Fraction {
        self.pairs
            .iter()
            .map(|p| p.eigenvalue)
            .max()
            .expect("nonempty")
    }
}

/// Degree-orthonormal basis of the complement of `span(listed)`, built by
/// Gram-Schmidt on coordinate indicators in vertex order.
fn orthogonal_completion(
    g: &Graph,
    listed: &[VertexFunction],
) -> Result<Vec<VertexFunction>, SpectralError> {
    let n = g.n();
    let mut basis: Vec<VertexFunction> = Vec::new();
    let push =
        |f: VertexFunction, basis: &mut Vec<VertexFunction>| -> Result<bool, SpectralError> {
            let mut h = f;
            // Two passes of modified Gram-Schmidt keep the completion orthogonal to 1e-15.
            for _ in 0..2 {
                for b in basis.iter() {
                    let c = degree_inner_product(g, &h, b)?;
                    h = h.add_scaled(-c, b);
                }
            }
            let norm = degree_inner_product(g, &h, &h)?.sqrt();
            if norm > 1e-8 {
                basis.push(h.scaled(1.0 / norm));
                Ok(true)
            } else {
                Ok(false)
            }
        };
    for f in listed {
        push(f.clone(), &mut basis)?;
    }
    let fixed = basis.len();
    for v in 0..n {
        if basis.len() == n {
            break;
        }
        push(VertexFunction::indicator(n, [v]), &mut basis)?;
    }
    Ok(basis.split_off(fixed))
}

fn checked_pair(
    g: &Graph,
    eigenvalue: Fraction,
    f: VertexFunction,
) -> Result<EigenPair, RigidityError> {
    let lambda = bounds::to_f64(eigenvalue);
    let residual = spectral::eigen_residual(g, lambda, &f)?;
    if !verify_eigenpair(g, lambda, &f, EIGENPAIR_TOL)? {
        return Err(RigidityError::EigenpairFailed(format!(
            "eigenvalue {eigenvalue}, residual {residual:e}"
        )));
    }
    Ok(EigenPair {
        eigenvalue,
        f,
        residual,
    })
}

fn ensure_verdict(g: &Graph, verdict: &RigidityVerdict) -> Result<(), RigidityError> {
    if &classify_equality(g)? == verdict {
        Ok(())
    } else {
        Err(RigidityError::VerdictMismatch)
    }
}

pub fn equality_eigenbasis(
    g: &Graph,
    verdict: &RigidityVerdict,
) -> Result<EqualityEigenbasis, RigidityError> {
    ensure_verdict(g, verdict)?;
    let n = g.n();
    let ni = n as i64;
    let one = VertexFunction::constant(n, 1.0);
    let named: Vec<(Fraction, VertexFunction)> = match &verdict.kind {
        VerdictKind::NotEquality => return Err(RigidityError::VerdictMismatch),
        VerdictKind::SingleEdgeComplement { v, w } => {
            let phi = VertexFunction::indicator(n, [*v])
                .add_scaled(-1.0, &VertexFunction::indicator(n, [*w]));
            let psi = VertexFunction::constant(n, -2.0)
                .add_scaled((n + 1) as f64, &VertexFunction::indicator(n, [*v, *w]));
            vec![
                (bounds::fraction(0, 1), one),
                (bounds::fraction(1, 1), phi),
                (bounds::fraction(ni + 1, ni - 1), psi),
            ]
        }
        VerdictKind::BalancedBipartiteComplement { p_v, p_w, .. } => {
            let phi = VertexFunction::indicator(n, p_v.iter().copied())
                .add_scaled(-1.0, &VertexFunction::indicator(n, p_w.iter().copied()));
            vec![
                (bounds::fraction(0, 1), one),
                (bounds::fraction(2, ni - 1), phi),
            ]
        }
    };
    let named_trace: Fraction = named.iter().map(|(l, _)| *l).sum();
    let rest = n - named.len();
    let complement_eigenvalue = (rest > 0)
        .then(|| (bounds::fraction(ni, 1) - named_trace) / bounds::fraction(rest as i64, 1));

    let fs: Vec<VertexFunction> = named.iter().map(|(_, f)| f.clone()).collect();
    let completion = orthogonal_completion(g, &fs)?;
    let mut pairs = named
        .into_iter()
        .map(|(l, f)| checked_pair(g, l, f))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(lambda) = complement_eigenvalue {
        for f in completion {
            pairs.push(checked_pair(g, lambda, f)?);
        }
    }
    let trace = pairs.iter().map(|p| p.eigenvalue).sum();
    Ok(EqualityEigenbasis {
        pairs,
        complement_eigenvalue,
        trace,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TopShape {
    /// `1` at `v'` and `w'`, `-1` at the center.
    CrossPair { v: usize, w: usize },
    /// `0` at the center, `±1` on the two other vertices of each triangle
    /// (five-vertex case only).
    TriangleSigns { signs: [i8; 4] },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TopEigenfunction {
    pub shape: TopShape,
    pub f: VertexFunction,
    pub residual: f64,
}

/// Explicit eigenfunctions of the top eigenvalue `(n+1)/(n-1)` of a
/// balanced-bipartite-complement graph with `n > 3`.
pub fn top_eigenfunctions(g: &Graph) -> Result<Vec<TopEigenfunction>, RigidityError> {
    let verdict = classify_equality(g)?;
    let VerdictKind::BalancedBipartiteComplement { p_v, p_w, center } = verdict.kind else {
        return Err(RigidityError::VerdictMismatch);
    };
    let n = g.n();
    if n <= 3 {
        return Err(RigidityError::VerdictMismatch);
    }
    let top = bounds::fraction(n as i64 + 1, n as i64 - 1);
    let mut out = Vec::new();
    let mut add = |shape: TopShape, f: VertexFunction| -> Result<(), RigidityError> {
        let pair = checked_pair(g, top, f)?;
        out.push(TopEigenfunction {
            shape,
            f: pair.f,
            residual: pair.residual,
        });
        Ok(())
    };
    for &v in &p_v {
        for &w in &p_w {
            let mut f = VertexFunction::indicator(n, [v, w]);
            f[center] = -1.0;
            add(TopShape::CrossPair { v, w }, f)?;
        }
    }
    if n == 5 {
        for signs in [[1, -1, 1, -1], [1, -1, -1, 1]] {
            let mut f = VertexFunction::zeros(n);
            for (&x, &s) in p_v.iter().chain(&p_w).zip(&signs) {
                f[x] = s as f64;
            }
            add(TopShape::TriangleSigns { signs }, f)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeAddition {
    pub u: usize,
    pub v: usize,
    pub lambda_n: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeRemovalReport {
    pub k: usize,
    pub n: usize,
    #[serde(serialize_with = "bounds::serialize_fraction")]
    pub target: Fraction,
    pub lambda_base: f64,
    pub base_error: f64,
    pub additions: Vec<EdgeAddition>,
    /// `min λ_n(G + e) - (n+1)/(n-1)` over all added edges.
    pub min_increase: f64,
    /// Every addition exceeds the target by more than `1e-9`, so deleting the
    /// added edge strictly lowers `λ_n`.
    pub strictly_decreases: bool,
}

/// Adds each missing edge to two `K_k` sharing a vertex and records `λ_n`.
pub fn edge_removal_demo(k: usize) -> Result<EdgeRemovalReport, RigidityError> {
    if k < 3 {
        return Err(RigidityError::CliqueTooSmall { k, min: 3 });
    }
    let g = generators::glued_complete(k)?;
    let n = g.n();
    let target = bounds::fraction(n as i64 + 1, n as i64 - 1);
    let t = bounds::to_f64(target);
    let lambda_base = spectral::lambda_max(&g)?;
    let additions = g
        .non_edges()
        .into_par_iter()
        .map(|(u, v)| {
            let h = g.with_edge(u, v)?;
            Ok(EdgeAddition {
                u,
                v,
                lambda_n: spectral::lambda_max(&h)?,
            })
        })
        .collect::<Result<Vec<_>, RigidityError>>()?;
    let min_increase = additions
        .iter()
        .map(|a| a.lambda_n - t)
        .fold(f64::INFINITY, f64::min);
    Ok(EdgeRemovalReport {
        k,
        n,
        target,
        lambda_base,
        base_error: (lambda_base - t).abs(),
        strictly_decreases: min_increase > 1e-9,
        additions,
        min_increase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn classify_examples() {
        let v = classify_equality(&complete_minus_edge(7).unwrap()).unwrap();
        assert_eq!(v.kind, VerdictKind::SingleEdgeComplement { v: 0, w: 1 });
        assert_eq!(v.removed_isolated, vec![2, 3, 4, 5, 6]);

        let v = classify_equality(&glued_complete(4).unwrap()).unwrap();
        assert_eq!(
            v.kind,
            VerdictKind::BalancedBipartiteComplement {
                p_v: vec![1, 2, 3],
                p_w: vec![4, 5, 6],
                center: 0
            }
        );

        assert_eq!(
            classify_equality(&cycle(5).unwrap()).unwrap().kind,
            VerdictKind::NotEquality
        );
        assert_eq!(
            classify_equality(&complete(4).unwrap()).unwrap().kind,
            VerdictKind::NotEquality
        );
        // P_3 sits in both families; it is reported as the single-edge case.
        assert_eq!(
            classify_equality(&path(3).unwrap()).unwrap().kind,
            VerdictKind::SingleEdgeComplement { v: 0, w: 2 }
        );
        assert!(classify_equality(&Graph::from_edge_list(3, &[(0, 1)]).unwrap()).is_err());
    }

    #[test]
    fn complement_examples() {
        let c = glued_complete(4).unwrap().complement();
        assert_eq!(c.degree(0), 0);
        let (core, _) = c.remove_isolated_vertices().unwrap();
        assert_eq!(core, complete_bipartite(3, 3).unwrap());
        let c = complete_minus_edge(7).unwrap().complement();
        assert_eq!(c.edges(), vec![(0, 1)]);
    }

    #[test]
    fn single_edge_basis() {
        let g = complete_minus_edge(7).unwrap();
        let basis = equality_eigenbasis(&g, &classify_equality(&g).unwrap()).unwrap();
        assert_eq!(basis.pairs.len(), 7);
        assert_eq!(basis.complement_eigenvalue, Some(bounds::fraction(7, 6)));
        assert_eq!(basis.trace, bounds::fraction(7, 1));
        assert_eq!(
            basis.multiplicities(),
            vec![
                (bounds::fraction(0, 1), 1),
                (bounds::fraction(1, 1), 1),
                (bounds::fraction(7, 6), 4),
                (bounds::fraction(4, 3), 1)
            ]
        );
        assert!(basis.pairs.iter().all(|p| p.residual <= EIGENPAIR_TOL));
    }

    #[test]
    fn balanced_basis() {
        let g = glued_complete(3).unwrap();
        let basis = equality_eigenbasis(&g, &classify_equality(&g).unwrap()).unwrap();
        assert_eq!(
            basis.multiplicities().last().copied(),
            Some((bounds::fraction(3, 2), 3))
        );
        let g = glued_complete(4).unwrap();
        let basis = equality_eigenbasis(&g, &classify_equality(&g).unwrap()).unwrap();
        assert_eq!(
            basis.multiplicities(),
            vec![
                (bounds::fraction(0, 1), 1),
                (bounds::fraction(1, 3), 1),
                (bounds::fraction(4, 3), 5)
            ]
        );
        assert_eq!(basis.largest(), bounds::fraction(4, 3));
    }

    #[test]
    fn mismatched_verdicts() {
        let g = glued_complete(4).unwrap();
        let other = classify_equality(&complete_minus_edge(7).unwrap()).unwrap();
        assert_eq!(
            equality_eigenbasis(&g, &other),
            Err(RigidityError::VerdictMismatch)
        );
        let c5 = cycle(5).unwrap();
        assert_eq!(
            equality_eigenbasis(&c5, &classify_equality(&c5).unwrap()),
            Err(RigidityError::VerdictMismatch)
        );
        assert!(matches!(
            top_eigenfunctions(&complete_minus_edge(5).unwrap()),
            Err(RigidityError::VerdictMismatch)
        ));
    }

    #[test]
    fn top_functions() {
        let fs = top_eigenfunctions(&glued_complete(4).unwrap()).unwrap();
        assert_eq!(fs.len(), 9);
        let fs = top_eigenfunctions(&glued_complete(3).unwrap()).unwrap();
        assert_eq!(fs.len(), 6);
        let tri = fs
            .iter()
            .find(|r| matches!(r.shape, TopShape::TriangleSigns { .. }))
            .unwrap();
        assert_eq!(tri.f[0], 0.0);
        assert!(tri.residual <= EIGENPAIR_TOL);
    }

    #[test]
    fn edge_removal() {
        let r = edge_removal_demo(4).unwrap();
        assert_eq!(r.additions.len(), 9);
        assert!(r.base_error < 1e-10);
        assert!(r.strictly_decreases);
        assert_eq!(edge_removal_demo(3).unwrap().additions.len(), 4);
        assert!(matches!(
            edge_removal_demo(2),
            Err(RigidityError::CliqueTooSmall { k: 2, min: 3 })
        ));
    }
}
