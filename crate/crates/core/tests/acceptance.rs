//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line.
//! Run with `cargo test -p specgap --test acceptance -- --nocapture` to see them.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specgap::bounds::{min_degree_lower_bound, non_complete_lower_bound, to_f64};
use specgap::certify::lemma_grid;
use specgap::generators::{
    complete, complete_bipartite, complete_minus_edge, cycle, glued_complete,
};
use specgap::harness::{random_connected_graph, random_sweep, sweep, SweepConfig, SweepReport};
use specgap::rigidity::{
    classify_equality, edge_removal_demo, equality_eigenbasis, top_eigenfunctions,
};
use specgap::spectral::{
    apply_laplacian, degree_inner_product, spectrum, verify_eigenpair, VertexFunction,
};

fn report(id: u32, title: &str, ok: bool, detail: String) {
    println!(
        "{} criterion {id}: {title} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

fn exhaustive() -> &'static SweepReport {
    static R: OnceLock<SweepReport> = OnceLock::new();
    R.get_or_init(|| sweep(&SweepConfig::new(3, 7)).expect("valid range"))
}

// 334 trials for n = 3..=12, 333 for n = 13..=32: 10,000 in all.
fn random_reports() -> &'static Vec<SweepReport> {
    static R: OnceLock<Vec<SweepReport>> = OnceLock::new();
    R.get_or_init(|| {
        (3..=32usize)
            .map(|n| {
                let trials = if n <= 12 { 334 } else { 333 };
                random_sweep(n, trials, 0x5eed_0000 + n as u64).expect("valid n")
            })
            .collect()
    })
}

fn claims_matching(r: &SweepReport, needle: &str) -> usize {
    r.violations
        .iter()
        .filter(|v| v.claim.contains(needle))
        .count()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn max_sorted_error(mut got: Vec<f64>, mut want: Vec<f64>) -> f64 {
    assert_eq!(got.len(), want.len());
    got.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    got.iter()
        .zip(&want)
        .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

#[test]
fn criterion_1_non_complete_bound_exhaustive() {
    let r = exhaustive();
    let bad = claims_matching(r, "non_complete") + claims_matching(r, "(n+1)/(n-1)");
    let connected: u64 = r.levels.iter().map(|l| l.connected).sum();
    let certs: u64 = r.levels.iter().map(|l| l.certificates).sum();
    report(
        1,
        "lambda_n >= (n+1)/(n-1) with certificates, 3 <= n <= 7",
        r.graphs_scanned > 0 && bad == 0,
        format!(
            "{} graphs, {connected} connected, {certs} certificates, worst slack {:.3e}, {:.1}s, {bad} violations",
            r.graphs_scanned, r.worst_slack, r.runtime_seconds
        ),
    );
}

#[test]
fn criterion_2_equality_biconditional_exhaustive() {
    let r = exhaustive();
    let bad = claims_matching(r, "iff equality family") + claims_matching(r, "tight within");
    let mut census_ok = true;
    let mut cells = Vec::new();
    for l in &r.levels {
        let n = l.n as u64;
        // Oracle: C(n,2) single-edge complements, and n * C(n-1, (n-1)/2) / 2 balanced
        // complements for odd n >= 5 (n = 3 is already a single edge).
        let single = binom(n, 2);
        let balanced = if n % 2 == 1 && n >= 5 {
            n * binom(n - 1, (n - 1) / 2) / 2
        } else {
            0
        };
        census_ok &= l.single_edge_complement == single
            && l.balanced_bipartite_complement == balanced
            && l.spectral_equality == single + balanced;
        cells.push(format!(
            "n={}: {}+{}",
            l.n, l.single_edge_complement, l.balanced_bipartite_complement
        ));
    }
    let n7 = r.level(7).unwrap();
    census_ok &= n7.single_edge_complement == 21 && n7.balanced_bipartite_complement == 70;
    report(
        2,
        "spectral equality iff classifier, census pinned",
        bad == 0 && census_ok,
        format!("{}, {bad} violations", cells.join(", ")),
    );
}

#[test]
fn criterion_3_min_degree_bound_exhaustive() {
    let r = exhaustive();
    let bad = claims_matching(r, "min_degree") + claims_matching(r, "d_min");
    let applicable: u64 = r.levels.iter().map(|l| l.min_degree_applicable).sum();
    // Equality on the glued family at odd n.
    let mut sharp = Vec::new();
    for k in 3..=4 {
        let g = glued_complete(k).unwrap();
        let n = g.n();
        let psi = min_degree_lower_bound(n, g.min_degree()).unwrap();
        let lam = spectrum(&g).unwrap().lambda_max();
        sharp.push(((lam - psi).abs(), n));
    }
    let sharp_ok = sharp.iter().all(|&(e, _)| e <= 1e-9)
        && r.level(5).unwrap().min_degree_equality > 0
        && r.level(7).unwrap().min_degree_equality > 0;
    report(
        3,
        "lambda_n >= 1 + 1/sqrt(d(n-1-d)), sharp on glued cliques",
        bad == 0 && applicable > 0 && sharp_ok,
        format!(
            "{applicable} applicable graphs, equality counts n=5: {} n=7: {}, glued errors {:?}, {bad} violations",
            r.level(5).unwrap().min_degree_equality,
            r.level(7).unwrap().min_degree_equality,
            sharp
        ),
    );
}

#[test]
fn criterion_4_lemma_grid() {
    let grid = lemma_grid(200);
    report(
        4,
        "min-degree lemma on 3 <= n <= 200",
        grid.failures.is_empty()
            && grid.boundary_max_abs_slack <= 1e-12
            && grid.boundary_points > 0,
        format!(
            "{} points, worst slack {:.3e}, {} boundary points with max |slack| {:.3e}",
            grid.points, grid.worst_slack, grid.boundary_points, grid.boundary_max_abs_slack
        ),
    );
}

#[test]
fn criterion_5_closed_form_spectra() {
    let mut worst: f64 = 0.0;
    for n in 2..=20 {
        let nf = n as f64;
        let mut want = vec![nf / (nf - 1.0); n - 1];
        want.push(0.0);
        worst = worst.max(max_sorted_error(
            spectrum(&complete(n).unwrap()).unwrap().eigenvalues,
            want,
        ));
    }
    for a in 1..20 {
        for b in a..=20 - a {
            let mut want = vec![1.0; a + b - 2];
            want.extend([0.0, 2.0]);
            let g = complete_bipartite(a, b).unwrap();
            worst = worst.max(max_sorted_error(spectrum(&g).unwrap().eigenvalues, want));
        }
    }
    for n in 3..=20 {
        let want = (0..n)
            .map(|k| 1.0 - (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            .collect();
        worst = worst.max(max_sorted_error(
            spectrum(&cycle(n).unwrap()).unwrap().eigenvalues,
            want,
        ));
    }
    let mut family_worst: f64 = 0.0;
    let mut basis_agree = true;
    for n in [5usize, 7, 9, 13] {
        let nf = n as f64;
        let mut want = vec![0.0, 1.0, (nf + 1.0) / (nf - 1.0)];
        want.extend(vec![nf / (nf - 1.0); n - 3]);
        let g = complete_minus_edge(n).unwrap();
        let got = spectrum(&g).unwrap().eigenvalues;
        family_worst = family_worst.max(max_sorted_error(got.clone(), want));
        let basis = equality_eigenbasis(&g, &classify_equality(&g).unwrap()).unwrap();
        let from_basis = basis.pairs.iter().map(|p| to_f64(p.eigenvalue)).collect();
        basis_agree &= max_sorted_error(got, from_basis) <= 1e-9;

        let g = glued_complete(n.div_ceil(2)).unwrap();
        assert_eq!(g.n(), n);
        let mut want = vec![0.0, 2.0 / (nf - 1.0)];
        want.extend(vec![(nf + 1.0) / (nf - 1.0); n - 2]);
        let got = spectrum(&g).unwrap().eigenvalues;
        family_worst = family_worst.max(max_sorted_error(got.clone(), want));
        let basis = equality_eigenbasis(&g, &classify_equality(&g).unwrap()).unwrap();
        let from_basis = basis.pairs.iter().map(|p| to_f64(p.eigenvalue)).collect();
        basis_agree &= max_sorted_error(got, from_basis) <= 1e-9;
    }
    report(
        5,
        "closed-form spectra of complete, bipartite, cycle and extremal families",
        worst <= 1e-9 && family_worst <= 1e-9 && basis_agree,
        format!("basic max error {worst:.3e}, extremal max error {family_worst:.3e}, eigenbasis agrees: {basis_agree}"),
    );
}

#[test]
fn criterion_6_edge_removal() {
    let r = edge_removal_demo(4).unwrap();
    let t = to_f64(non_complete_lower_bound(7).unwrap());
    let ok = r.base_error <= 1e-10
        && (r.lambda_base - t).abs() <= 1e-10
        && r.additions.len() == 9
        && r.additions.iter().all(|a| a.lambda_n > t + 1e-9)
        && r.strictly_decreases;
    report(
        6,
        "adding any edge to two K_4 sharing a vertex raises lambda_7 above 4/3",
        ok,
        format!(
            "base error {:.3e}, {} additions, min increase {:.4}",
            r.base_error,
            r.additions.len(),
            r.min_increase
        ),
    );
}

#[test]
fn criterion_7_top_multiplicity() {
    let mut ok = true;
    let mut cells = Vec::new();
    for k in 3..=5 {
        let g = glued_complete(k).unwrap();
        let n = g.n();
        let sp = spectrum(&g).unwrap();
        let mult = sp.multiplicity(sp.lambda_max(), 1e-8);
        let fns = top_eigenfunctions(&g).unwrap();
        let top = to_f64(non_complete_lower_bound(n).unwrap());
        let verified = fns
            .iter()
            .all(|r| verify_eigenpair(&g, top, &r.f, 1e-10).unwrap());
        ok &= mult == n - 2 && verified && !fns.is_empty();
        cells.push(format!(
            "n={n}: mult {mult}, {} functions verified {verified}",
            fns.len()
        ));
    }
    report(
        7,
        "top eigenvalue of glued cliques has multiplicity n-2",
        ok,
        cells.join("; "),
    );
}

#[test]
fn criterion_8_random_certificates() {
    let rs = random_reports();
    let graphs: u64 = rs.iter().map(|r| r.graphs_scanned).sum();
    let certs: u64 = rs
        .iter()
        .flat_map(|r| &r.levels)
        .map(|l| l.certificates)
        .sum();
    let records: u64 = rs
        .iter()
        .flat_map(|r| &r.levels)
        .map(|l| l.records_verified)
        .sum();
    let bad: u64 = rs.iter().map(|r| r.violation_count).sum();
    let worst = rs
        .iter()
        .map(|r| r.worst_slack)
        .fold(f64::INFINITY, f64::min);
    report(
        8,
        "10,000 seeded random connected graphs, certificates sound and re-verifiable",
        graphs == 10_000 && bad == 0 && records == certs && certs >= graphs,
        format!("{graphs} graphs, {certs} certificates, {records} records re-verified, worst slack {worst:.3e}, {bad} violations"),
    );
}

#[test]
fn criterion_9_self_adjointness_and_sanity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.random_range(2..=20);
        let g = random_connected_graph(n, &mut rng);
        let f = VertexFunction((0..n).map(|_| rng.random_range(-1.0..1.0)).collect());
        let h = VertexFunction((0..n).map(|_| rng.random_range(-1.0..1.0)).collect());
        let lf = apply_laplacian(&g, &f).unwrap();
        let lh = apply_laplacian(&g, &h).unwrap();
        let a = degree_inner_product(&g, &lf, &h).unwrap();
        let b = degree_inner_product(&g, &f, &lh).unwrap();
        worst = worst.max((a - b).abs());
    }
    let mut all = vec![exhaustive()];
    all.extend(random_reports());
    let sanity_bad: usize = all
        .iter()
        .map(|r| {
            claims_matching(r, "lambda_1 = 0")
                + claims_matching(r, "trace = n")
                + claims_matching(r, "[0, 2]")
                + claims_matching(r, "multiplicity of 0")
        })
        .sum();
    let trace = all.iter().map(|r| r.max_trace_error).fold(0.0, f64::max);
    let lo = all
        .iter()
        .map(|r| r.eigenvalue_range.0)
        .fold(f64::INFINITY, f64::min);
    let hi = all
        .iter()
        .map(|r| r.eigenvalue_range.1)
        .fold(f64::NEG_INFINITY, f64::max);
    report(
        9,
        "self-adjointness and spectral sanity",
        worst <= 1e-10 && sanity_bad == 0 && trace <= 1e-8 && lo >= -1e-9 && hi <= 2.0 + 1e-9,
        format!("max |<Lf,h> - <f,Lh>| {worst:.3e}, max trace error {trace:.3e}, eigenvalues in [{lo:.2e}, {hi:.6}]"),
    );
}
