//! Named verification suites over documented parameter boxes, with
//! machine-readable reports. Suites fan out across threads (capped by
//! CHEREDNIK_THREADS) and assemble results in case order, so reports are
//! deterministic.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cherednik::{check_eigen, CherednikOp};
use crate::hopoly::{recursion_constant, HoBuilder};
use crate::limits::{check_bcjack_identity, check_mixed_sign_identity};
use crate::rational::{format_rat, rat, ratio, Rat};
use crate::rootsys::{dot_ir, BlockKappa, Family, Multiplicity, Point, RootSystem, Weight};
use crate::spectra::in_convex_hull_of_orbit;
use crate::trigpoly::TrigPoly;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Eigen,
    Hecke,
    Triangular,
    Recurrence,
    BcJack,
    Hull,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eigen" => Ok(Suite::Eigen),
            "hecke" => Ok(Suite::Hecke),
            "triangular" => Ok(Suite::Triangular),
            "recurrence" => Ok(Suite::Recurrence),
            "bcjack" => Ok(Suite::BcJack),
            "hull" => Ok(Suite::Hull),
            other => Err(Error::Parse(format!("unknown suite '{other}'"))),
        }
    }
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Eigen => "eigen",
            Suite::Hecke => "hecke",
            Suite::Triangular => "triangular",
            Suite::Recurrence => "recurrence",
            Suite::BcJack => "bcjack",
            Suite::Hull => "hull",
        }
    }
}

/// Optional narrowing of a suite's documented box.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub rank: Option<usize>,
    pub kappa3: Option<Rat>,
}

#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    pub skipped: usize,
    pub first_counterexample: Option<String>,
}

impl Report {
    fn from_outcomes(suite: Suite, outcomes: Vec<CaseOutcome>) -> Report {
        let mut checked = 0;
        let mut failed = 0;
        let mut skipped = 0;
        let mut first = None;
        for outcome in outcomes {
            match outcome {
                CaseOutcome::Pass(n) => checked += n,
                CaseOutcome::Skip(n) => skipped += n,
                CaseOutcome::Fail(description) => {
                    checked += 1;
                    failed += 1;
                    if first.is_none() {
                        first = Some(description);
                    }
                }
            }
        }
        Report {
            suite: suite.name().into(),
            checked,
            failed,
            skipped,
            first_counterexample: first,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

enum CaseOutcome {
    Pass(usize),
    Skip(usize),
    Fail(String),
}

fn thread_cap() -> usize {
    if let Ok(v) = std::env::var("CHEREDNIK_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get().min(8))
        .unwrap_or(1)
}

/// Order-preserving parallel map with a work-stealing index; the output
/// vector is indexed by input position regardless of completion order.
fn parallel_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = thread_cap().min(items.len().max(1));
    if threads <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                *slots[i].lock().unwrap() = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("all slots filled"))
        .collect()
}

/// The multiplicity samples used by all BC-family suites.
pub fn standard_kappas() -> Vec<(Rat, Rat, Rat)> {
    vec![
        (rat(1), rat(0), rat(0)),
        (rat(1), rat(1), rat(1)),
        (ratio(1, 2), ratio(1, 3), rat(2)),
        (rat(0), rat(0), rat(1)),
        (rat(2), rat(0), ratio(1, 2)),
    ]
}

/// All integer weights of rank n with sup-norm at most `bound`.
pub fn weights_box(n: usize, bound: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

fn ranks(params: &SuiteParams, max: usize) -> Vec<usize> {
    match params.rank {
        Some(r) if r >= 1 && r <= max => vec![r],
        Some(_) => vec![],
        None => (1..=max).collect(),
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<Report> {
    match suite {
        Suite::Eigen => run_eigen(params, false),
        Suite::Triangular => run_eigen(params, true),
        Suite::Hecke => run_hecke(params),
        Suite::Recurrence => run_recurrence(params),
        Suite::BcJack => run_bcjack(params),
        Suite::Hull => run_hull(params),
    }
}

/// Eigen suite (and, with `structural`, the triangularity/positivity suite):
/// every E_lambda in the box is rebuilt and checked exactly.
fn run_eigen(params: &SuiteParams, structural: bool) -> Result<Report> {
    let mut cells = Vec::new();
    for n in ranks(params, 3) {
        for (k1, k2, k3) in standard_kappas() {
            cells.push((n, Multiplicity::bc(k1, k2, k3)));
        }
    }
    let outcomes = parallel_map(cells, |(n, kappa)| {
        let sys = match RootSystem::new(Family::BC, *n) {
            Ok(s) => s,
            Err(e) => return vec![CaseOutcome::Fail(format!("system: {e}"))],
        };
        let mut builder = match HoBuilder::new(&sys, kappa.clone()) {
            Ok(b) => b,
            Err(e) => return vec![CaseOutcome::Fail(format!("builder: {e}"))],
        };
        let mut out = Vec::new();
        for lambda in weights_box(*n, 3) {
            let tag = || {
                format!(
                    "n={n} kappa=({}) lambda={lambda}",
                    kappa
                        .values()
                        .iter()
                        .map(format_rat)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            };
            let e = match builder.nonsym_e(&lambda) {
                Ok(e) => e,
                Err(err) => {
                    out.push(CaseOutcome::Fail(format!("{}: build error {err}", tag())));
                    continue;
                }
            };
            let ok = if structural {
                check_structural(&sys, &lambda, &e.poly)
            } else {
                check_eigen(&sys, kappa, &lambda, &e.poly).unwrap_or(false)
            };
            out.push(if ok {
                CaseOutcome::Pass(1)
            } else {
                CaseOutcome::Fail(tag())
            });
        }
        out
    });
    Ok(Report::from_outcomes(
        if structural {
            Suite::Triangular
        } else {
            Suite::Eigen
        },
        outcomes.into_iter().flatten().collect(),
    ))
}

/// Monic leading term, extended-order triangular support, nonnegative
/// coefficients.
fn check_structural(sys: &RootSystem, lambda: &Weight, poly: &TrigPoly) -> bool {
    if poly.coeff(lambda) != Rat::one() {
        return false;
    }
    for (mu, c) in poly.terms() {
        if c.is_negative() {
            return false;
        }
        if !sys.tri_order(mu, lambda) {
            return false;
        }
    }
    true
}

/// Deterministic generator for the randomized operator-identity inputs.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    fn next_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    fn poly(&mut self, n: usize) -> TrigPoly {
        let mut p = TrigPoly::zero(n);
        let terms = self.next_in(1, 6);
        for _ in 0..terms {
            let coords: Vec<i64> = (0..n).map(|_| self.next_in(-3, 3)).collect();
            let num = self.next_in(-9, 9);
            let den = self.next_in(1, 5);
            p.add_term(Weight(coords), ratio(num, den));
        }
        p
    }
}

/// Graded Hecke relations as operator identities on randomized inputs:
/// s_j D_xi - D_{s_j xi} s_j = -k_j <xi, a_j> and the affine version
/// s_0 (D_{s_b xi} + <xi, b>) - D_xi s_0 = -k_0 <xi, b>.
fn run_hecke(params: &SuiteParams) -> Result<Report> {
    let mut cells = Vec::new();
    for n in ranks(params, 2) {
        for (idx, (k1, k2, k3)) in standard_kappas().into_iter().enumerate() {
            cells.push((n, idx as u64, Multiplicity::bc(k1, k2, k3)));
        }
    }
    let outcomes = parallel_map(cells, |(n, seed, kappa)| {
        let sys = RootSystem::new(Family::BC, *n).expect("BC rank in box");
        let mut rng = SplitMix64(0x5EED_0000 + seed * 7919 + *n as u64);
        let mut out = Vec::new();
        let beta = sys.highest_short_root().expect("irreducible").clone();
        for case in 0..100 {
            let f = rng.poly(*n);
            let mut ok = true;
            for dir in 0..*n {
                let xi = {
                    let mut p = Point::zero(*n);
                    p.0[dir] = rat(1);
                    p
                };
                let d_xi = CherednikOp::new(&sys, kappa, xi.clone());
                // Simple letters.
                for j in 1..=sys.rank() {
                    let root = sys.simple_root(j);
                    let s_j_xi = RootSystem::reflect_point_by_root(root, &xi);
                    let d_sxi = CherednikOp::new(&sys, kappa, s_j_xi);
                    let lhs = d_xi
                        .apply(&f)
                        .act_simple(&sys, j)
                        .sub(&d_sxi.apply(&f.act_simple(&sys, j)))
                        .unwrap();
                    let k_j = kappa.hecke_k(&sys, j).unwrap();
                    let rhs = f.scale(&(-k_j * dot_ir(&root.vec, &xi)));
                    if lhs != rhs {
                        ok = false;
                    }
                }
                // Affine letter.
                let s_beta_xi = RootSystem::reflect_point_by_root(&beta, &xi);
                let d_sbeta = CherednikOp::new(&sys, kappa, s_beta_xi);
                let xi_beta = dot_ir(&beta.vec, &xi);
                let inner = d_sbeta.apply(&f).add(&f.scale(&xi_beta)).unwrap();
                let lhs = inner
                    .act_s0(&sys)
                    .unwrap()
                    .sub(&d_xi.apply(&f.act_s0(&sys).unwrap()))
                    .unwrap();
                let k_0 = kappa.hecke_k(&sys, 0).unwrap();
                let rhs = f.scale(&(-k_0 * xi_beta));
                if lhs != rhs {
                    ok = false;
                }
            }
            out.push(if ok {
                CaseOutcome::Pass(1)
            } else {
                CaseOutcome::Fail(format!("n={n} kappa cell {seed} case {case}"))
            });
        }
        out
    });
    Ok(Report::from_outcomes(
        Suite::Hecke,
        outcomes.into_iter().flatten().collect(),
    ))
}

/// Kernel recurrence over all admissible (lambda, letter) pairs in the box;
/// degenerate pairings (fixed weights, vanishing denominators) are skipped.
fn run_recurrence(params: &SuiteParams) -> Result<Report> {
    let mut cells = Vec::new();
    for n in ranks(params, 3) {
        for (k1, k2, k3) in standard_kappas() {
            cells.push((n, Multiplicity::bc(k1, k2, k3)));
        }
    }
    let outcomes = parallel_map(cells, |(n, kappa)| {
        let sys = RootSystem::new(Family::BC, *n).expect("BC rank in box");
        let mut builder = HoBuilder::new(&sys, kappa.clone()).expect("nonnegative kappa");
        let mut out = Vec::new();
        for lambda in weights_box(*n, 3) {
            for letter in 0..=sys.rank() {
                match recursion_constant(&sys, kappa, letter, &lambda) {
                    Err(Error::FixedWeight(_)) | Err(Error::ZeroDenominator(_)) => {
                        out.push(CaseOutcome::Skip(1));
                        continue;
                    }
                    Err(e) => {
                        out.push(CaseOutcome::Fail(format!(
                            "n={n} lambda={lambda} letter={letter}: {e}"
                        )));
                        continue;
                    }
                    Ok(_) => {}
                }
                match builder.check_kernel_recurrence(&lambda, letter) {
                    Ok(true) => out.push(CaseOutcome::Pass(1)),
                    Ok(false) => out.push(CaseOutcome::Fail(format!(
                        "n={n} lambda={lambda} letter={letter}"
                    ))),
                    Err(e) => out.push(CaseOutcome::Fail(format!(
                        "n={n} lambda={lambda} letter={letter}: {e}"
                    ))),
                }
            }
        }
        out
    });
    Ok(Report::from_outcomes(
        Suite::Recurrence,
        outcomes.into_iter().flatten().collect(),
    ))
}

/// Jack identities for the limit family: the antidominant case and the
/// mixed-sign product/average cases, all exact.
fn run_bcjack(params: &SuiteParams) -> Result<Report> {
    let k3_list = match &params.kappa3 {
        Some(k) => vec![k.clone()],
        None => vec![rat(0), ratio(1, 2), rat(1), rat(2)],
    };
    let mut cells = Vec::new();
    for n in ranks(params, 3) {
        for k3 in &k3_list {
            cells.push((n, k3.clone()));
        }
    }
    let outcomes = parallel_map(cells, |(n, k3)| {
        let sys = RootSystem::new(Family::BC, *n).expect("BC rank in box");
        let mut out = Vec::new();
        for lambda in weights_box(*n, 2) {
            if lambda.0.iter().all(|&c| c >= 0) {
                let eta: Vec<i64> = lambda.0.clone();
                match check_bcjack_identity(&sys, &eta, k3) {
                    Ok(true) => out.push(CaseOutcome::Pass(1)),
                    Ok(false) => out.push(CaseOutcome::Fail(format!(
                        "antidominant case n={n} k3={k3} eta={lambda}"
                    ))),
                    Err(e) => out.push(CaseOutcome::Fail(format!(
                        "antidominant case n={n} k3={k3} eta={lambda}: {e}"
                    ))),
                }
            }
            match check_mixed_sign_identity(&sys, &lambda, k3) {
                Ok(true) => out.push(CaseOutcome::Pass(1)),
                Ok(false) => out.push(CaseOutcome::Fail(format!(
                    "mixed case n={n} k3={k3} lambda={lambda}"
                ))),
                Err(e) => out.push(CaseOutcome::Fail(format!(
                    "mixed case n={n} k3={k3} lambda={lambda}: {e}"
                ))),
            }
        }
        out
    });
    Ok(Report::from_outcomes(
        Suite::BcJack,
        outcomes.into_iter().flatten().collect(),
    ))
}

/// Exact membership in the convex hull of a finite point set by Caratheodory
/// search: some affinely independent subset of at most three vertices must
/// carry x with nonnegative barycentric coordinates. Independent of the
/// chamber-based membership test.
#[allow(clippy::needless_range_loop)] // the eliminations borrow two rows at once
pub fn hull_oracle(vertices: &[Point], x: &Point) -> bool {
    let dim = x.rank();
    let m = vertices.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        subsets.push(vec![i]);
        for j in (i + 1)..m {
            subsets.push(vec![i, j]);
            for l in (j + 1)..m {
                subsets.push(vec![i, j, l]);
            }
        }
    }
    'subset: for subset in subsets {
        // Rows: one per coordinate plus the affine constraint.
        let cols = subset.len();
        let mut mat: Vec<Vec<Rat>> = Vec::with_capacity(dim + 1);
        for d in 0..dim {
            let mut row: Vec<Rat> = subset.iter().map(|&vi| vertices[vi].0[d].clone()).collect();
            row.push(x.0[d].clone());
            mat.push(row);
        }
        let mut row: Vec<Rat> = subset.iter().map(|_| Rat::one()).collect();
        row.push(Rat::one());
        mat.push(row);
        // Exact elimination; unique solutions only (affinely independent
        // subsets suffice by Caratheodory).
        let mut pivot_of_col = vec![None; cols];
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
                continue 'subset;
            };
            mat.swap(r, p);
            let inv = Rat::one() / mat[r][c].clone();
            for v in mat[r].iter_mut() {
                *v *= &inv;
            }
            for i in 0..mat.len() {
                if i != r && !mat[i][c].is_zero() {
                    let f = mat[i][c].clone();
                    for cc in 0..=cols {
                        let delta = &f * &mat[r][cc];
                        mat[i][cc] -= delta;
                    }
                }
            }
            pivot_of_col[c] = Some(r);
            r += 1;
        }
        // Inconsistent rows rule the subset out.
        for i in r..mat.len() {
            if !mat[i][cols].is_zero() {
                continue 'subset;
            }
        }
        let weights: Vec<Rat> = pivot_of_col
            .iter()
            .map(|p| mat[p.expect("full column rank")][cols].clone())
            .collect();
        if weights.iter().all(|w| !w.is_negative()) {
            return true;
        }
    }
    false
}

/// The systems exercised by the hull suite, with their multiplicities.
pub fn hull_suite_systems() -> Vec<(String, RootSystem, Multiplicity)> {
    vec![
        (
            "BC1".into(),
            RootSystem::new(Family::BC, 1).unwrap(),
            Multiplicity::bc(rat(1), ratio(1, 2), rat(0)),
        ),
        (
            "BC2".into(),
            RootSystem::new(Family::BC, 2).unwrap(),
            Multiplicity::bc(rat(1), rat(1), rat(1)),
        ),
        (
            "B2".into(),
            RootSystem::new(Family::B, 2).unwrap(),
            Multiplicity::b(ratio(3, 2), ratio(1, 2)),
        ),
        (
            "A2".into(),
            RootSystem::new(Family::A, 3).unwrap(),
            Multiplicity::a(rat(1)),
        ),
        (
            "BC1xBC1".into(),
            RootSystem::product(&[(Family::BC, 1), (Family::BC, 1)], 0).unwrap(),
            Multiplicity::new(vec![
                BlockKappa::BC {
                    k1: rat(1),
                    k2: rat(0),
                    k3: rat(0),
                },
                BlockKappa::BC {
                    k1: rat(2),
                    k2: rat(1),
                    k3: rat(0),
                },
            ]),
        ),
    ]
}

/// Hull membership against the Caratheodory oracle on 1000 random rational
/// points per system.
fn run_hull(_params: &SuiteParams) -> Result<Report> {
    let cells = hull_suite_systems();
    let outcomes = parallel_map(cells, |(name, sys, kappa)| {
        let mut out = Vec::new();
        let rho = sys.rho(kappa);
        let vertices: Vec<Point> = {
            let words = sys.weyl_elements(1 << 16).expect("small rank");
            let mut seen: Vec<Point> = Vec::new();
            for word in words {
                let mut v = rho.clone();
                for &i in word.iter().rev() {
                    v = RootSystem::reflect_point_by_root(sys.simple_root(i), &v);
                }
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
            seen
        };
        let scale: i64 = 2 + rho
            .0
            .iter()
            .map(|c| {
                let f = crate::rational::rat_to_f64(&c.abs());
                f.ceil() as i64
            })
            .max()
            .unwrap_or(1);
        let mut rng = SplitMix64(0xCA7A_1059 ^ name.len() as u64);
        for case in 0..1000 {
            let x = Point(
                (0..sys.dim())
                    .map(|_| ratio(rng.next_in(-4 * scale, 4 * scale), rng.next_in(1, 4)))
                    .collect(),
            );
            // Half the samples are forced into the root span so both
            // answers occur with useful frequency.
            let x = if case % 2 == 0 {
                sys.project_span(&x)
            } else {
                x
            };
            let fast = match in_convex_hull_of_orbit(sys, kappa, &x) {
                Ok(v) => v,
                Err(e) => {
                    out.push(CaseOutcome::Fail(format!("{name} case {case}: {e}")));
                    continue;
                }
            };
            let slow = hull_oracle(&vertices, &x);
            out.push(if fast == slow {
                CaseOutcome::Pass(1)
            } else {
                CaseOutcome::Fail(format!(
                    "{name} case {case}: membership {fast} vs oracle {slow} at {:?}",
                    x.0.iter().map(format_rat).collect::<Vec<_>>()
                ))
            });
        }
        out
    });
    Ok(Report::from_outcomes(
        Suite::Hull,
        outcomes.into_iter().flatten().collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::Eigen,
            Suite::Hecke,
            Suite::Triangular,
            Suite::Recurrence,
            Suite::BcJack,
            Suite::Hull,
        ] {
            assert_eq!(Suite::from_str(s.name()).unwrap(), s);
        }
        assert!(Suite::from_str("nope").is_err());
    }

    #[test]
    fn oracle_matches_hand_hull() {
        // Square with corners (+-1, +-1).
        let v: Vec<Point> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
            .iter()
            .map(|&(a, b)| Point(vec![rat(a), rat(b)]))
            .collect();
        assert!(hull_oracle(&v, &Point(vec![rat(0), rat(0)])));
        assert!(hull_oracle(&v, &Point(vec![rat(1), rat(1)])));
        assert!(hull_oracle(&v, &Point(vec![ratio(1, 2), ratio(-1, 3)])));
        assert!(!hull_oracle(&v, &Point(vec![ratio(3, 2), rat(0)])));
        assert!(!hull_oracle(&v, &Point(vec![rat(1), ratio(11, 10)])));
    }

    #[test]
    fn small_suites_pass() {
        let params = SuiteParams {
            rank: Some(1),
            kappa3: None,
        };
        for suite in [Suite::Eigen, Suite::Triangular, Suite::Recurrence] {
            let report = run_suite(suite, &params).unwrap();
            assert!(
                report.passed(),
                "{}: {:?}",
                suite.name(),
                report.first_counterexample
            );
            assert!(report.checked > 0);
        }
        let report = run_suite(
            Suite::BcJack,
            &SuiteParams {
                rank: Some(2),
                kappa3: Some(rat(1)),
            },
        )
        .unwrap();
        assert!(report.passed(), "{:?}", report.first_counterexample);
    }
}
