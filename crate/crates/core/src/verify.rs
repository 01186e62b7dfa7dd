//! Seeded fuzz suites for the identities and inequalities implemented in
//! this crate.
//!
//! Every trial produces a margin per check. For an inequality `lhs <= rhs`
//! the margin is `rhs - lhs`; for an identity it is minus the absolute
//! mismatch. A trial violates a check when its margin falls below
//! `-tolerance`. `worst_gap` is the smallest margin seen, so a passing
//! identity check reports a value in `[-tolerance, 0]`.
//!
//! Trial `t` draws from [`trial_rng`]`(seed, t)`, and trials run in
//! parallel with results folded in trial order, so reports do not depend on
//! the thread count.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FsqError, Result};
use crate::groups::{mat_mul_mod, primes_up_to, sanov_trace, trace_convergence_table, FreeWord};
use crate::inductive::{
    plan_explicit, plan_stages, BaseAlgebra, StageRepresentation, StageTower,
    DEFAULT_BIT_BOUND,
};
use crate::linalg::{operator_norm, ComplexMatrix};
use crate::operators::{commutator_defect, random_model, Filtration};
use crate::random::{ginibre, positive, projection, trial_rng, unitary};
use crate::ucp::{
    compression_defect, conditional_expectation, ozawa_model, powers_stormer_gap, AmbientTrace,
    MatrixUnits, RationalDensity,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PowersStormer,
    Ozawa,
    Estimate,
    Commutator,
    ConditionalExpectation,
    ConnectingMap,
    StagePlan,
    Sanov,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::PowersStormer,
        Suite::Ozawa,
        Suite::Estimate,
        Suite::Commutator,
        Suite::ConditionalExpectation,
        Suite::ConnectingMap,
        Suite::StagePlan,
        Suite::Sanov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PowersStormer => "powers-stormer",
            Suite::Ozawa => "ozawa",
            Suite::Estimate => "estimate",
            Suite::Commutator => "commutator",
            Suite::ConditionalExpectation => "conditional-expectation",
            Suite::ConnectingMap => "connecting-map",
            Suite::StagePlan => "stage-plan",
            Suite::Sanov => "sanov",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::PowersStormer => 10_000,
            Suite::Ozawa | Suite::Estimate => 1000,
            Suite::Commutator | Suite::Sanov => 500,
            Suite::ConditionalExpectation | Suite::ConnectingMap => 200,
            Suite::StagePlan => 50,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = FsqError;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| FsqError::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Identity,
    Inequality,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub lemma: String,
    pub kind: CheckKind,
    pub trials: usize,
    pub seed: u64,
    pub worst_gap: f64,
    pub tolerance: f64,
    pub violations: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<FuzzReport>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    /// Stage count for the stage-plan suite.
    pub stages: usize,
}

impl VerifyOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self { trials, seed, stages: 5 }
    }
}

struct Check {
    lemma: &'static str,
    kind: CheckKind,
    tolerance: f64,
}

const fn check(lemma: &'static str, kind: CheckKind, tolerance: f64) -> Check {
    Check { lemma, kind, tolerance }
}

/// Runs `trial` for every index and folds margins per check. A check whose
/// tolerance is relative to the trial is expressed by scaling the margin.
fn run<F>(suite: Suite, opts: &VerifyOptions, checks: &[Check], trial: F) -> Result<SuiteReport>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Result<Vec<f64>> + Sync,
{
    let margins: Vec<Vec<f64>> = (0..opts.trials)
        .into_par_iter()
        .map(|t| trial(&mut trial_rng(opts.seed, t as u64)))
        .collect::<Result<_>>()?;
    let reports: Vec<FuzzReport> = checks
        .iter()
        .enumerate()
        .map(|(c, spec)| {
            let worst = margins.iter().map(|m| m[c]).fold(f64::INFINITY, f64::min);
            let violations = margins.iter().filter(|m| !(m[c] >= -spec.tolerance)).count();
            FuzzReport {
                lemma: spec.lemma.to_string(),
                kind: spec.kind,
                trials: opts.trials,
                seed: opts.seed,
                worst_gap: if opts.trials == 0 { 0.0 } else { worst },
                tolerance: spec.tolerance,
                violations,
                passed: violations == 0,
            }
        })
        .collect();
    Ok(SuiteReport {
        suite,
        seed: opts.seed,
        trials: opts.trials,
        passed: reports.iter().all(|r| r.passed),
        checks: reports,
        notes: Vec::new(),
    })
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    match suite {
        Suite::PowersStormer => powers_stormer_suite(opts),
        Suite::Ozawa => ozawa_suite(opts),
        Suite::Estimate => estimate_suite(opts),
        Suite::Commutator => commutator_suite(opts),
        Suite::ConditionalExpectation => expectation_suite(opts),
        Suite::ConnectingMap => connecting_map_suite(opts),
        Suite::StagePlan => stage_plan_suite(opts),
        Suite::Sanov => sanov_suite(opts),
    }
}

fn scale(x: f64) -> f64 {
    x.abs().max(1.0)
}

fn powers_stormer_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = [check("powers-stormer: ||a-b||_HS^2 <= ||a^2-b^2||_1", CheckKind::Inequality, 1e-10)];
    run(Suite::PowersStormer, opts, &checks, |rng| {
        let n = rng.random_range(1..=8);
        let (a, b) = (positive(rng, n), positive(rng, n));
        let g = powers_stormer_gap(&a, &b)?;
        Ok(vec![g.gap / scale(g.rhs)])
    })
}

fn ozawa_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = [
        check("ozawa: tr_q(phi(T)) = Tr(hT)", CheckKind::Identity, 1e-12),
        check("ozawa: |tr_q(phi(uu*) - phi(u)phi(u*))| <= 2||uhu* - h||_1^(1/2)", CheckKind::Inequality, 1e-9),
        check("ozawa: phi(1) = 1", CheckKind::Identity, 1e-12),
    ];
    run(Suite::Ozawa, opts, &checks, |rng| {
        let d = rng.random_range(1..=6);
        let k = rng.random_range(1..=d);
        let q = rng.random_range(k as u64..=24);
        let h = RationalDensity::random(rng, d, k, q);
        let model = ozawa_model(&h)?;
        let t = ginibre(rng, d, d);
        let (tr_q, tr_h) = model.trace_pair(&t)?;
        let identity = -(tr_q - tr_h).norm() / scale(operator_norm(&t)?);
        let defect = model.defect(&unitary(rng, d))?;
        Ok(vec![identity, defect.gap(), -model.ucp.map.unitality_defect()])
    })
}

fn estimate_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = [check(
        "estimate: ||phi(ab)-phi(a)phi(b)||_2 <= ||b|| (tr(phi(aa*)-phi(a)phi(a*)) + tr(phi(a*a)-phi(a*)phi(a)))^(1/2)",
        CheckKind::Inequality,
        1e-9,
    )];
    run(Suite::Estimate, opts, &checks, |rng| {
        let n = rng.random_range(1..=10);
        let p = projection(rng, n, None);
        let (a, b) = (ginibre(rng, n, n), ginibre(rng, n, n));
        Ok(vec![compression_defect(&p, &a, &b)?.gap])
    })
}

fn commutator_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = [
        check("commutator: ||Pa-aP|| = max(||Paa*P-PaPa*P||, ||Pa*aP-Pa*PaP||)^(1/2)", CheckKind::Identity, 1e-10),
        check("commutator: HS defect identity", CheckKind::Identity, 1e-10),
    ];
    run(Suite::Commutator, opts, &checks, |rng| {
        let model = random_model(rng);
        let n = rng.random_range(model.band().max(1)..=30);
        let d = commutator_defect(&model, &Filtration::coordinate(), n)?;
        let s = scale(model.entry_bound());
        Ok(vec![-d.opnorm_mismatch() / s, -d.hs_mismatch() / s])
    })
}

fn random_units<R: Rng + ?Sized>(rng: &mut R) -> (MatrixUnits, AmbientTrace) {
    match rng.random_range(0..4) {
        0 => {
            let n = rng.random_range(1..=6);
            (MatrixUnits::diagonal(n), AmbientTrace::normalized(n))
        }
        1 => {
            let n = rng.random_range(1..=5);
            (MatrixUnits::full(n), AmbientTrace::normalized(n))
        }
        2 => {
            let (m, r) = (rng.random_range(1..=3), rng.random_range(1..=3));
            (MatrixUnits::amplified(m, r), AmbientTrace::normalized(m * r))
        }
        _ => {
            // block-diagonal B inside a block-diagonal A with weighted, possibly
            // non-faithful trace
            let sizes: Vec<usize> = (0..rng.random_range(1..=3)).map(|_| rng.random_range(1..=3)).collect();
            let mut raw: Vec<f64> = sizes.iter().map(|_| rng.random_range(0.0..1.0)).collect();
            if sizes.len() > 1 && rng.random_bool(0.3) {
                raw[0] = 0.0;
            }
            if raw.iter().all(|&w| w == 0.0) {
                raw[sizes.len() - 1] = 1.0;
            }
            let total: f64 = sizes.iter().zip(&raw).map(|(&m, &w)| m as f64 * w).sum();
            let weights = raw.iter().map(|w| w / total).collect();
            let tau = AmbientTrace { block_sizes: sizes.clone(), weights };
            (MatrixUnits::block_diagonal(&sizes), tau)
        }
    }
}

fn random_in_ambient<R: Rng + ?Sized>(rng: &mut R, tau: &AmbientTrace) -> ComplexMatrix {
    let blocks: Vec<ComplexMatrix> = tau.block_sizes.iter().map(|&m| ginibre(rng, m, m)).collect();
    ComplexMatrix::block_diag(&blocks.iter().collect::<Vec<_>>())
}

fn expectation_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = [
        check("conditional expectation: tau(Phi(x)) = tau(x)", CheckKind::Identity, 1e-12),
        check("conditional expectation: Phi(Phi(x)) = Phi(x)", CheckKind::Identity, 1e-12),
        check("conditional expectation: ||Phi(x)|| <= ||x||", CheckKind::Inequality, 1e-10),
        check("conditional expectation: Phi(1) = 1", CheckKind::Identity, 1e-12),
    ];
    run(Suite::ConditionalExpectation, opts, &checks, |rng| {
        let (units, tau) = random_units(rng);
        let e = conditional_expectation(&units, &tau)?;
        let x = random_in_ambient(rng, &tau);
        let s = scale(operator_norm(&x)?);
        let y = e.apply(&x)?;
        let trace = -(tau.eval(&y) - tau.eval(&x)).norm() / s;
        let idem = -(&e.apply(&y)? - &y).max_abs() / s;
        let contract = operator_norm(&x)? - operator_norm(&y)?;
        let one = ComplexMatrix::identity(units.dim);
        let unital = -(&e.apply(&one)? - &one).max_abs();
        Ok(vec![trace, idem, contract, unital])
    })
}

fn connecting_map_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = [
        check("connecting map: rho(xy) = rho(x)rho(y)", CheckKind::Identity, 1e-12),
        check("connecting map: rho(x*) = rho(x)*", CheckKind::Identity, 1e-12),
        check("connecting map: rho(1) = 1", CheckKind::Identity, 1e-12),
        check("connecting map: |tau_1(rho(x)) - tau_0(x)| <= 2 (k/n) ||x||", CheckKind::Inequality, 1e-12),
        check("connecting map: ||e rho(x) - rho(x) e|| = 0", CheckKind::Identity, 1e-12),
        check("connecting map: e rho(x) e in B", CheckKind::Identity, 1e-12),
        check("connecting map: composite |tau_j(Phi_ji(x)) - tau_i(x)| <= 2 lambda_ij ||x||", CheckKind::Inequality, 1e-12),
    ];
    run(Suite::ConnectingMap, opts, &checks, |rng| {
        // alternate between E = M_2 (trace exact) and E = C^2 through its
        // first coordinate (trace moves)
        let (base, rep, k) = if rng.random_bool(0.5) {
            let r = rng.random_range(1..=2usize);
            (BaseAlgebra::Full { d: 2 }, StageRepresentation::Amplify { copies: r }, 2 * r)
        } else {
            let w = rng.random_range(0.05..0.95);
            (BaseAlgebra::Diagonal { weights: vec![w, 1.0 - w] }, StageRepresentation::LeadingBlocks { count: 1 }, 1)
        };
        let n = rng.random_range(k..=32);
        let plan = plan_explicit(&[k as u64], &[n as u64])?;
        let tower = StageTower::new(base.clone(), vec![rep.clone()], &plan, 4096)?;
        let x = tower.random_element(rng, 0);
        let y = tower.random_element(rng, 0);
        let s = scale(operator_norm(&x)?) * scale(operator_norm(&y)?);
        let rho_x = tower.connect(0, &x)?;
        let hom = -(&tower.connect(0, &x.matmul(&y))? - &rho_x.matmul(&tower.connect(0, &y)?)).max_abs() / s;
        let adj = -(&tower.connect(0, &x.adjoint())? - &rho_x.adjoint()).max_abs();
        let one = ComplexMatrix::identity(tower.stage_dim(0));
        let unital = -(&tower.connect(0, &one)? - &ComplexMatrix::identity(tower.stage_dim(1))).max_abs();
        let eps = k as f64 / n as f64;
        let err = (tower.trace(1, &rho_x) - tower.trace(0, &x)).norm();
        let trace = 2.0 * eps * operator_norm(&x)? - err;
        let corner = tower.corner_check(0, &x)?;

        // two-stage composite on the diagonal base
        let plan2 = plan_explicit(&[1, 1], &[rng.random_range(2..=6), rng.random_range(8..=16)])?;
        let reps = vec![StageRepresentation::LeadingBlocks { count: 1 }; 2];
        let w = rng.random_range(0.05..0.95);
        let tower2 = StageTower::new(BaseAlgebra::Diagonal { weights: vec![w, 1.0 - w] }, reps, &plan2, 4096)?;
        let z = tower2.random_element(rng, 0);
        let comp_err = (tower2.trace(2, &tower2.composite(0, 2, &z)?) - tower2.trace(0, &z)).norm();
        let comp = 2.0 * plan2.lambda_f64(0, 2) * operator_norm(&z)? - comp_err;
        Ok(vec![hom, adj, unital, trace, -corner.commutator / s.sqrt(), -corner.span_residual / s.sqrt(), comp])
    })
}

fn stage_plan_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = [
        check("stage plan: n(0)...n(j-1)k(j)/n(j) < 2^-j (exact)", CheckKind::Exact, 0.0),
        check("stage plan: |lambda_ij| <= 2^-i (exact)", CheckKind::Exact, 0.0),
    ];
    let stages = opts.stages.max(1);
    let mut report = run(Suite::StagePlan, opts, &checks, |rng| {
        let k: Vec<u64> = (0..stages).map(|_| rng.random_range(1..=4)).collect();
        let p = plan_stages(&k, DEFAULT_BIT_BOUND)?;
        let as_margin = |b: bool| if b { 0.0 } else { -1.0 };
        Ok(vec![as_margin(p.ratio_bounds_hold()), as_margin(p.lambda_bounds_hold())])
    })?;
    report.notes.push(format!("random k(j) in 1..=4 over {stages} stages; comparisons in exact rationals"));
    Ok(report)
}

fn sanov_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = [
        check("sanov: w1 w2 mod p equals product of images", CheckKind::Exact, 0.0),
        check("sanov: trace(w) = trace(w^-1)", CheckKind::Exact, 0.0),
        check("sanov: tr o pi_p(lambda_g) eventually delta_e(g), |g| <= 3, p <= 200", CheckKind::Exact, 0.0),
    ];
    let primes = primes_up_to(200);
    let mut words = vec![FreeWord::identity()];
    words.extend(FreeWord::all_up_to(3));
    let table = trace_convergence_table(&words, &primes)?;
    let table_margin = if table.converges_to_delta { 0.0 } else { -1.0 };
    let mut report = run(Suite::Sanov, opts, &checks, |rng| {
        let (w1, w2) = (FreeWord::random(rng, 8), FreeWord::random(rng, 8));
        let p = primes[rng.random_range(0..primes.len())];
        let hom = mat_mul_mod(&w1.eval_mod(p), &w2.eval_mod(p), p) == w1.concat(&w2).eval_mod(p);
        let inv = sanov_trace(&w1, p)?.trace == sanov_trace(&w1.inverse(), p)?.trace;
        let as_margin = |b: bool| if b { 0.0 } else { -1.0 };
        Ok(vec![as_margin(hom), as_margin(inv), table_margin])
    })?;
    report.notes.push(format!("scan bound p <= {}; vanishing is certified only within the scan", table.scan_bound));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_trial_counts() {
        for suite in Suite::ALL {
            let r = run_suite(suite, &VerifyOptions { trials: 20, seed: 3, stages: 4 }).unwrap();
            assert!(r.passed, "{suite}: {:#?}", r.checks);
            assert_eq!(r.checks.iter().map(|c| c.trials).min(), Some(20));
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = VerifyOptions::new(30, 11);
        let a = run_suite(Suite::Ozawa, &opts).unwrap();
        let b = run_suite(Suite::Ozawa, &opts).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
