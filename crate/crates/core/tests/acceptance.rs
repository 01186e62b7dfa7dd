//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fsq_core::finite_section::{
    essential_points, pseudospectrum, set_limits, stability_scan, truncation_spectra, EssentialOptions, GridSpec,
    SetLimitOptions, StabilityOptions,
};
use fsq_core::groups::{primes_up_to, trace_convergence_table, FreeWord};
use fsq_core::inductive::{plan_explicit, plan_stages, BaseAlgebra, StageRepresentation, StageTower, DEFAULT_BIT_BOUND};
use fsq_core::linalg::{operator_norm, ComplexMatrix, C64};
use fsq_core::operators::{truncate, Filtration, OperatorModel, SequenceRule, Support};
use fsq_core::random::trial_rng;
use fsq_core::verify::{run_suite, Suite, SuiteReport, VerifyOptions};

struct Outcome {
    passed: bool,
    detail: String,
}

fn criterion(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = limit.map_or(true, |l| took <= l);
    let passed = out.passed && in_time;
    let budget = limit.map_or(String::new(), |l| format!(" (limit {} s)", l.as_secs()));
    println!(
        "[{}] {id:>2}. {title}: {}; {:.2} s{budget}",
        if passed { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64()
    );
    passed
}

fn check_line(r: &SuiteReport) -> String {
    r.checks
        .iter()
        .map(|c| format!("{} worst gap {:.3e} (tol {:.0e}, {} violations)", c.lemma, c.worst_gap, c.tolerance, c.violations))
        .collect::<Vec<_>>()
        .join("; ")
}

fn suite(s: Suite, trials: usize, seed: u64) -> Outcome {
    match run_suite(s, &VerifyOptions::new(trials, seed)) {
        Ok(r) => Outcome {
            passed: r.passed && r.trials == trials,
            detail: format!("{} trials, {}", r.trials, check_line(&r)),
        },
        Err(e) => Outcome { passed: false, detail: e.to_string() },
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn worked_set_limits() -> Outcome {
    let sets: Vec<(usize, Vec<C64>)> = (1..=200)
        .map(|n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            (n, vec![C64::new(sign + 1.0 / n as f64, 0.0), C64::new(0.0, 0.0)])
        })
        .collect();
    let s = set_limits(&sets, &SetLimitOptions { delta: 1e-2, ..Default::default() }).unwrap();
    let sup: Vec<f64> = s.limsup.iter().map(|p| p.re).collect();
    let inf: Vec<f64> = s.liminf.iter().map(|p| p.re).collect();
    let near = |got: &[f64], want: &[f64]| {
        got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= 1e-2)
    };
    Outcome {
        passed: near(&sup, &[-1.0, 0.0, 1.0]) && near(&inf, &[0.0]) && s.limsup.iter().all(|p| p.im == 0.0),
        detail: format!("limsup {sup:.4?}, liminf {inf:.4?}"),
    }
}

fn shifts() -> Outcome {
    let n = 200;
    let eps = 0.05;
    let grid = GridSpec::square(C64::new(0.0, 0.0), 0.8, 0.04);
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, model) in [("unilateral", OperatorModel::unilateral_shift()), ("bilateral", OperatorModel::bilateral_shift())] {
        let scan = stability_scan(&model, &Filtration::coordinate(), n, &StabilityOptions::default()).unwrap();
        let all_singular = scan.rows.iter().all(|r| !r.invertible);
        let a = truncate(&model, &Filtration::coordinate(), n).unwrap().matrix;
        let ps = pseudospectrum(&a, eps, &grid).unwrap();
        let (mut inside, mut covered) = (0usize, 0usize);
        for idx in 0..grid.len() {
            if ps.point(idx).norm() <= 0.8 {
                inside += 1;
                covered += ps.membership[idx] as usize;
            }
        }
        let frac = covered as f64 / inside as f64;
        passed &= all_singular && !scan.stable && frac >= 0.95;
        parts.push(format!(
            "{name}: {} of {n} truncations singular, stable={}, coverage {covered}/{inside} = {frac:.4} (need >= 0.95)",
            scan.rows.iter().filter(|r| !r.invertible).count(),
            scan.stable
        ));
    }
    Outcome { passed, detail: parts.join("; ") }
}

fn szego_square() -> Outcome {
    let m = OperatorModel::tridiagonal_toeplitz(Support::OneSided, 0.0, 1.0);
    let (_, ev) = truncation_spectra(&m, &Filtration::coordinate(), &[500]).unwrap().remove(0);
    let s_n = ev.iter().map(|x| x * x).sum::<f64>() / ev.len() as f64;
    let samples = 2048;
    let oracle = (0..samples).map(|k| (2.0 * (2.0 * PI * k as f64 / samples as f64).cos()).powi(2)).sum::<f64>() / samples as f64;
    Outcome {
        passed: (s_n - oracle).abs() <= 0.05,
        detail: format!("s_500 = {s_n:.6}, quadrature oracle {oracle:.6}, |diff| = {:.2e} (tol 0.05)", (s_n - oracle).abs()),
    }
}

fn essential() -> Outcome {
    let m = OperatorModel::diagonal(Support::OneSided, SequenceRule::Tabulated { values: vec![0.0], start: 1, tail: 1.0 }).unwrap();
    let opts = EssentialOptions::defaults_for(128);
    let r = essential_points(&m, &Filtration::coordinate(), &[0.0, 1.0], &opts).unwrap();
    let mut counts_match = true;
    for c in &r.candidates {
        for iv in &c.intervals {
            for (&n, &count) in opts.samples.iter().zip(&iv.counts) {
                let direct = (1..=n as i64)
                    .map(|k| if k == 1 { 0.0 } else { 1.0 })
                    .filter(|&x: &f64| (x - c.lambda).abs() < iv.radius)
                    .count();
                counts_match &= count == direct;
            }
        }
    }
    let at = |l: f64| r.verdict(l);
    let one_counts = &r.candidates[1].intervals[0].counts;
    Outcome {
        passed: at(1.0) == Some(true) && at(0.0) == Some(false) && counts_match,
        detail: format!(
            "verdict(1) = {:?}, verdict(0) = {:?}, N_n(U) at 1 over n={:?}: {one_counts:?}, counts match direct = {counts_match}",
            at(1.0),
            at(0.0),
            opts.samples
        ),
    }
}

fn sanov() -> Outcome {
    let primes = primes_up_to(200);
    let words = FreeWord::all_up_to(3);
    let mut all = vec![FreeWord::identity()];
    all.extend(words.iter().cloned());
    let table = trace_convergence_table(&all, &primes).unwrap();
    let identity_row_ok = table.rows[0].traces.iter().all(|&t| t == 1);
    let nontrivial: Vec<_> = table.rows[1..].iter().collect();
    let eventually_zero = nontrivial.iter().all(|r| r.converges && *r.traces.last().unwrap() == 0);
    let latest = nontrivial.iter().filter_map(|r| r.last_identity_prime).max();
    Outcome {
        passed: identity_row_ok && eventually_zero && table.converges_to_delta,
        detail: format!(
            "{} reduced nontrivial words of length <= 3 over {} primes <= {}: all eventually 0 = {eventually_zero} \
             (last prime with trace 1: {latest:?}); identity row all 1 = {identity_row_ok}",
            nontrivial.len(),
            primes.len(),
            table.scan_bound
        ),
    }
}

fn inductive() -> Outcome {
    let plan = plan_stages(&[2, 2, 2, 2], DEFAULT_BIT_BOUND).unwrap();
    let exact = plan.ratio_bounds_hold() && plan.lambda_bounds_hold();
    let (n, k) = (32u64, 2u64);
    let eps = k as f64 / n as f64;
    let single = plan_explicit(&[k], &[n]).unwrap();
    let tower = StageTower::new(BaseAlgebra::Full { d: 2 }, vec![StageRepresentation::Amplify { copies: 1 }], &single, 4096).unwrap();
    let (mut hom, mut adj, mut unital, mut trace_ok, mut worst_trace) = (0.0f64, 0.0f64, 0.0f64, true, 0.0f64);
    for t in 0..200 {
        let mut rng = trial_rng(10, t);
        let x = tower.random_element(&mut rng, 0);
        let y = tower.random_element(&mut rng, 0);
        let rx = tower.connect(0, &x).unwrap();
        hom = hom.max((&tower.connect(0, &x.matmul(&y)).unwrap() - &rx.matmul(&tower.connect(0, &y).unwrap())).max_abs());
        adj = adj.max((&tower.connect(0, &x.adjoint()).unwrap() - &rx.adjoint()).max_abs());
        let err = (tower.trace(1, &rx) - tower.trace(0, &x)).norm();
        let bound = 2.0 * eps * operator_norm(&x).unwrap();
        trace_ok &= err < bound;
        worst_trace = worst_trace.max(err / bound);
    }
    let one = tower.connect(0, &ComplexMatrix::identity(2)).unwrap();
    unital = unital.max((&one - &ComplexMatrix::identity(64)).max_abs());
    let residual_ok = hom <= 1e-12 && adj <= 1e-12 && unital <= 1e-12;
    Outcome {
        passed: exact && residual_ok && trace_ok,
        detail: format!(
            "k = 2 J = 4 n = {:?}, exact bounds hold = {exact}; E = M_2, n = 32, eps = 2/32 over 200 x: \
             max |rho(xy) - rho(x)rho(y)| = {hom:.2e}, adjoint {adj:.2e}, unit {unital:.2e}, max trace error / (2 eps ||x||) = {worst_trace:.2e}",
            plan.n_usize().unwrap()
        ),
    }
}

fn main() -> ExitCode {
    println!("acceptance criteria");
    let results = [
        criterion(1, "commutator identities on 500 random banded models", secs(10), || suite(Suite::Commutator, 500, 1)),
        criterion(2, "Powers-Stormer inequality on 10^4 positive pairs", secs(30), || suite(Suite::PowersStormer, 10_000, 2)),
        criterion(3, "Ozawa trace identity and defect bound on 10^3 models", secs(60), || suite(Suite::Ozawa, 1000, 3)),
        criterion(4, "compression multiplicativity bound on 10^3 compressions", None, || suite(Suite::Estimate, 1000, 4)),
        criterion(5, "worked set-limit example", None, worked_set_limits),
        criterion(6, "shift truncations singular, 0.05-pseudospectrum fills the 0.8 disk", secs(120), shifts),
        criterion(7, "Szego functional of x^2 on the 2cos Toeplitz operator", secs(60), szego_square),
        criterion(8, "essential points of diag(0, 1, 1, ...)", None, essential),
        criterion(9, "Sanov traces over primes <= 200", secs(5), sanov),
        criterion(10, "stage plan and connecting-map bookkeeping", secs(30), inductive),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
