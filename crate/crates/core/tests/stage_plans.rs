//! Stage plans against hand-computed schedules and trace errors.

use fsq_core::inductive::{
    plan_explicit, plan_stages, plan_stages_scaled, BaseAlgebra, StagePlanJson, StageRepresentation, StageTower,
    DEFAULT_BIT_BOUND,
};
use fsq_core::linalg::operator_norm;
use fsq_core::random::trial_rng;
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(n: &str, d: &str) -> BigRational {
    BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap())
}

#[test]
fn unit_dimensions_three_stages() {
    let p = plan_stages(&[1, 1, 1], DEFAULT_BIT_BOUND).unwrap();
    assert_eq!(p.n_usize().unwrap(), vec![3, 13, 313]);
    let expect = [
        (0, 1, "1", "3"),
        (0, 2, "19", "39"),
        (0, 3, "6727", "12207"),
        (1, 2, "3", "13"),
        (1, 3, "1329", "4069"),
        (2, 3, "39", "313"),
    ];
    for (i, j, n, d) in expect {
        assert_eq!(p.lambda(i, j), q(n, d), "lambda({i},{j})");
    }
    assert!(p.ratio_bounds_hold() && p.lambda_bounds_hold());
}

#[test]
fn doubled_dimensions_four_stages() {
    let p = plan_stages(&[2, 2, 2, 2], DEFAULT_BIT_BOUND).unwrap();
    assert_eq!(p.n_usize().unwrap(), vec![5, 41, 3281, 21523361]);
    let expect = [
        (0, 1, "2", "5"),
        (0, 2, "112", "205"),
        (0, 3, "405602", "672605"),
        (0, 4, "9089093373952", "14476720225405"),
        (1, 2, "10", "41"),
        (1, 3, "45520", "134521"),
        (1, 4, "1099468427930", "2895344045081"),
        (2, 3, "410", "3281"),
        (2, 4, "12686675920", "70618147441"),
        (3, 4, "1345210", "21523361"),
    ];
    for (i, j, n, d) in expect {
        assert_eq!(p.lambda(i, j), q(n, d), "lambda({i},{j})");
    }
    assert!(p.ratio_bounds_hold() && p.lambda_bounds_hold() && p.lambda_union_bounds_hold());
}

#[test]
fn lambda_follows_the_product_formula() {
    // lambda(i, j) = 1 - prod_{s=i}^{j-1} (1 - n(0)..n(s-1) k(s) / n(s))
    let k = [3u64, 1, 2];
    let p = plan_stages(&k, DEFAULT_BIT_BOUND).unwrap();
    let n = p.n_usize().unwrap();
    let one = BigRational::from_integer(1.into());
    for i in 0..3 {
        for j in i + 1..=3 {
            let mut prod = one.clone();
            for s in i..j {
                let prefix: u64 = n[..s].iter().map(|&x| x as u64).product();
                prod *= &one - BigRational::new((prefix * k[s]).into(), (n[s] as u64).into());
            }
            assert_eq!(p.lambda(i, j), &one - prod);
        }
    }
}

#[test]
fn bit_bound_is_enforced() {
    assert!(plan_stages(&[2; 8], 64).is_err());
    assert!(plan_stages(&[2; 4], 64).is_ok());
}

#[test]
fn plan_json_uses_string_rationals() {
    let p = plan_stages(&[1, 1], DEFAULT_BIT_BOUND).unwrap();
    let json: StagePlanJson = serde_json::from_str(&p.to_json()).unwrap();
    let first = &json.lambda[0];
    assert_eq!((first.i, first.j), (0, 1));
    assert_eq!((first.value.numerator.as_str(), first.value.denominator.as_str()), ("1", "3"));
    assert_eq!(json.n, vec!["3".to_string(), "13".to_string()]);
}

#[test]
fn scaled_schedule_keeps_the_top_stage_small() {
    let p = plan_stages_scaled(&[1, 1, 1], &[0.5, 0.5, 0.5], DEFAULT_BIT_BOUND).unwrap();
    let n = p.n_usize().unwrap();
    assert_eq!(n, vec![3, 7, 43]);
    assert!(n.iter().product::<usize>() * 2 <= 4096, "{n:?}");
    for s in 0..3 {
        let prefix: usize = n[..s].iter().product();
        assert!((prefix as f64) / (n[s] as f64) < 0.5);
    }
}

#[test]
fn composite_trace_errors_stay_within_two_lambda() {
    let plan = plan_explicit(&[1, 1, 1], &[3, 8, 32]).unwrap();
    let reps = vec![StageRepresentation::LeadingBlocks { count: 1 }; 3];
    let tower = StageTower::new(BaseAlgebra::Diagonal { weights: vec![0.3, 0.7] }, reps, &plan, 4096).unwrap();
    let mut worst_ratio: f64 = 0.0;
    for t in 0..30 {
        let mut rng = trial_rng(200, t);
        for i in 0..3 {
            let x = tower.random_element(&mut rng, i);
            for j in i + 1..=3 {
                let err = (tower.trace(j, &tower.composite(i, j, &x).unwrap()) - tower.trace(i, &x)).norm();
                let bound = 2.0 * plan.lambda_f64(i, j) * operator_norm(&x).unwrap();
                assert!(err <= bound + 1e-12, "stages {i}->{j}: {err} > {bound}");
                worst_ratio = worst_ratio.max(err / bound);
            }
        }
    }
    // the diagonal base moves the trace, so the check is not vacuous
    assert!(worst_ratio > 1e-3, "{worst_ratio}");
}

#[test]
fn full_matrix_base_preserves_the_trace() {
    let plan = plan_explicit(&[2, 4], &[8, 40]).unwrap();
    let reps = vec![StageRepresentation::Amplify { copies: 1 }, StageRepresentation::Amplify { copies: 2 }];
    let tower = StageTower::new(BaseAlgebra::Full { d: 2 }, reps, &plan, 4096).unwrap();
    let mut rng = trial_rng(201, 0);
    let x = tower.random_element(&mut rng, 0);
    let y = tower.composite(0, 2, &x).unwrap();
    assert_eq!(y.rows(), 2 * 8 * 40);
    assert!((tower.trace(2, &y) - tower.trace(0, &x)).norm() < 1e-13);
}
