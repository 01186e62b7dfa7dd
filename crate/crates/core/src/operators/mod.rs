//! Banded infinite operators, coordinate filtrations, truncations and
//! commutator defects.

mod defect;
mod filtration;
mod model;

pub use defect::{
    commutator_defect, commutator_defect_hs, commutator_defect_opnorm, coordinate_commutator,
    CommutatorDefect,
};
pub use filtration::{truncate, window_for, Filtration, Truncation};
pub use model::{
    Block, Coefficient, IndexWindow, ModelKind, OperatorModel, SequenceRule, ShiftDirection,
    Support,
};

use rand::Rng;

use crate::random::{complex_gaussian, ginibre};

/// Random banded model of band `<= 3` on either support, drawn from every
/// model kind.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R) -> OperatorModel {
    let support = if rng.random_bool(0.5) {
        Support::OneSided
    } else {
        Support::TwoSided
    };
    let kind = match rng.random_range(0..4) {
        0 => {
            let band = rng.random_range(1..=3i64);
            ModelKind::Toeplitz {
                coefficients: (-band..=band)
                    .map(|offset| {
                        let z = complex_gaussian(rng);
                        Coefficient { offset, re: z.re, im: z.im }
                    })
                    .collect(),
            }
        }
        1 => ModelKind::WeightedShift {
            weights: SequenceRule::Tabulated {
                values: (0..40).map(|_| rng.random_range(-2.0..2.0)).collect(),
                start: -20,
                tail: rng.random_range(0.5..1.5),
            },
            direction: if rng.random_bool(0.5) {
                ShiftDirection::Forward
            } else {
                ShiftDirection::Backward
            },
        },
        2 => ModelKind::Diagonal {
            diagonal: SequenceRule::Tabulated {
                values: (0..40).map(|_| rng.random_range(-2.0..2.0)).collect(),
                start: -20,
                tail: 1.0,
            },
        },
        _ => {
            let count = rng.random_range(1..=3);
            ModelKind::DirectSum {
                blocks: (0..count)
                    .map(|_| {
                        let s = rng.random_range(1..=4);
                        Block::from_matrix(&ginibre(rng, s, s))
                    })
                    .collect(),
            }
        }
    };
    OperatorModel::new(support, kind).expect("random models are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{C64, ZERO};
    use crate::random::trial_rng;

    #[test]
    fn shift_truncation_is_lower_shift() {
        let t = truncate(&OperatorModel::unilateral_shift(), &Filtration::coordinate(), 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j + 1 { 1.0 } else { 0.0 };
                assert_eq!(t.matrix[(i, j)], C64::new(expect, 0.0));
            }
        }
    }

    #[test]
    fn identity_diagonal_truncates_to_identity() {
        let t = truncate(&OperatorModel::scalar(1.0), &Filtration::coordinate(), 7).unwrap();
        assert_eq!(t.matrix, crate::linalg::ComplexMatrix::identity(7));
    }

    #[test]
    fn bilateral_shift_sections_are_nilpotent() {
        for d in [1, 2, 5, 8] {
            let t = truncate(&OperatorModel::bilateral_shift(), &Filtration::coordinate(), d).unwrap();
            assert_eq!(t.window.start, -((d / 2) as i64));
            let mut p = t.matrix.clone();
            for _ in 1..d {
                p = &p * &t.matrix;
            }
            assert_eq!(p.max_abs(), 0.0, "J^{d} must vanish");
        }
    }

    #[test]
    fn two_sided_windows_nest() {
        let f = Filtration::coordinate();
        for n in 1..30 {
            let a = f.window(Support::TwoSided, n).unwrap();
            let b = f.window(Support::TwoSided, n + 1).unwrap();
            assert!(b.start <= a.start && b.end() >= a.end());
        }
    }

    #[test]
    fn diagonal_commutes_with_windows() {
        let m = OperatorModel::diagonal(Support::OneSided, SequenceRule::OnePlusInverse { scale: 1.0 }).unwrap();
        for n in 1..10 {
            let d = commutator_defect(&m, &Filtration::coordinate(), n).unwrap();
            assert_eq!(d.opnorm_direct, 0.0);
            assert_eq!(d.opnorm_identity, 0.0);
            assert_eq!(d.hs_direct, 0.0);
            assert_eq!(d.hs_identity, 0.0);
        }
    }

    #[test]
    fn unilateral_shift_defects() {
        let s = OperatorModel::unilateral_shift();
        for n in 1..25 {
            let d = commutator_defect(&s, &Filtration::coordinate(), n).unwrap();
            assert!((d.opnorm_direct - 1.0).abs() < 1e-14);
            assert!((d.opnorm_identity - 1.0).abs() < 1e-14);
            let hs = 1.0 / (n as f64).sqrt();
            assert!((d.hs_direct - hs).abs() < 1e-14);
            assert!((d.hs_identity - hs).abs() < 1e-14);
        }
    }

    #[test]
    fn weighted_shift_with_zero_weights_is_block_diagonal() {
        let m = OperatorModel::weighted_shift(
            Support::OneSided,
            SequenceRule::ZeroEvery { period: 10, value: 1.0 },
            ShiftDirection::Forward,
        )
        .unwrap();
        let f = Filtration::arithmetic(10, 10).unwrap();
        for n in 1..6 {
            assert_eq!(commutator_defect_opnorm(&m, &f, n).unwrap(), 0.0);
            assert_eq!(commutator_defect_hs(&m, &f, n).unwrap(), 0.0);
        }
        // a window ending off the zero pattern sees the unit weight
        let off = Filtration::explicit(vec![5, 15]).unwrap();
        assert!((commutator_defect_opnorm(&m, &off, 1).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn toeplitz_sections_have_constant_diagonals() {
        let mut rng = trial_rng(5, 0);
        for _ in 0..20 {
            let m = random_model(&mut rng);
            if !matches!(m.kind, ModelKind::Toeplitz { .. }) {
                continue;
            }
            let t = truncate(&m, &Filtration::coordinate(), 9).unwrap().matrix;
            for i in 1..9 {
                for j in 1..9 {
                    assert_eq!(t[(i, j)], t[(i - 1, j - 1)]);
                }
            }
        }
    }

    #[test]
    fn band_and_entry_bound_hold_on_samples() {
        let mut rng = trial_rng(6, 0);
        for _ in 0..50 {
            let m = random_model(&mut rng);
            let b = m.band() as i64;
            for i in -30..30 {
                for j in -30..30 {
                    let t = m.entry(i, j);
                    if (i - j).abs() > b {
                        assert_eq!(t, ZERO);
                    }
                    assert!(t.norm() <= m.entry_bound() * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn model_json_roundtrip_and_validation() {
        let text = r#"{ "support": "one_sided",
            "kind": { "type": "toeplitz", "coefficients": [ { "offset": 1, "re": 1.0 } ] } }"#;
        let m = OperatorModel::from_json(text).unwrap();
        assert_eq!(m.band(), 1);
        assert_eq!(m.entry_bound(), 1.0);
        assert_eq!(OperatorModel::from_json(&m.to_json()).unwrap(), m);

        let bad_band = r#"{ "support": "two_sided", "band": 0,
            "kind": { "type": "toeplitz", "coefficients": [ { "offset": 2, "re": 1.0 } ] } }"#;
        assert!(OperatorModel::from_json(bad_band).is_err());
        let bad_bound = r#"{ "support": "one_sided", "entry_bound": 0.5,
            "kind": { "type": "diagonal", "diagonal": { "rule": "constant", "value": 2.0 } } }"#;
        assert!(OperatorModel::from_json(bad_bound).is_err());
    }

    #[test]
    fn direct_sum_cycles_blocks() {
        let a = crate::linalg::ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = crate::linalg::ComplexMatrix::real_diag(&[7.0]);
        let m = OperatorModel::direct_sum(Support::OneSided, &[a, b]).unwrap();
        let t = truncate(&m, &Filtration::coordinate(), 6).unwrap().matrix;
        let expect = crate::linalg::ComplexMatrix::from_real_rows(&[
            vec![1.0, 2.0, 0.0, 0.0, 0.0, 0.0],
            vec![3.0, 4.0, 0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 7.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0, 2.0, 0.0],
            vec![0.0, 0.0, 0.0, 3.0, 4.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0, 0.0, 7.0],
        ])
        .unwrap();
        assert_eq!(t, expect);
        assert_eq!(m.band(), 1);
    }
}
