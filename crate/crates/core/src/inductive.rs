//! Finite stages of the inductive system
//! `E_0 = E`, `E_{i+1} = E_i (x) M_{n(i+1)}` with connecting maps
//! `rho_i(x) = 1 (x) diag(0_{n-m}, pi(x)) + x (x) diag(1_{n-m}, 0_m)`,
//! where `pi = pi_{i+1} (x) id` has dimension `m = k(i+1) n(1) ... n(i)`.
//!
//! Stage plans are exact: multiplicities are big integers and the trace
//! error coefficients `lambda_{i,j}` are big rationals.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, FsqError, Result};
use crate::linalg::{operator_norm, ComplexMatrix, C64, ZERO};
use crate::random::ginibre;

/// Default cap on the size of any multiplicity.
pub const DEFAULT_BIT_BOUND: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ScheduleMode {
    /// `n(j)` smallest with `n(0) ... n(j-1) k(j) / n(j) < 2^{-j}`.
    Full,
    /// `2^{-j}` replaced by the tolerance `eps_j`.
    Scaled { tolerances: Vec<f64> },
    /// Multiplicities supplied by the caller.
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StagePlan {
    pub mode: ScheduleMode,
    /// `k(1), ..., k(J)`.
    pub k: Vec<BigUint>,
    /// `n(1), ..., n(J)`; `n(0) = 1` is implicit.
    pub n: Vec<BigUint>,
    /// `n(0) ... n(j-1) k(j) / n(j)` for `j = 1..=J`.
    pub ratios: Vec<BigRational>,
    /// `lambda[i][j - i - 1] = lambda_{i,j}` for `0 <= i < j <= J`.
    lambda: Vec<Vec<BigRational>>,
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn rational(n: &BigUint, d: &BigUint) -> BigRational {
    BigRational::new(n.clone().into(), d.clone().into())
}

fn check_bits(n: &BigUint, bound: u64) -> Result<()> {
    if n.bits() > bound {
        return Err(FsqError::Resource(format!(
            "multiplicity needs {} bits, above the bound {bound}",
            n.bits()
        )));
    }
    Ok(())
}

impl StagePlan {
    fn from_parts(mode: ScheduleMode, k: Vec<BigUint>, n: Vec<BigUint>) -> Result<Self> {
        let stages = k.len();
        let mut prefix = vec![BigUint::one()]; // prefix[j] = n(0) ... n(j)
        for nj in &n {
            let last = prefix.last().expect("nonempty").clone();
            prefix.push(last * nj);
        }
        let mut ratios = Vec::with_capacity(stages);
        for j in 0..stages {
            let corner = &prefix[j] * &k[j];
            if corner > n[j] {
                return domain(format!("stage {}: corner {corner} exceeds n = {}", j + 1, n[j]));
            }
            ratios.push(rational(&corner, &n[j]));
        }
        let lambda = (0..stages)
            .map(|i| {
                let mut prod = BigRational::one();
                (i..stages)
                    .map(|s| {
                        prod = &prod * (BigRational::one() - &ratios[s]);
                        BigRational::one() - &prod
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            mode,
            k,
            n,
            ratios,
            lambda,
        })
    }

    pub fn stages(&self) -> usize {
        self.k.len()
    }

    /// `lambda_{i,j}`, zero when `i == j`.
    pub fn lambda(&self, i: usize, j: usize) -> BigRational {
        assert!(i <= j && j <= self.stages(), "lambda({i}, {j}) out of range");
        if i == j {
            BigRational::zero()
        } else {
            self.lambda[i][j - i - 1].clone()
        }
    }

    pub fn lambda_f64(&self, i: usize, j: usize) -> f64 {
        self.lambda(i, j).to_f64().unwrap_or(f64::NAN)
    }

    /// `ratio_j < 2^{-j}` for every stage (exact).
    pub fn ratio_bounds_hold(&self) -> bool {
        self.ratios
            .iter()
            .enumerate()
            .all(|(j, r)| r < &rational(&BigUint::one(), &(BigUint::one() << (j + 1))))
    }

    /// `lambda_{i,j} <= 2^{-i}` for all `i < j` (exact).
    pub fn lambda_bounds_hold(&self) -> bool {
        (0..self.stages()).all(|i| {
            let bound = rational(&BigUint::one(), &(BigUint::one() << i));
            (i + 1..=self.stages()).all(|j| {
                let l = self.lambda(i, j);
                l >= BigRational::zero() && l <= bound
            })
        })
    }

    /// `lambda_{i,j} <= sum_{s=i+1}^{j} ratio_s`, which holds for every
    /// schedule since `1 - prod(1 - r_s) <= sum r_s`.
    pub fn lambda_union_bounds_hold(&self) -> bool {
        (0..self.stages()).all(|i| {
            let mut sum = BigRational::zero();
            (i..self.stages()).all(|s| {
                sum = &sum + &self.ratios[s];
                self.lambda(i, s + 1) <= sum
            })
        })
    }

    /// Multiplicities as machine integers, when they fit.
    pub fn n_usize(&self) -> Option<Vec<usize>> {
        self.n.iter().map(|x| x.to_usize()).collect()
    }

    pub fn k_usize(&self) -> Option<Vec<usize>> {
        self.k.iter().map(|x| x.to_usize()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&StagePlanJson::from(self)).expect("plan serializes")
    }
}

/// `(k(1), ..., k(J))` with the full `2^{-j}` schedule.
pub fn plan_stages(k: &[u64], bit_bound: u64) -> Result<StagePlan> {
    if k.is_empty() || k.contains(&0) {
        return domain("stage plan needs J >= 1 positive dimensions");
    }
    let mut prefix = BigUint::one();
    let mut n = Vec::with_capacity(k.len());
    for (j, &kj) in k.iter().enumerate() {
        // smallest n with prefix k / n < 2^{-(j+1)}
        let nj = ((&prefix * big(kj)) << (j + 1)) + BigUint::one();
        check_bits(&nj, bit_bound)?;
        prefix *= &nj;
        n.push(nj);
    }
    StagePlan::from_parts(ScheduleMode::Full, k.iter().map(|&x| big(x)).collect(), n)
}

/// Schedule with `n(0) ... n(j-1) k(j) / n(j) < eps_j`, for desk-scale stages.
pub fn plan_stages_scaled(k: &[u64], tolerances: &[f64], bit_bound: u64) -> Result<StagePlan> {
    if k.is_empty() || k.contains(&0) || k.len() != tolerances.len() {
        return domain("scaled plan needs one positive dimension and tolerance per stage");
    }
    let mut prefix = BigUint::one();
    let mut n = Vec::with_capacity(k.len());
    for (&kj, &eps) in k.iter().zip(tolerances) {
        if !(eps > 0.0 && eps <= 1.0) {
            return domain("stage tolerances must lie in (0, 1]");
        }
        let eps = BigRational::from_float(eps).expect("finite");
        let corner: BigRational = BigRational::from_integer((&prefix * big(kj)).into());
        // smallest integer n > corner / eps
        let bound = corner / eps;
        let nj = (bound.floor() + BigRational::one()).to_integer();
        let nj = nj.to_biguint().expect("positive");
        check_bits(&nj, bit_bound)?;
        prefix *= &nj;
        n.push(nj);
    }
    StagePlan::from_parts(
        ScheduleMode::Scaled {
            tolerances: tolerances.to_vec(),
        },
        k.iter().map(|&x| big(x)).collect(),
        n,
    )
}

/// Plan with caller-chosen multiplicities (`n(j) >= n(0) ... n(j-1) k(j)`).
pub fn plan_explicit(k: &[u64], n: &[u64]) -> Result<StagePlan> {
    if k.is_empty() || k.len() != n.len() || k.contains(&0) {
        return domain("explicit plan needs one positive dimension and multiplicity per stage");
    }
    StagePlan::from_parts(
        ScheduleMode::Explicit,
        k.iter().map(|&x| big(x)).collect(),
        n.iter().map(|&x| big(x)).collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub numerator: String,
    pub denominator: String,
}

impl From<&BigRational> for ExactRational {
    fn from(r: &BigRational) -> Self {
        Self {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaEntry {
    pub i: usize,
    pub j: usize,
    pub value: ExactRational,
    pub approx: f64,
}

/// JSON view of a plan; integers and rationals as decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StagePlanJson {
    #[serde(flatten)]
    pub mode: ScheduleMode,
    pub k: Vec<String>,
    pub n: Vec<String>,
    pub ratios: Vec<ExactRational>,
    pub lambda: Vec<LambdaEntry>,
    pub ratio_bounds_hold: bool,
    pub lambda_bounds_hold: bool,
}

impl From<&StagePlan> for StagePlanJson {
    fn from(p: &StagePlan) -> Self {
        let lambda = (0..p.stages())
            .flat_map(|i| (i + 1..=p.stages()).map(move |j| (i, j)))
            .map(|(i, j)| LambdaEntry {
                i,
                j,
                value: (&p.lambda(i, j)).into(),
                approx: p.lambda_f64(i, j),
            })
            .collect();
        Self {
            mode: p.mode.clone(),
            k: p.k.iter().map(|x| x.to_string()).collect(),
            n: p.n.iter().map(|x| x.to_string()).collect(),
            ratios: p.ratios.iter().map(Into::into).collect(),
            lambda,
            ratio_bounds_hold: p.ratio_bounds_hold(),
            lambda_bounds_hold: p.lambda_bounds_hold(),
        }
    }
}

/// `1_D (x) diag(0_{n-k}, pi_x) + x (x) diag(1_{n-k}, 0_k)` for `x` of size
/// `D` and `pi_x` of size `k <= n`.
pub fn connecting_map(x: &ComplexMatrix, pi_x: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    let k = pi_x.rows();
    if !x.is_square() || !pi_x.is_square() {
        return domain("connecting map inputs must be square");
    }
    if k > n {
        return domain(format!("representation dimension {k} exceeds n = {n}"));
    }
    let d = x.rows();
    let free = n - k;
    let mut out = ComplexMatrix::zeros(d * n, d * n);
    for a in 0..d {
        for b in 0..d {
            let xab = x[(a, b)];
            if xab != ZERO {
                for t in 0..free {
                    out[(a * n + t, b * n + t)] = xab;
                }
            }
        }
        for r in 0..k {
            for c in 0..k {
                out[(a * n + free + r, a * n + free + c)] = pi_x[(r, c)];
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CornerReport {
    /// `||e rho(x) - rho(x) e||`.
    pub commutator: f64,
    /// Hilbert-Schmidt distance from `e rho(x) e` to `span(B)`.
    pub span_residual: f64,
}

/// Checks remark (3) of the construction: `e = 1 (x) diag(0_{n-k}, 1_k)`
/// commutes with `rho(x)` and `e rho(x) e` lies in `B = 1 (x) diag(0, pi(E))`.
/// `project_image` is the Hilbert-Schmidt projection of `M_k` onto `pi(E)`.
pub fn commuting_corner_check(
    rho_x: &ComplexMatrix,
    outer: usize,
    n: usize,
    k: usize,
    project_image: impl Fn(&ComplexMatrix) -> ComplexMatrix,
) -> Result<CornerReport> {
    if rho_x.rows() != outer * n || !rho_x.is_square() || k > n {
        return domain("corner check dimensions are inconsistent");
    }
    let free = n - k;
    let in_corner = |p: usize| p % n >= free;
    let size = outer * n;
    let mut comm = ComplexMatrix::zeros(size, size);
    let mut cut = ComplexMatrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            let v = rho_x[(r, c)];
            match (in_corner(r), in_corner(c)) {
                (true, false) => comm[(r, c)] = v,
                (false, true) => comm[(r, c)] = -v,
                (true, true) => cut[(r, c)] = v,
                _ => {}
            }
        }
    }
    // projection onto 1 (x) diag(0, image): average of the diagonal corners
    let mut avg = ComplexMatrix::zeros(k, k);
    for a in 0..outer {
        avg = &avg + &cut.block(a * n + free, a * n + free, k, k);
    }
    let target = project_image(&avg.scale_real(1.0 / outer as f64));
    let mut residual = cut;
    for a in 0..outer {
        let block = &residual.block(a * n + free, a * n + free, k, k) - &target;
        residual.set_block(a * n + free, a * n + free, &block);
    }
    Ok(CornerReport {
        commutator: operator_norm(&comm)?,
        span_residual: residual.frobenius_norm(),
    })
}

/// The base algebra `E`, realized concretely.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BaseAlgebra {
    /// `M_d` with its normalized trace.
    Full { d: usize },
    /// `C^m` as diagonal matrices, with trace weights summing to one.
    Diagonal { weights: Vec<f64> },
}

impl BaseAlgebra {
    pub fn dim(&self) -> usize {
        match self {
            BaseAlgebra::Full { d } => *d,
            BaseAlgebra::Diagonal { weights } => weights.len(),
        }
    }
}

/// Representation `pi : E -> M_k` used by a stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StageRepresentation {
    /// `x -> 1_r (x) x` on `E = M_d`.
    Amplify { copies: usize },
    /// `x -> diag(x_1, ..., x_count)` on `E = C^m`.
    LeadingBlocks { count: usize },
}

/// Concrete tower `E_0 -> E_1 -> ... -> E_J` following a plan.
#[derive(Debug, Clone, PartialEq)]
pub struct StageTower {
    pub base: BaseAlgebra,
    pub reps: Vec<StageRepresentation>,
    n: Vec<usize>,
}

impl StageTower {
    /// Dimensions of `reps` must match the plan's `k(j)`. `max_dim` caps the
    /// concrete matrix size of the top stage.
    pub fn new(base: BaseAlgebra, reps: Vec<StageRepresentation>, plan: &StagePlan, max_dim: usize) -> Result<Self> {
        if reps.len() != plan.stages() {
            return domain("one representation per stage is required");
        }
        if let BaseAlgebra::Diagonal { weights } = &base {
            if weights.is_empty() || weights.iter().any(|&w| w < 0.0) || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
                return domain("diagonal base needs a probability weight vector");
            }
        }
        let k = plan.k_usize().ok_or_else(|| FsqError::Resource("k(j) too large".into()))?;
        for (j, rep) in reps.iter().enumerate() {
            let dim = match (&base, rep) {
                (BaseAlgebra::Full { d }, StageRepresentation::Amplify { copies }) if *copies > 0 => copies * d,
                (BaseAlgebra::Diagonal { weights }, StageRepresentation::LeadingBlocks { count })
                    if *count > 0 && *count <= weights.len() =>
                {
                    *count
                }
                _ => return domain(format!("stage {} representation does not fit the base algebra", j + 1)),
            };
            if dim != k[j] {
                return domain(format!("stage {} representation has dimension {dim}, plan says {}", j + 1, k[j]));
            }
        }
        let n = plan.n_usize().ok_or_else(|| FsqError::Resource("multiplicities too large".into()))?;
        let top = n.iter().try_fold(base.dim(), |acc, &x| acc.checked_mul(x));
        match top {
            Some(t) if t <= max_dim => {}
            _ => return Err(FsqError::Resource(format!("top stage exceeds {max_dim} dimensions"))),
        }
        Ok(Self { base, reps, n })
    }

    pub fn stages(&self) -> usize {
        self.n.len()
    }

    /// `n(1) ... n(i)`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.n[..i].iter().product()
    }

    /// Concrete matrix size of `E_i`.
    pub fn stage_dim(&self, i: usize) -> usize {
        self.base.dim() * self.multiplicity(i)
    }

    /// `(pi_{i+1} (x) id)(x)` for `x` in `E_i`.
    pub fn represent(&self, i: usize, x: &ComplexMatrix) -> ComplexMatrix {
        let big_n = self.multiplicity(i);
        match self.reps[i] {
            StageRepresentation::Amplify { copies } => ComplexMatrix::identity(copies).kron(x),
            StageRepresentation::LeadingBlocks { count } => x.block(0, 0, count * big_n, count * big_n),
        }
    }

    /// Hilbert-Schmidt projection of `M_m` onto the image of `pi_{i+1} (x) id`.
    pub fn project_image(&self, i: usize, y: &ComplexMatrix) -> ComplexMatrix {
        let big_n = self.multiplicity(i);
        match (&self.base, &self.reps[i]) {
            (BaseAlgebra::Full { d }, StageRepresentation::Amplify { copies }) => {
                let s = d * big_n;
                let mut avg = ComplexMatrix::zeros(s, s);
                for r in 0..*copies {
                    avg = &avg + &y.block(r * s, r * s, s, s);
                }
                ComplexMatrix::identity(*copies).kron(&avg.scale_real(1.0 / *copies as f64))
            }
            (_, StageRepresentation::LeadingBlocks { count }) => {
                let mut out = ComplexMatrix::zeros(y.rows(), y.cols());
                for b in 0..*count {
                    out.set_block(b * big_n, b * big_n, &y.block(b * big_n, b * big_n, big_n, big_n));
                }
                out
            }
            _ => unreachable!("validated in new"),
        }
    }

    /// `rho_i : E_i -> E_{i+1}`.
    pub fn connect(&self, i: usize, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        connecting_map(x, &self.represent(i, x), self.n[i])
    }

    /// `Phi_{j,i} = rho_{j-1} o ... o rho_i`.
    pub fn composite(&self, i: usize, j: usize, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        (i..j).try_fold(x.clone(), |acc, s| self.connect(s, &acc))
    }

    pub fn corner_check(&self, i: usize, x: &ComplexMatrix) -> Result<CornerReport> {
        let rho = self.connect(i, x)?;
        let k = self.represent(i, x).rows();
        commuting_corner_check(&rho, self.stage_dim(i), self.n[i], k, |y| self.project_image(i, y))
    }

    /// `tau_i = tau (x) tr_{n(1)} (x) ... (x) tr_{n(i)}`.
    pub fn trace(&self, i: usize, x: &ComplexMatrix) -> C64 {
        match &self.base {
            BaseAlgebra::Full { .. } => x.normalized_trace(),
            BaseAlgebra::Diagonal { weights } => {
                let big_n = self.multiplicity(i);
                weights
                    .iter()
                    .enumerate()
                    .map(|(e, &w)| (0..big_n).map(|t| x[(e * big_n + t, e * big_n + t)]).sum::<C64>() * (w / big_n as f64))
                    .sum()
            }
        }
    }

    /// Random element of `E_i`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, i: usize) -> ComplexMatrix {
        match &self.base {
            BaseAlgebra::Full { .. } => {
                let s = self.stage_dim(i);
                ginibre(rng, s, s)
            }
            BaseAlgebra::Diagonal { weights } => {
                let big_n = self.multiplicity(i);
                let blocks: Vec<ComplexMatrix> = weights.iter().map(|_| ginibre(rng, big_n, big_n)).collect();
                ComplexMatrix::block_diag(&blocks.iter().collect::<Vec<_>>())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::trial_rng;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn unit_dimensions_plan() {
        let p = plan_stages(&[1, 1, 1], DEFAULT_BIT_BOUND).unwrap();
        assert_eq!(p.n, vec![big(3), big(13), big(313)]);
        assert_eq!(p.lambda(0, 0), BigRational::zero());
        assert_eq!(p.lambda(0, 1), r(1, 3));
        assert_eq!(p.lambda(1, 3), r(1329, 4069));
        assert!(p.ratio_bounds_hold() && p.lambda_bounds_hold() && p.lambda_union_bounds_hold());
    }

    #[test]
    fn bit_bound_is_enforced() {
        assert!(matches!(plan_stages(&[2; 12], 64), Err(FsqError::Resource(_))));
    }

    #[test]
    fn scaled_plan_meets_its_tolerances() {
        let p = plan_stages_scaled(&[1, 1, 1], &[0.5, 0.5, 0.5], 64).unwrap();
        assert_eq!(p.n_usize().unwrap(), vec![3, 7, 43]);
        assert!(p.lambda_union_bounds_hold());
    }

    #[test]
    fn connecting_map_trace_example() {
        // E = M_2, pi = id, n = 10, x = e_11
        let x = ComplexMatrix::real_diag(&[1.0, 0.0]);
        let rho = connecting_map(&x, &x, 10).unwrap();
        assert!((rho.normalized_trace().re - 0.5).abs() < 1e-15);
        let one = ComplexMatrix::identity(2);
        assert_eq!(connecting_map(&one, &one, 10).unwrap(), ComplexMatrix::identity(20));
        assert!(connecting_map(&one, &ComplexMatrix::identity(11), 10).is_err());
    }

    #[test]
    fn connecting_map_is_a_homomorphism() {
        let plan = plan_explicit(&[2], &[4]).unwrap();
        let tower = StageTower::new(BaseAlgebra::Full { d: 2 }, vec![StageRepresentation::Amplify { copies: 1 }], &plan, 64).unwrap();
        let mut rng = trial_rng(9, 0);
        for _ in 0..20 {
            let x = tower.random_element(&mut rng, 0);
            let y = tower.random_element(&mut rng, 0);
            let lhs = tower.connect(0, &x.matmul(&y)).unwrap();
            let rhs = tower.connect(0, &x).unwrap().matmul(&tower.connect(0, &y).unwrap());
            assert!((&lhs - &rhs).max_abs() < 1e-12);
            let adj = (&tower.connect(0, &x.adjoint()).unwrap() - &tower.connect(0, &x).unwrap().adjoint()).max_abs();
            assert_eq!(adj, 0.0);
            let c = tower.corner_check(0, &x).unwrap();
            assert!(c.commutator < 1e-12 && c.span_residual < 1e-12);
        }
    }

    #[test]
    fn diagonal_base_has_trace_error_within_the_bound() {
        let plan = plan_explicit(&[1, 1], &[3, 8]).unwrap();
        let reps = vec![StageRepresentation::LeadingBlocks { count: 1 }; 2];
        let tower = StageTower::new(BaseAlgebra::Diagonal { weights: vec![0.25, 0.75] }, reps, &plan, 4096).unwrap();
        let mut rng = trial_rng(10, 0);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let x = tower.random_element(&mut rng, 0);
            let err = (tower.trace(2, &tower.composite(0, 2, &x).unwrap()) - tower.trace(0, &x)).norm();
            let bound = 2.0 * plan.lambda_f64(0, 2) * operator_norm(&x).unwrap();
            assert!(err <= bound + 1e-12);
            worst = worst.max(err);
        }
        assert!(worst > 1e-3, "the first coordinate must move the trace");
    }

    #[test]
    fn plan_json_uses_strings() {
        let p = plan_stages(&[1], 64).unwrap();
        let v: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(v["mode"], "full");
        assert_eq!(v["n"][0], "3");
        assert_eq!(v["lambda"][0]["value"]["numerator"], "1");
        assert_eq!(v["lambda"][0]["value"]["denominator"], "3");
    }
}
