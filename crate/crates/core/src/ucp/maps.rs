use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg::{hermitian_operator_norm, ComplexMatrix};

/// Completely positive map `phi(T) = sum_m V_m* T V_m` with Kraus operators
/// `V_m : C^output -> C^input`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpMap {
    pub input_dim: usize,
    pub output_dim: usize,
    pub kraus: Vec<ComplexMatrix>,
}

impl CpMap {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = kraus.first() else {
            return domain("a cp map needs at least one Kraus operator");
        };
        let (input_dim, output_dim) = (first.rows(), first.cols());
        if kraus.iter().any(|k| k.rows() != input_dim || k.cols() != output_dim) {
            return domain("Kraus operators have inconsistent shapes");
        }
        Ok(Self {
            input_dim,
            output_dim,
            kraus,
        })
    }

    /// Compression `T -> V* T V` by a single operator.
    pub fn compression(v: ComplexMatrix) -> Self {
        Self {
            input_dim: v.rows(),
            output_dim: v.cols(),
            kraus: vec![v],
        }
    }

    pub fn apply(&self, t: &ComplexMatrix) -> Result<ComplexMatrix> {
        if t.rows() != self.input_dim || t.cols() != self.input_dim {
            return domain(format!(
                "map input is {0}x{0}, got {1}x{2}",
                self.input_dim,
                t.rows(),
                t.cols()
            ));
        }
        let mut out = ComplexMatrix::zeros(self.output_dim, self.output_dim);
        for v in &self.kraus {
            out = &out + &v.adjoint().matmul(&t.matmul(v));
        }
        Ok(out)
    }

    /// `phi(1)`.
    pub fn unit(&self) -> ComplexMatrix {
        self.apply(&ComplexMatrix::identity(self.input_dim))
            .expect("identity has the input shape")
    }

    /// `||phi(1) - 1||`.
    pub fn unitality_defect(&self) -> f64 {
        let d = &self.unit() - &ComplexMatrix::identity(self.output_dim);
        hermitian_operator_norm(&d.hermitian_part()).unwrap_or(f64::INFINITY)
    }

    /// `phi` scaled by a positive constant (Kraus operators scaled by its root).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return domain("cp maps scale by positive factors only");
        }
        let r = factor.sqrt();
        Ok(Self {
            input_dim: self.input_dim,
            output_dim: self.output_dim,
            kraus: self.kraus.iter().map(|k| k.scale_real(r)).collect(),
        })
    }
}

/// `||x||_2 = tr(x* x)^{1/2}` for the normalized trace.
pub fn two_norm(x: &ComplexMatrix) -> f64 {
    x.frobenius_norm() / (x.rows() as f64).sqrt()
}

/// Unital completely positive map into `M_q`, with the normalized trace on
/// the target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UcpModel {
    pub map: CpMap,
    /// Name of the trace functional on the target.
    pub trace: String,
}

impl UcpModel {
    /// Wraps `map` after checking `phi(1) = 1` to `tol`.
    pub fn new(map: CpMap, tol: f64) -> Result<Self> {
        let defect = map.unitality_defect();
        if !(defect <= tol) {
            return domain(format!("map is not unital (||phi(1) - 1|| = {defect:.3e})"));
        }
        Ok(Self {
            map,
            trace: "tr_q".into(),
        })
    }

    pub fn target_dim(&self) -> usize {
        self.map.output_dim
    }

    pub fn apply(&self, t: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.map.apply(t)
    }

    /// `tr_q(phi(t))`.
    pub fn trace_of(&self, t: &ComplexMatrix) -> Result<crate::linalg::C64> {
        Ok(self.apply(t)?.normalized_trace())
    }

    /// `||phi(ab) - phi(a) phi(b)||_2`.
    pub fn multiplicativity_defect(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
        let lhs = self.apply(&a.matmul(b))?;
        let rhs = self.apply(a)?.matmul(&self.apply(b)?);
        Ok(two_norm(&(&lhs - &rhs)))
    }

    /// `tr_q(phi(a a*) - phi(a) phi(a*))`, nonnegative by Kadison-Schwarz.
    pub fn trace_defect(&self, a: &ComplexMatrix) -> Result<crate::linalg::C64> {
        let adj = a.adjoint();
        let x = &self.apply(&a.matmul(&adj))? - &self.apply(a)?.matmul(&self.apply(&adj)?);
        Ok(x.normalized_trace())
    }
}
