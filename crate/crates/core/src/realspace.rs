//! Endomorphisms of ℝⁿ and the eigenvalue closed form of their entropy.

use nalgebra::{DMatrix, Schur};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const SCHUR_EPS: f64 = 1e-14;
const SCHUR_MAX_ITER: usize = 10_000;

/// A linear map of ℝⁿ. The rational matrix is authoritative; the float copy
/// only feeds the eigenvalue solver.
#[derive(Clone, Debug)]
pub struct RealEndo {
    matrix: QMatrix,
    float: DMatrix<f64>,
}

impl PartialEq for RealEndo {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl RealEndo {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rows() == 0 {
            return Err(Error::DimensionMismatch(
                "real endomorphism must be square and nonempty".into(),
            ));
        }
        let n = matrix.rows();
        let float = DMatrix::from_fn(n, n, |i, j| matrix[(i, j)].to_f64().unwrap_or(f64::NAN));
        Ok(RealEndo { matrix, float })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(QMatrix::from_int(&crate::linalg::IntMatrix::from_rows(
            rows,
        )))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn transpose(&self) -> RealEndo {
        RealEndo::new(self.matrix.transpose()).expect("transpose of a square matrix")
    }

    pub fn pow(&self, k: u32) -> Result<RealEndo> {
        RealEndo::new(self.matrix.pow(k)?)
    }

    /// Moduli of all complex eigenvalues, with multiplicity.
    pub fn eigenvalue_moduli(&self) -> Result<Vec<f64>> {
        let schur = Schur::try_new(self.float.clone(), SCHUR_EPS, SCHUR_MAX_ITER)
            .ok_or(Error::EigenSolverFailed)?;
        let mut out: Vec<f64> = schur
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .collect();
        if out.iter().any(|m| !m.is_finite()) {
            return Err(Error::EigenSolverFailed);
        }
        out.sort_by(f64::total_cmp);
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealEntropy {
    pub value: f64,
    /// Some eigenvalue modulus lies within the tolerance of 1, where the
    /// formula is discontinuous and a float spectrum cannot decide.
    pub boundary: bool,
    pub moduli: Vec<f64>,
}

/// `Σ_{|λ|>1} log|λ|`, skipping moduli within `tol` of 1 and flagging them.
pub fn bowen_entropy(phi: &RealEndo, tol: f64) -> Result<RealEntropy> {
    let moduli = phi.eigenvalue_moduli()?;
    let boundary = moduli.iter().any(|m| (m - 1.0).abs() <= tol);
    let value = moduli
        .iter()
        .filter(|&&m| m > 1.0 + tol)
        .map(|m| m.ln())
        .sum();
    Ok(RealEntropy {
        value,
        boundary,
        moduli,
    })
}

/// Algebraic entropy of the dual map, which acts on ℝⁿ by the transpose.
pub fn virili_entropy(phi: &RealEndo, tol: f64) -> Result<RealEntropy> {
    bowen_entropy(&phi.transpose(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[&str]]) -> RealEndo {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        RealEndo::new(QMatrix::parse_rows(&rows).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let id = RealEndo::from_i64_rows(&[[1, 0], [0, 1]]).unwrap();
        let h = bowen_entropy(&id, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(h.value, 0.0);
        assert!(h.boundary);

        let d = qm(&[&["2", "0"], &["0", "1/2"]]);
        let h = bowen_entropy(&d, DEFAULT_TOLERANCE).unwrap();
        assert!((h.value - 2f64.ln()).abs() < 1e-12);
        assert!(!h.boundary);
        let v = virili_entropy(&d, DEFAULT_TOLERANCE).unwrap();
        assert!((v.value - 2f64.ln()).abs() < 1e-12);

        let rot = RealEndo::from_i64_rows(&[[0, 1], [-1, 0]]).unwrap();
        let h = bowen_entropy(&rot, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(h.value, 0.0);
        assert!(h.boundary);
    }

    #[test]
    fn cat_map() {
        // eigenvalues (3 ± √5)/2
        let cat = RealEndo::from_i64_rows(&[[2, 1], [1, 1]]).unwrap();
        let h = bowen_entropy(&cat, DEFAULT_TOLERANCE).unwrap();
        assert!((h.value - ((3.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn transpose_and_powers() {
        let m = RealEndo::from_i64_rows(&[[1, -4, 2], [3, 0, 7], [-2, 5, 1]]).unwrap();
        let b = bowen_entropy(&m, DEFAULT_TOLERANCE).unwrap().value;
        let v = virili_entropy(&m, DEFAULT_TOLERANCE).unwrap().value;
        assert!((b - v).abs() <= 1e-9);
        for k in 1..=4u32 {
            let bk = bowen_entropy(&m.pow(k).unwrap(), DEFAULT_TOLERANCE)
                .unwrap()
                .value;
            assert!((bk - k as f64 * b).abs() <= k as f64 * 1e-9, "k = {k}");
        }
    }

    #[test]
    fn rejects_non_square() {
        assert!(RealEndo::new(QMatrix::zeros(2, 3)).is_err());
        assert!(RealEndo::new(QMatrix::zeros(0, 0)).is_err());
    }
}
