use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Basis of a full-rank sublattice of ℤ^k in lower-triangular column Hermite
/// normal form: positive diagonal, and every entry left of the diagonal
/// reduced into `[0, diagonal)` of its row.
///
/// Two bases are equal iff they span the same lattice.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct HnfBasis {
    matrix: IntMatrix,
}

impl HnfBasis {
    /// The standard lattice ℤ^k.
    pub fn standard(k: usize) -> Self {
        HnfBasis {
            matrix: IntMatrix::identity(k),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.dim())
            .map(|i| self.matrix[(i, i)].clone())
            .collect()
    }

    /// Index of the lattice in ℤ^k.
    pub fn det(&self) -> BigInt {
        (0..self.dim())
            .map(|i| self.matrix[(i, i)].clone())
            .product()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let k = self.dim();
        if v.len() != k {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(k);
        for i in 0..k {
            let (q, r) = rest[i].div_rem(&self.matrix[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (t, x) in rest.iter_mut().enumerate().skip(i) {
                    *x -= &q * &self.matrix[(t, i)];
                }
            }
            coeffs.push(q);
        }
        Some(coeffs)
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &HnfBasis) -> bool {
        other.dim() == self.dim()
            && (0..other.dim()).all(|j| self.contains_vector(&other.matrix.column(j)))
    }

    /// The integer matrix `C` with `self · C = other`; requires `other ⊆ self`.
    pub fn coordinates_of(&self, other: &HnfBasis) -> Result<IntMatrix> {
        let k = self.dim();
        if other.dim() != k {
            return Err(Error::DimensionMismatch(
                "lattices of different rank".into(),
            ));
        }
        let mut cols = Vec::with_capacity(k);
        for j in 0..k {
            cols.push(
                self.solve(&other.matrix.column(j))
                    .ok_or(Error::NotSubgroupPair)?,
            );
        }
        IntMatrix::from_columns(k, &cols)
    }
}

/// Column echelon form by unimodular column operations.
///
/// On return, the first `rank` columns of `a` are in echelon form and the rest
/// are zero. If `transform` is given it is right-multiplied by the same
/// operations, so `a_in · transform_out = a_out` when it starts as the identity.
/// Returns the pivot row of each nonzero column.
pub(crate) fn column_echelon(
    a: &mut IntMatrix,
    mut transform: Option<&mut IntMatrix>,
) -> Vec<usize> {
    let rows = a.rows();
    let cols = a.cols();
    let mut pivots = Vec::new();
    let mut p = 0;
    for i in 0..rows {
        if p == cols {
            break;
        }
        for c in p + 1..cols {
            if a[(i, c)].is_zero() {
                continue;
            }
            if a[(i, p)].is_zero() {
                a.swap_cols(p, c);
                if let Some(t) = transform.as_deref_mut() {
                    t.swap_cols(p, c);
                }
                continue;
            }
            let eg = a[(i, p)].extended_gcd(&a[(i, c)]);
            let ap = &a[(i, p)] / &eg.gcd;
            let bc = &a[(i, c)] / &eg.gcd;
            let nb = -bc;
            a.combine_cols(p, c, &eg.x, &eg.y, &nb, &ap);
            if let Some(t) = transform.as_deref_mut() {
                t.combine_cols(p, c, &eg.x, &eg.y, &nb, &ap);
            }
        }
        if !a[(i, p)].is_zero() {
            if a[(i, p)].is_negative() {
                a.negate_col(p);
                if let Some(t) = transform.as_deref_mut() {
                    t.negate_col(p);
                }
            }
            pivots.push(i);
            p += 1;
        }
    }
    pivots
}

/// Canonical HNF basis of the lattice spanned by the columns of `gens`.
pub fn hnf(gens: &IntMatrix) -> Result<HnfBasis> {
    let k = gens.rows();
    let mut a = gens.clone();
    let pivots = column_echelon(&mut a, None);
    if pivots.len() != k {
        return Err(Error::LatticeNotFullRank);
    }
    let mut h = a.select_columns(0..k);
    for i in 0..k {
        let d = h[(i, i)].clone();
        for j in 0..i {
            let q = h[(i, j)].div_floor(&d);
            if !q.is_zero() {
                h.add_col_multiple(j, i, &-q);
            }
        }
    }
    Ok(HnfBasis { matrix: h })
}

/// Basis (as columns) of the integer kernel `{x ∈ ℤ^n : m·x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(n);
    let rank = column_echelon(&mut a, Some(&mut u)).len();
    u.select_columns(rank..n)
}

/// HNF of `{x ∈ ℤ^k : m·x ∈ target}` for a full-rank `target` in the codomain.
pub fn preimage_lattice(m: &IntMatrix, target: &HnfBasis) -> Result<HnfBasis> {
    if m.rows() != target.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}-row map against a rank-{} target",
            m.rows(),
            target.dim()
        )));
    }
    let k = m.cols();
    let stacked = m.hcat(&target.matrix().neg())?;
    let kernel = integer_kernel(&stacked);
    hnf(&kernel.select_rows(0..k))
}

pub fn sum_lattices(a: &HnfBasis, b: &HnfBasis) -> Result<HnfBasis> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(
            "lattices of different rank".into(),
        ));
    }
    hnf(&a.matrix().hcat(b.matrix())?)
}

pub fn intersect_lattices(a: &HnfBasis, b: &HnfBasis) -> Result<HnfBasis> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(
            "lattices of different rank".into(),
        ));
    }
    let k = a.dim();
    let stacked = a.matrix().hcat(&b.matrix().neg())?;
    let kernel = integer_kernel(&stacked);
    let coeffs = kernel.select_rows(0..k);
    hnf(&a.matrix().mul(&coeffs)?)
}

/// Lattice `d_1ℤ × … × d_kℤ`.
pub fn diagonal_lattice(moduli: &[BigInt]) -> HnfBasis {
    debug_assert!(moduli.iter().all(|d| d.is_positive()));
    HnfBasis {
        matrix: IntMatrix::diagonal(moduli),
    }
}
