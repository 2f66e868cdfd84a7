use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `left · m · right = diag(d_1, …, d_r, 0, …)` with
/// `d_i | d_{i+1}` and unimodular `left`, `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// The `min(rows, cols)` diagonal entries, non-negative.
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries different from one: the invariant factors of the
    /// cokernel restricted to its torsion-or-free summands that are nontrivial.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| *d != &BigInt::from(1))
            .cloned()
            .collect()
    }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn snf(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);
    let n = r.min(c);
    let mut diag = vec![BigInt::zero(); n];

    for t in 0..n {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&a, t) else {
                return SmithForm { diag, left, right };
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                let q = &a[(i, t)] / &a[(t, t)];
                if !q.is_zero() {
                    let nq = -q;
                    a.add_row_multiple(i, t, &nq);
                    left.add_row_multiple(i, t, &nq);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let q = &a[(t, j)] / &a[(t, t)];
                if !q.is_zero() {
                    let nq = -q;
                    a.add_col_multiple(j, t, &nq);
                    right.add_col_multiple(j, t, &nq);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a[(t, t)].clone();
            let bad_row =
                (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&a[(i, j)] % &pivot).is_zero()));
            if let Some(i) = bad_row {
                let one = BigInt::from(1);
                a.add_row_multiple(t, i, &one);
                left.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        diag[t] = a[(t, t)].clone();
    }
    SmithForm { diag, left, right }
}
