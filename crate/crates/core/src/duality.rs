//! Pontryagin duality for finite abelian groups.
//!
//! A group `ℤ^k/diag(d)` is paired with the same presentation through
//! `⟨x, y⟩ = Σ x_i y_i / d_i mod 1`, so the dual group reuses the moduli
//! and dual maps are concrete integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fingroup::{FinAbGroup, GroupHom, SubgroupLattice};
use crate::linalg::{diagonal_lattice, preimage_lattice, IntMatrix};

/// A value of ℚ/ℤ, kept as a reduced fraction in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PairingValue(BigRational);

impl PairingValue {
    pub fn from_rational(q: BigRational) -> Self {
        PairingValue(&q - q.floor())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// `⟨x, y⟩` for `x ∈ G` and `y ∈ Ĝ`.
pub fn pairing(g: &FinAbGroup, x: &[BigInt], y: &[BigInt]) -> Result<PairingValue> {
    g.check_element(x)?;
    g.check_element(y)?;
    let sum = x
        .iter()
        .zip(y)
        .zip(g.moduli())
        .fold(BigRational::zero(), |acc, ((a, b), d)| {
            acc + BigRational::new(a * b, d.clone())
        });
    Ok(PairingValue::from_rational(sum))
}

/// `A^⊥ ⊆ Ĝ`. Applied to a subgroup of a dual group this is `B^⊤ ⊆ G`.
///
/// With `e = lcm(d)`, `y ∈ A^⊥` iff `Σ_i b_i (e/d_i) y_i ≡ 0 (mod e)` for every
/// basis vector `b` of `A`, which is a lattice preimage of `eℤ^k`.
pub fn annihilator(a: &SubgroupLattice) -> Result<SubgroupLattice> {
    let g = a.ambient();
    let k = g.rank();
    let e = g.exponent();
    let b = a.basis().matrix();
    let mut constraints = IntMatrix::zeros(k, k);
    for j in 0..k {
        for i in 0..k {
            constraints[(j, i)] = &b[(i, j)] * (&e / &g.moduli()[i]);
        }
    }
    let target = diagonal_lattice(&vec![e; k]);
    SubgroupLattice::from_basis(&g.dual(), preimage_lattice(&constraints, &target)?)
}

/// The dual map `f̂ : Ĥ → Ĝ` of `f : G → H`, characterised by
/// `⟨f x, y⟩ = ⟨x, f̂ y⟩`. Its matrix is `M̂[j][i] = M[i][j] · d_j / e_i`.
pub fn dual_hom(f: &GroupHom) -> GroupHom {
    let d = f.domain().moduli();
    let e = f.codomain().moduli();
    let m = f.matrix();
    let mut dual = IntMatrix::zeros(m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let (q, r) = (&m[(i, j)] * &d[j]).div_rem(&e[i]);
            assert!(
                r.is_zero(),
                "compatibility certificate guarantees integrality"
            );
            dual[(j, i)] = q;
        }
    }
    GroupHom::new(&f.codomain().dual(), &f.domain().dual(), dual)
        .expect("dual of a compatible matrix is compatible")
}

/// Invariant factors of `a/b` and of `b^⊥/a^⊥` for `b ⊆ a`. The two lists
/// agree because `(a/b)^ ≅ b^⊥/a^⊥` and finite groups are self-dual.
pub fn check_quotient_duality(
    a: &SubgroupLattice,
    b: &SubgroupLattice,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch);
    }
    if !a.contains(b) {
        return Err(Error::NotSubgroupPair);
    }
    let primal = a.quotient_invariants(b)?;
    let dual = annihilator(b)?.quotient_invariants(&annihilator(a)?)?;
    Ok((primal, dual))
}

/// Whether `pairing(x, ·)` vanishes on the whole dual; true only for `x = 0`.
pub fn pairs_trivially(g: &FinAbGroup, x: &[BigInt]) -> Result<bool> {
    let k = g.rank();
    for i in 0..k {
        let mut y = vec![BigInt::zero(); k];
        y[i] = BigInt::one();
        if !pairing(g, x, &y)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
