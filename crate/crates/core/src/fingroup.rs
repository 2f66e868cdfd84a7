//! Finite abelian groups `ℤ^k / diag(d_1, …, d_k)`, their subgroups as
//! lattices between `diag(d)·ℤ^k` and `ℤ^k`, and homomorphisms given by
//! integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    diagonal_lattice, hnf, intersect_lattices, preimage_lattice, snf, sum_lattices, HnfBasis,
    IntMatrix,
};

/// Which side of the duality a group presentation lives on. The dual of a
/// finite group uses the same moduli; only the tag changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    moduli: Vec<BigInt>,
    side: Side,
}

impl FinAbGroup {
    pub fn new(moduli: Vec<BigInt>) -> Result<Self> {
        if let Some(bad) = moduli.iter().find(|d| **d < BigInt::one()) {
            return Err(Error::InvalidModulus(bad.to_string()));
        }
        Ok(FinAbGroup {
            moduli,
            side: Side::Primal,
        })
    }

    pub fn from_moduli(moduli: &[u64]) -> Result<Self> {
        Self::new(moduli.iter().map(|&d| BigInt::from(d)).collect())
    }

    /// `(ℤ/m)^k`
    pub fn homogeneous(m: u64, k: usize) -> Result<Self> {
        Self::from_moduli(&vec![m; k])
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_dual(&self) -> bool {
        self.side == Side::Dual
    }

    /// The Pontryagin dual, presented on the same moduli.
    pub fn dual(&self) -> FinAbGroup {
        FinAbGroup {
            moduli: self.moduli.clone(),
            side: self.side.flip(),
        }
    }

    pub fn order(&self) -> BigInt {
        self.moduli.iter().product()
    }

    /// Least common multiple of the moduli.
    pub fn exponent(&self) -> BigInt {
        self.moduli.iter().fold(BigInt::one(), |acc, d| acc.lcm(d))
    }

    pub fn relation_lattice(&self) -> HnfBasis {
        diagonal_lattice(&self.moduli)
    }

    /// Invariant factors `e_1 | e_2 | …` of the group, ones dropped.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        snf(&IntMatrix::diagonal(&self.moduli)).nontrivial_factors()
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        x.iter()
            .zip(&self.moduli)
            .map(|(a, d)| a.mod_floor(d))
            .collect()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    pub(crate) fn check_element(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in a rank-{} group",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            write!(f, "0")?;
        }
        for (i, d) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, " × ")?;
            }
            write!(f, "ℤ/{}", d)?;
        }
        if self.is_dual() {
            write!(f, " (dual)")?;
        }
        Ok(())
    }
}

/// A subgroup `H ≤ G`, stored as the canonical basis of its preimage lattice in ℤ^k.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SubgroupLattice {
    ambient: FinAbGroup,
    basis: HnfBasis,
}

impl SubgroupLattice {
    pub fn from_generators(g: &FinAbGroup, gens: &[Vec<BigInt>]) -> Result<Self> {
        for x in gens {
            g.check_element(x)?;
        }
        let mut cols: Vec<Vec<BigInt>> = gens.iter().map(|x| g.reduce(x)).collect();
        cols.extend(g.relation_lattice().matrix().columns());
        let basis = hnf(&IntMatrix::from_columns(g.rank(), &cols)?)?;
        Ok(SubgroupLattice {
            ambient: g.clone(),
            basis,
        })
    }

    pub fn from_i64_generators(g: &FinAbGroup, gens: &[&[i64]]) -> Result<Self> {
        let gens: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|x| x.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_generators(g, &gens)
    }

    /// Wraps a lattice basis; it must contain the relation lattice of `g`.
    pub fn from_basis(g: &FinAbGroup, basis: HnfBasis) -> Result<Self> {
        if basis.dim() != g.rank() || !basis.contains(&g.relation_lattice()) {
            return Err(Error::InvalidArgument(
                "basis does not contain the relation lattice".into(),
            ));
        }
        Ok(SubgroupLattice {
            ambient: g.clone(),
            basis,
        })
    }

    pub fn trivial(g: &FinAbGroup) -> Self {
        SubgroupLattice {
            ambient: g.clone(),
            basis: g.relation_lattice(),
        }
    }

    pub fn full(g: &FinAbGroup) -> Self {
        SubgroupLattice {
            ambient: g.clone(),
            basis: HnfBasis::standard(g.rank()),
        }
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn basis(&self) -> &HnfBasis {
        &self.basis
    }

    pub fn order(&self) -> BigInt {
        self.ambient.order() / self.basis.det()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis == self.ambient.relation_lattice()
    }

    pub fn is_full(&self) -> bool {
        self.basis.det().is_one()
    }

    /// Basis columns reduced into the group; together they generate the subgroup.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.basis
            .matrix()
            .columns()
            .into_iter()
            .map(|c| self.ambient.reduce(&c))
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect()
    }

    pub fn contains_element(&self, x: &[BigInt]) -> bool {
        x.len() == self.ambient.rank() && self.basis.contains_vector(x)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &SubgroupLattice) -> bool {
        self.ambient == other.ambient && self.basis.contains(&other.basis)
    }

    fn same_ambient(&self, other: &SubgroupLattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubgroupLattice) -> Result<SubgroupLattice> {
        self.same_ambient(other)?;
        Ok(SubgroupLattice {
            ambient: self.ambient.clone(),
            basis: sum_lattices(&self.basis, &other.basis)?,
        })
    }

    pub fn intersect(&self, other: &SubgroupLattice) -> Result<SubgroupLattice> {
        self.same_ambient(other)?;
        Ok(SubgroupLattice {
            ambient: self.ambient.clone(),
            basis: intersect_lattices(&self.basis, &other.basis)?,
        })
    }

    /// Coordinates of `inner`'s lattice in this lattice's basis; the quotient
    /// `self / inner` is the cokernel of the returned matrix.
    pub(crate) fn relative_presentation(&self, inner: &SubgroupLattice) -> Result<IntMatrix> {
        self.same_ambient(inner)?;
        self.basis.coordinates_of(&inner.basis)
    }

    /// Invariant factors of `self / inner`, ones dropped.
    pub fn quotient_invariants(&self, inner: &SubgroupLattice) -> Result<Vec<BigInt>> {
        Ok(snf(&self.relative_presentation(inner)?).nontrivial_factors())
    }
}

/// `[outer : inner]`, exact.
pub fn index(outer: &SubgroupLattice, inner: &SubgroupLattice) -> Result<BigInt> {
    outer.same_ambient(inner)?;
    if !outer.contains(inner) {
        return Err(Error::NotSubgroupPair);
    }
    Ok(inner.basis.det() / outer.basis.det())
}

/// Homomorphism `ℤ^k/diag(d) → ℤ^m/diag(e)` given by an `m × k` integer matrix.
///
/// Well-definedness requires `d_j · M[i][j] ≡ 0 (mod e_i)`; the matrix is
/// stored with row `i` reduced modulo `e_i`, so equal maps compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupHom {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(domain: &FinAbGroup, codomain: &FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.rank() || matrix.cols() != domain.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map from rank {} to rank {}",
                matrix.rows(),
                matrix.cols(),
                domain.rank(),
                codomain.rank()
            )));
        }
        let mut m = matrix;
        for i in 0..codomain.rank() {
            let e = &codomain.moduli[i];
            for j in 0..domain.rank() {
                if !(&domain.moduli[j] * &m[(i, j)]).is_multiple_of(e) {
                    return Err(Error::IncompatibleHom { row: i, col: j });
                }
                m[(i, j)] = m[(i, j)].mod_floor(e);
            }
        }
        Ok(GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: m,
        })
    }

    pub fn endo(g: &FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        Self::new(g, g, matrix)
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        Self::scalar(g, &BigInt::one())
    }

    /// Multiplication by `c`.
    pub fn scalar(g: &FinAbGroup, c: &BigInt) -> Self {
        Self::new(g, g, IntMatrix::identity(g.rank()).scale(c))
            .expect("scalar maps are always compatible")
    }

    pub fn zero(domain: &FinAbGroup, codomain: &FinAbGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.rank(), domain.rank()),
        }
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_endo(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.domain.check_element(x)?;
        Ok(self.codomain.reduce(&self.matrix.mul_vec(x)?))
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.codomain != self.domain {
            return Err(Error::AmbientMismatch);
        }
        GroupHom::new(
            &inner.domain,
            &self.codomain,
            self.matrix.mul(&inner.matrix)?,
        )
    }

    pub fn pow(&self, n: u32) -> Result<GroupHom> {
        if !self.is_endo() {
            return Err(Error::NotEndomorphism);
        }
        let mut out = GroupHom::identity(&self.domain);
        for _ in 0..n {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    pub fn image(&self, h: &SubgroupLattice) -> Result<SubgroupLattice> {
        if h.ambient != self.domain {
            return Err(Error::AmbientMismatch);
        }
        let mapped = self.matrix.mul(h.basis.matrix())?;
        let gens = mapped.hcat(self.codomain.relation_lattice().matrix())?;
        Ok(SubgroupLattice {
            ambient: self.codomain.clone(),
            basis: hnf(&gens)?,
        })
    }

    pub fn preimage(&self, h: &SubgroupLattice) -> Result<SubgroupLattice> {
        if h.ambient != self.codomain {
            return Err(Error::AmbientMismatch);
        }
        Ok(SubgroupLattice {
            ambient: self.domain.clone(),
            basis: preimage_lattice(&self.matrix, &h.basis)?,
        })
    }

    pub fn kernel(&self) -> Result<SubgroupLattice> {
        self.preimage(&SubgroupLattice::trivial(&self.codomain))
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image(&SubgroupLattice::full(&self.domain))?.is_full())
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.is_trivial())
    }

    /// Whether `f(h) ⊆ h`.
    pub fn leaves_invariant(&self, h: &SubgroupLattice) -> Result<bool> {
        Ok(h.contains(&self.image(h)?))
    }
}

/// `C_n(f, u) = u ∩ f⁻¹(u) ∩ … ∩ f^{-(n-1)}(u)`, built as `C_{k+1} = u ∩ f⁻¹(C_k)`.
pub fn cotrajectory(f: &GroupHom, u: &SubgroupLattice, n: usize) -> Result<SubgroupLattice> {
    Ok(cotrajectory_chain(f, u, n)?.pop().expect("n >= 1"))
}

/// `T_n(f, u) = u + f(u) + … + f^{n-1}(u)`, built as `T_{k+1} = u + f(T_k)`.
pub fn trajectory(f: &GroupHom, u: &SubgroupLattice, n: usize) -> Result<SubgroupLattice> {
    Ok(trajectory_chain(f, u, n)?.pop().expect("n >= 1"))
}

/// `[C_1, …, C_n]`
pub fn cotrajectory_chain(
    f: &GroupHom,
    u: &SubgroupLattice,
    n: usize,
) -> Result<Vec<SubgroupLattice>> {
    check_endo_steps(f, u, n)?;
    let mut out = vec![u.clone()];
    for _ in 1..n {
        let prev = out.last().expect("nonempty");
        let next = u.intersect(&f.preimage(prev)?)?;
        out.push(next);
    }
    Ok(out)
}

/// `[T_1, …, T_n]`
pub fn trajectory_chain(
    f: &GroupHom,
    u: &SubgroupLattice,
    n: usize,
) -> Result<Vec<SubgroupLattice>> {
    check_endo_steps(f, u, n)?;
    let mut out = vec![u.clone()];
    for _ in 1..n {
        let prev = out.last().expect("nonempty");
        let next = u.sum(&f.image(prev)?)?;
        out.push(next);
    }
    Ok(out)
}

fn check_endo_steps(f: &GroupHom, u: &SubgroupLattice, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroSteps);
    }
    if !f.is_endo() {
        return Err(Error::NotEndomorphism);
    }
    if u.ambient != f.domain {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}
