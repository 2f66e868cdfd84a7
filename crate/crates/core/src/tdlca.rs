//! Compact totally disconnected groups presented as truncated inverse
//! systems of finite abelian groups, and their discrete torsion duals.
//!
//! A tower `G_0 ← G_1 ← … ← G_K` carries a lag-`s` endomorphism given by maps
//! `f_k : G_{k+s} → G_k` with `π_k ∘ f_{k+1} = f_k ∘ π_{k+s}`. The compact open
//! subgroups offered are the projection kernels `U_j = ker(G → G_j)`.
//! Every per-`(j, n)` index is computed exactly inside a single finite level.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::duality::dual_hom;
use crate::error::{Error, Result};
use crate::fingroup::{index, FinAbGroup, GroupHom, SubgroupLattice};
use crate::linalg::{IntMatrix, QMatrix};
use crate::padic::is_prime;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProfiniteTower {
    levels: Vec<FinAbGroup>,
    projections: Vec<GroupHom>,
    lag: usize,
    endo_maps: Vec<GroupHom>,
}

impl ProfiniteTower {
    /// Validates shapes, surjectivity of every projection and commutativity
    /// of every square `π_k ∘ f_{k+1} = f_k ∘ π_{k+s}`.
    pub fn new(
        levels: Vec<FinAbGroup>,
        projections: Vec<GroupHom>,
        lag: usize,
        endo_maps: Vec<GroupHom>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidTower("no levels".into()));
        }
        if levels.iter().any(FinAbGroup::is_dual) {
            return Err(Error::InvalidTower("levels must be primal groups".into()));
        }
        let top = levels.len() - 1;
        if projections.len() != top {
            return Err(Error::InvalidTower(format!(
                "{} projections for {} levels",
                projections.len(),
                levels.len()
            )));
        }
        let expected_endos = (top + 1).saturating_sub(lag);
        if endo_maps.len() != expected_endos {
            return Err(Error::InvalidTower(format!(
                "{} endomorphism maps, expected {} for lag {}",
                endo_maps.len(),
                expected_endos,
                lag
            )));
        }
        for (k, p) in projections.iter().enumerate() {
            if p.domain() != &levels[k + 1] || p.codomain() != &levels[k] {
                return Err(Error::InvalidTower(format!(
                    "projection {k} has the wrong shape"
                )));
            }
            if !p.is_surjective()? {
                return Err(Error::InvalidTower(format!(
                    "projection {k} is not surjective"
                )));
            }
        }
        for (k, f) in endo_maps.iter().enumerate() {
            if f.domain() != &levels[k + lag] || f.codomain() != &levels[k] {
                return Err(Error::InvalidTower(format!(
                    "endomorphism map {k} has the wrong shape"
                )));
            }
        }
        for k in 0..endo_maps.len().saturating_sub(1) {
            let lhs = projections[k].compose(&endo_maps[k + 1])?;
            let rhs = endo_maps[k].compose(&projections[k + lag])?;
            if lhs != rhs {
                return Err(Error::InvalidTower(format!(
                    "square at level {k} does not commute"
                )));
            }
        }
        Ok(ProfiniteTower {
            levels,
            projections,
            lag,
            endo_maps,
        })
    }

    /// `(ℤ/m)^ℕ` with the one-sided shift: `G_k = (ℤ/m)^k`, projections drop
    /// the last coordinate, `f_k` drops the first.
    pub fn full_shift(m: u64, top: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "shift alphabet size {m} < 2"
            )));
        }
        if top < 2 {
            return Err(Error::InvalidArgument(format!(
                "shift tower needs at least 2 levels, got {top}"
            )));
        }
        let levels: Vec<FinAbGroup> = (0..=top)
            .map(|k| FinAbGroup::homogeneous(m, k))
            .collect::<Result<_>>()?;
        let mut projections = Vec::with_capacity(top);
        let mut endo_maps = Vec::with_capacity(top);
        for k in 0..top {
            let mut drop_last = IntMatrix::zeros(k, k + 1);
            let mut drop_first = IntMatrix::zeros(k, k + 1);
            for i in 0..k {
                drop_last[(i, i)] = BigInt::from(1);
                drop_first[(i, i + 1)] = BigInt::from(1);
            }
            projections.push(GroupHom::new(&levels[k + 1], &levels[k], drop_last)?);
            endo_maps.push(GroupHom::new(&levels[k + 1], &levels[k], drop_first)?);
        }
        Self::new(levels, projections, 1, endo_maps)
    }

    /// `ℤ_p^d = lim (ℤ/p^k)^d` with the endomorphism given by an integer matrix (lag 0).
    pub fn padic(p: u64, top: usize, matrix: &IntMatrix) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(
                "endomorphism matrix must be square".into(),
            ));
        }
        let d = matrix.rows();
        let pb = BigInt::from(p);
        let levels: Vec<FinAbGroup> = (0..=top)
            .map(|k| FinAbGroup::new(vec![pb.pow(k as u32); d]))
            .collect::<Result<_>>()?;
        let projections = (0..top)
            .map(|k| GroupHom::new(&levels[k + 1], &levels[k], IntMatrix::identity(d)))
            .collect::<Result<_>>()?;
        let endo_maps = levels
            .iter()
            .map(|g| GroupHom::endo(g, matrix.clone()))
            .collect::<Result<_>>()?;
        Self::new(levels, projections, 0, endo_maps)
    }

    pub fn levels(&self) -> &[FinAbGroup] {
        &self.levels
    }

    pub fn projections(&self) -> &[GroupHom] {
        &self.projections
    }

    pub fn endo_maps(&self) -> &[GroupHom] {
        &self.endo_maps
    }

    pub fn lag(&self) -> usize {
        self.lag
    }

    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// `G_from → G_to` for `from >= to`.
    pub fn projection_between(&self, from: usize, to: usize) -> Result<GroupHom> {
        if from < to || from > self.top_level() {
            return Err(Error::InvalidArgument(format!(
                "no projection from level {from} to {to}"
            )));
        }
        let mut out = GroupHom::identity(&self.levels[from]);
        for k in (to..from).rev() {
            out = self.projections[k].compose(&out)?;
        }
        Ok(out)
    }

    /// `U_j` seen inside `G_level`, i.e. `ker(G_level → G_j)`.
    pub fn base_subgroup(&self, j: usize, level: usize) -> Result<SubgroupLattice> {
        self.projection_between(level, j)?.kernel()
    }

    /// Smallest level at which `C_n(φ, U_j)` is the preimage of a subgroup.
    /// Lag-0 towers use `j + 1` when present so the kernel is visible.
    pub fn working_level(&self, j: usize, n: usize) -> usize {
        if self.lag == 0 {
            (j + 1).min(self.top_level()).max(j)
        } else {
            j + n.saturating_sub(1) * self.lag
        }
    }

    fn check_depth(&self, j: usize, n: usize, level: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroSteps);
        }
        let required = level.max(j + (n - 1) * self.lag);
        if required > self.top_level() {
            return Err(Error::TowerTooShort {
                base: j,
                steps: n,
                required,
                available: self.top_level(),
            });
        }
        Ok(())
    }

    /// `C_n(φ, U_j)` as a subgroup of `G_level`, built by
    /// `C_{k+1} = U_j ∩ φ⁻¹(C_k)` one lag step at a time.
    pub fn cotrajectory_subgroup(
        &self,
        j: usize,
        n: usize,
        level: usize,
    ) -> Result<SubgroupLattice> {
        self.check_depth(j, n, level)?;
        let mut lv = j;
        let mut c = SubgroupLattice::trivial(&self.levels[j]);
        for _ in 1..n {
            let pulled = self.endo_maps[lv].preimage(&c)?;
            lv += self.lag;
            c = self.base_subgroup(j, lv)?.intersect(&pulled)?;
        }
        self.projection_between(level, lv)?.preimage(&c)
    }

    /// `[U_j : C_n(φ, U_j)]` at the default working level.
    pub fn cotrajectory_index(&self, j: usize, n: usize) -> Result<BigInt> {
        self.cotrajectory_index_at(j, n, self.working_level(j, n))
    }

    pub fn cotrajectory_index_at(&self, j: usize, n: usize, level: usize) -> Result<BigInt> {
        let c = self.cotrajectory_subgroup(j, n, level)?;
        index(&self.base_subgroup(j, level)?, &c)
    }

    /// `[U_j : C_n]` for `n = 1..=count`.
    pub fn cotrajectory_indices(&self, j: usize, count: usize) -> Result<Vec<BigInt>> {
        (1..=count).map(|n| self.cotrajectory_index(j, n)).collect()
    }

    /// Re-presents every level through an automorphism `ξ_k` of `G_k` (given
    /// as a unimodular matrix): `π'_k = ξ_k π_k ξ_{k+1}⁻¹`, `f'_k = ξ_k f_k ξ_{k+s}⁻¹`.
    pub fn conjugate(&self, autos: &[IntMatrix]) -> Result<ProfiniteTower> {
        if autos.len() != self.levels.len() {
            return Err(Error::InvalidArgument(format!(
                "{} automorphisms for {} levels",
                autos.len(),
                self.levels.len()
            )));
        }
        let mut fwd = Vec::with_capacity(autos.len());
        let mut inv = Vec::with_capacity(autos.len());
        for (g, a) in self.levels.iter().zip(autos) {
            let a_inv = unimodular_inverse(a)?;
            fwd.push(GroupHom::endo(g, a.clone())?);
            inv.push(GroupHom::endo(g, a_inv)?);
        }
        let projections = self
            .projections
            .iter()
            .enumerate()
            .map(|(k, p)| fwd[k].compose(&p.compose(&inv[k + 1])?))
            .collect::<Result<_>>()?;
        let endo_maps = self
            .endo_maps
            .iter()
            .enumerate()
            .map(|(k, f)| fwd[k].compose(&f.compose(&inv[k + self.lag])?))
            .collect::<Result<_>>()?;
        ProfiniteTower::new(self.levels.clone(), projections, self.lag, endo_maps)
    }

    /// The Pontryagin dual direct system.
    pub fn dualize(&self) -> Result<TorsionColimit> {
        TorsionColimit::new(
            self.levels.iter().map(FinAbGroup::dual).collect(),
            self.projections.iter().map(dual_hom).collect(),
            self.lag,
            self.endo_maps.iter().map(dual_hom).collect(),
        )
    }
}

/// Integer inverse of a matrix with determinant ±1.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<IntMatrix> {
    if !a.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let inv = QMatrix::from_int(a).inverse().ok_or(Error::NotUnimodular)?;
    let entries = inv
        .entries()
        .iter()
        .map(|q| {
            debug_assert!(q.is_integer());
            q.to_integer()
        })
        .collect();
    IntMatrix::from_vec(a.rows(), a.cols(), entries)
}

/// Direct system `Ĝ_0 → Ĝ_1 → …` of finite dual groups with dual maps
/// `f̂_k : Ĝ_k → Ĝ_{k+s}`; its union is the discrete torsion dual of a tower.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TorsionColimit {
    levels: Vec<FinAbGroup>,
    inclusions: Vec<GroupHom>,
    lag: usize,
    endo_maps: Vec<GroupHom>,
}

impl TorsionColimit {
    pub fn new(
        levels: Vec<FinAbGroup>,
        inclusions: Vec<GroupHom>,
        lag: usize,
        endo_maps: Vec<GroupHom>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidTower("no levels".into()));
        }
        let top = levels.len() - 1;
        if inclusions.len() != top || endo_maps.len() != (top + 1).saturating_sub(lag) {
            return Err(Error::InvalidTower("wrong number of maps".into()));
        }
        for (k, i) in inclusions.iter().enumerate() {
            if i.domain() != &levels[k] || i.codomain() != &levels[k + 1] {
                return Err(Error::InvalidTower(format!(
                    "inclusion {k} has the wrong shape"
                )));
            }
            if !i.is_injective()? {
                return Err(Error::InvalidTower(format!(
                    "inclusion {k} is not injective"
                )));
            }
        }
        for (k, f) in endo_maps.iter().enumerate() {
            if f.domain() != &levels[k] || f.codomain() != &levels[k + lag] {
                return Err(Error::InvalidTower(format!(
                    "endomorphism map {k} has the wrong shape"
                )));
            }
        }
        for k in 0..endo_maps.len().saturating_sub(1) {
            let lhs = endo_maps[k + 1].compose(&inclusions[k])?;
            let rhs = inclusions[k + lag].compose(&endo_maps[k])?;
            if lhs != rhs {
                return Err(Error::InvalidTower(format!(
                    "square at level {k} does not commute"
                )));
            }
        }
        Ok(TorsionColimit {
            levels,
            inclusions,
            lag,
            endo_maps,
        })
    }

    pub fn levels(&self) -> &[FinAbGroup] {
        &self.levels
    }

    pub fn inclusions(&self) -> &[GroupHom] {
        &self.inclusions
    }

    pub fn endo_maps(&self) -> &[GroupHom] {
        &self.endo_maps
    }

    pub fn lag(&self) -> usize {
        self.lag
    }

    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// `Ĝ_from → Ĝ_to` for `from <= to`.
    pub fn inclusion_between(&self, from: usize, to: usize) -> Result<GroupHom> {
        if from > to || to > self.top_level() {
            return Err(Error::InvalidArgument(format!(
                "no inclusion from level {from} to {to}"
            )));
        }
        let mut out = GroupHom::identity(&self.levels[from]);
        for k in from..to {
            out = self.inclusions[k].compose(&out)?;
        }
        Ok(out)
    }

    /// `U_j^⊥`, the image of `Ĝ_j`, inside `Ĝ_level`.
    pub fn base_subgroup(&self, j: usize, level: usize) -> Result<SubgroupLattice> {
        self.inclusion_between(j, level)?
            .image(&SubgroupLattice::full(&self.levels[j]))
    }

    pub fn working_level(&self, j: usize, n: usize) -> usize {
        if self.lag == 0 {
            (j + 1).min(self.top_level()).max(j)
        } else {
            j + n.saturating_sub(1) * self.lag
        }
    }

    fn check_depth(&self, j: usize, n: usize, level: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroSteps);
        }
        let required = level.max(j + (n - 1) * self.lag);
        if required > self.top_level() {
            return Err(Error::TowerTooShort {
                base: j,
                steps: n,
                required,
                available: self.top_level(),
            });
        }
        Ok(())
    }

    /// `T_n(φ̂, U_j^⊥)` inside `Ĝ_level`, built by `T_{k+1} = U_j^⊥ + φ̂(T_k)`.
    pub fn trajectory_subgroup(&self, j: usize, n: usize, level: usize) -> Result<SubgroupLattice> {
        self.check_depth(j, n, level)?;
        let mut lv = j;
        let mut t = SubgroupLattice::full(&self.levels[j]);
        for _ in 1..n {
            let pushed = self.endo_maps[lv].image(&t)?;
            lv += self.lag;
            t = self.base_subgroup(j, lv)?.sum(&pushed)?;
        }
        self.inclusion_between(lv, level)?.image(&t)
    }

    /// `[T_n(φ̂, U_j^⊥) : U_j^⊥]` at the default working level.
    pub fn trajectory_index(&self, j: usize, n: usize) -> Result<BigInt> {
        self.trajectory_index_at(j, n, self.working_level(j, n))
    }

    pub fn trajectory_index_at(&self, j: usize, n: usize, level: usize) -> Result<BigInt> {
        let t = self.trajectory_subgroup(j, n, level)?;
        index(&t, &self.base_subgroup(j, level)?)
    }

    pub fn trajectory_indices(&self, j: usize, count: usize) -> Result<Vec<BigInt>> {
        (1..=count).map(|n| self.trajectory_index(j, n)).collect()
    }

    /// Dual of the dual: the inverse system again.
    pub fn dualize(&self) -> Result<ProfiniteTower> {
        ProfiniteTower::new(
            self.levels.iter().map(FinAbGroup::dual).collect(),
            self.inclusions.iter().map(dual_hom).collect(),
            self.lag,
            self.endo_maps.iter().map(dual_hom).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::annihilator;
    use crate::oracle;
    use num_traits::One;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn full_shift_construction() {
        let t = ProfiniteTower::full_shift(2, 4).unwrap();
        let ranks: Vec<usize> = t.levels().iter().map(FinAbGroup::rank).collect();
        assert_eq!(ranks, vec![0, 1, 2, 3, 4]);
        assert!(t.projections()[1].is_surjective().unwrap());
        // squares checked against element enumeration on every level
        for k in 0..3 {
            let g = &t.levels()[k + 2];
            for x in oracle::all_elements(g) {
                let lhs = oracle::apply(
                    &t.projections()[k],
                    &oracle::apply(&t.endo_maps()[k + 1], &x),
                );
                let rhs = oracle::apply(
                    &t.endo_maps()[k],
                    &oracle::apply(&t.projections()[k + 1], &x),
                );
                assert_eq!(lhs, rhs);
            }
        }
        assert!(ProfiniteTower::full_shift(1, 4).is_err());
        assert!(ProfiniteTower::full_shift(2, 1).is_err());
    }

    #[test]
    fn shift_cotrajectory_indices() {
        let t = ProfiniteTower::full_shift(2, 6).unwrap();
        assert_eq!(t.cotrajectory_indices(1, 4).unwrap(), big(&[1, 2, 4, 8]));
        // C_n = {x : x_0 = … = x_{n-1} = 0}: count cosets inside G_4 directly
        let g4 = &t.levels()[4];
        let u: oracle::ElementSet = oracle::all_elements(g4)
            .into_iter()
            .filter(|x| x[0] == 0)
            .collect();
        let c3: oracle::ElementSet = u
            .iter()
            .filter(|x| x[1] == 0 && x[2] == 0)
            .cloned()
            .collect();
        assert_eq!(u.len() / c3.len(), 4);
        assert_eq!(t.cotrajectory_index(3, 1).unwrap(), BigInt::one());
    }

    #[test]
    fn padic_towers() {
        let t = ProfiniteTower::padic(2, 5, &IntMatrix::from_rows(&[[3]])).unwrap();
        for n in 1..5 {
            assert_eq!(t.cotrajectory_index_at(1, n, 5).unwrap(), BigInt::one());
        }
        assert!(ProfiniteTower::padic(3, 4, &IntMatrix::from_rows(&[[1, 1], [0, 1]])).is_ok());
        let t = ProfiniteTower::padic(2, 5, &IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(t.cotrajectory_indices(1, 4).unwrap(), big(&[1, 1, 1, 1]));
        assert_eq!(
            ProfiniteTower::padic(4, 3, &IntMatrix::identity(1)),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn short_tower_is_reported() {
        let t = ProfiniteTower::full_shift(2, 4).unwrap();
        let err = t.cotrajectory_index(1, 5).unwrap_err();
        assert_eq!(
            err,
            Error::TowerTooShort {
                base: 1,
                steps: 5,
                required: 5,
                available: 4
            }
        );
        assert!(err
            .to_string()
            .starts_with("tower too short for (j=1, n=5)"));
        assert!(t.dualize().unwrap().trajectory_index(1, 5).is_err());
    }

    #[test]
    fn dual_system_of_the_shift() {
        let t = ProfiniteTower::full_shift(2, 4).unwrap();
        let d = t.dualize().unwrap();
        assert!(d.inclusions().iter().all(|i| i.is_injective().unwrap()));
        assert_eq!(d.trajectory_indices(1, 4).unwrap(), big(&[1, 2, 4, 8]));
        assert_eq!(d.dualize().unwrap(), t);
    }

    #[test]
    fn dual_of_padic_unit_tower() {
        let t = ProfiniteTower::padic(2, 5, &IntMatrix::from_rows(&[[3]])).unwrap();
        let d = t.dualize().unwrap();
        for n in 1..5 {
            assert_eq!(d.trajectory_index_at(1, n, 4).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn single_level_tower() {
        let g = FinAbGroup::from_moduli(&[2]).unwrap();
        let t =
            ProfiniteTower::new(vec![g.clone()], vec![], 0, vec![GroupHom::identity(&g)]).unwrap();
        assert_eq!(t.cotrajectory_index(0, 1).unwrap(), BigInt::one());
        let d = t.dualize().unwrap();
        assert_eq!(d.levels().len(), 1);
        assert_eq!(d.trajectory_index(0, 1).unwrap(), BigInt::one());
    }

    #[test]
    fn cotrajectory_annihilator_is_trajectory() {
        let t = ProfiniteTower::full_shift(3, 6).unwrap();
        let d = t.dualize().unwrap();
        for n in 1..=4 {
            let l = t.working_level(1, n);
            let c = t.cotrajectory_subgroup(1, n, l).unwrap();
            assert_eq!(
                annihilator(&c).unwrap(),
                d.trajectory_subgroup(1, n, l).unwrap()
            );
        }
    }

    #[test]
    fn level_stability() {
        let t = ProfiniteTower::full_shift(2, 7).unwrap();
        let d = t.dualize().unwrap();
        for level in 4..=7 {
            assert_eq!(
                t.cotrajectory_index_at(1, 4, level).unwrap(),
                BigInt::from(8)
            );
            assert_eq!(d.trajectory_index_at(1, 4, level).unwrap(), BigInt::from(8));
        }
    }

    #[test]
    fn conjugation_keeps_indices() {
        let t = ProfiniteTower::full_shift(3, 5).unwrap();
        let autos: Vec<IntMatrix> = (0..=5)
            .map(|k| {
                let mut a = IntMatrix::identity(k);
                if k >= 2 {
                    a[(0, 1)] = BigInt::from(2);
                }
                if k >= 3 {
                    a[(k - 1, 0)] = BigInt::from(-1);
                }
                a
            })
            .collect();
        let c = t.conjugate(&autos).unwrap();
        assert_ne!(c, t);
        for n in 1..=5 {
            assert_eq!(
                c.cotrajectory_index(1, n).unwrap(),
                t.cotrajectory_index(1, n).unwrap()
            );
        }
        let mut bad = autos.clone();
        bad[2] = IntMatrix::from_rows(&[[2, 0], [0, 1]]);
        assert_eq!(t.conjugate(&bad), Err(Error::NotUnimodular));
    }

    #[test]
    fn broken_tower_rejected() {
        let t = ProfiniteTower::full_shift(2, 3).unwrap();
        let mut endos = t.endo_maps().to_vec();
        endos[1] = GroupHom::new(
            &t.levels()[2],
            &t.levels()[1],
            IntMatrix::from_rows(&[[1, 0]]),
        )
        .unwrap();
        let err = ProfiniteTower::new(t.levels().to_vec(), t.projections().to_vec(), 1, endos)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidTower(_)));
    }
}
