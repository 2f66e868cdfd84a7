//! ℚ_p^d as a totally disconnected group: ℤ_p-lattices with exact rational
//! bases, cotrajectory and trajectory indices for invertible matrices, and
//! the Newton-polygon closed form for entropy.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::entropyseq::{IndexSequence, LogRatio};
use crate::error::{Error, Result};
use crate::linalg::{hnf, intersect_lattices, snf, HnfBasis, IntMatrix, QMatrix};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `v_p(x)` for nonzero `x`.
pub fn valuation_int(x: &BigInt, p: u64) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// `v_p(q)` for nonzero `q`.
pub fn valuation(q: &BigRational, p: u64) -> i64 {
    valuation_int(q.numer(), p) - valuation_int(q.denom(), p)
}

/// Strips every factor of `p` from `x`.
fn coprime_part(x: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let mut x = x.abs();
    while (&x % &pb).is_zero() {
        x /= &pb;
    }
    x
}

fn p_power(p: u64, e: i64) -> BigRational {
    let pe = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(pe)
    } else {
        BigRational::new(BigInt::one(), pe)
    }
}

/// A full-rank ℤ_p-lattice in ℚ_p^d, stored canonically as `p^{-shift} · H`
/// where `shift` is minimal with `p^shift L ⊆ ℤ_p^d` and `H` is the integer
/// HNF of the matching lattice of p-power index in ℤ^d.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PLattice {
    p: u64,
    shift: i64,
    hnf: HnfBasis,
}

impl PLattice {
    pub fn from_generators(p: u64, dim: usize, gens: &[Vec<BigRational>]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if gens.iter().any(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "generators must have length {dim}"
            )));
        }
        // Multiplying a generator by a p-adic unit leaves the lattice unchanged,
        // so the non-p part of every denominator can be cleared.
        let cleared: Vec<Vec<BigRational>> = gens
            .iter()
            .map(|g| {
                let unit = g
                    .iter()
                    .fold(BigInt::one(), |acc, q| acc.lcm(&coprime_part(q.denom(), p)));
                g.iter()
                    .map(|q| q * BigRational::from_integer(unit.clone()))
                    .collect()
            })
            .collect();
        let shift = cleared
            .iter()
            .flatten()
            .filter(|q| !q.is_zero())
            .map(|q| -valuation(q, p))
            .max()
            .ok_or(Error::LatticeNotFullRank)?;
        let scale = p_power(p, shift);
        let columns: Vec<Vec<BigInt>> = cleared
            .iter()
            .map(|g| {
                g.iter()
                    .map(|q| {
                        let s = q * &scale;
                        debug_assert!(s.is_integer());
                        s.to_integer()
                    })
                    .collect()
            })
            .collect();
        let n = IntMatrix::from_columns(dim, &columns)?;
        let e: i64 = {
            let s = snf(&n);
            if s.diag.len() < dim || s.diag.iter().any(Zero::is_zero) {
                return Err(Error::LatticeNotFullRank);
            }
            s.diag.iter().map(|x| valuation_int(x, p)).sum()
        };
        let pe = BigInt::from(p).pow(e as u32);
        let gens = n.hcat(&IntMatrix::diagonal(&vec![pe; dim]))?;
        Ok(PLattice {
            p,
            shift,
            hnf: hnf(&gens)?,
        })
    }

    /// `ℤ_p^d`.
    pub fn standard(p: u64, dim: usize) -> Result<Self> {
        Self::scaled_standard(p, dim, 0)
    }

    /// `p^k ℤ_p^d`.
    pub fn scaled_standard(p: u64, dim: usize, k: i64) -> Result<Self> {
        let gens: Vec<Vec<BigRational>> = (0..dim)
            .map(|i| {
                let mut v = vec![BigRational::zero(); dim];
                v[i] = p_power(p, k);
                v
            })
            .collect();
        Self::from_generators(p, dim, &gens)
    }

    pub fn from_basis(p: u64, basis: &QMatrix) -> Result<Self> {
        Self::from_generators(p, basis.rows(), &basis.columns())
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.hnf.dim()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn integer_basis(&self) -> &HnfBasis {
        &self.hnf
    }

    /// Canonical rational basis `p^{-shift} · H`.
    pub fn basis(&self) -> QMatrix {
        let scale = p_power(self.p, -self.shift);
        let cols: Vec<Vec<BigRational>> = self
            .hnf
            .matrix()
            .columns()
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|x| BigRational::from_integer(x) * &scale)
                    .collect()
            })
            .collect();
        QMatrix::from_columns(self.dim(), &cols).expect("square basis")
    }

    /// `v_p` of the covolume; `[L : M] = p^{covolume(M) − covolume(L)}`.
    pub fn covolume_valuation(&self) -> i64 {
        valuation_int(&self.hnf.det(), self.p) - self.dim() as i64 * self.shift
    }

    fn check_compatible(&self, other: &PLattice) -> Result<()> {
        if self.p != other.p {
            return Err(Error::MixedPrimes(self.p, other.p));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "lattices of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    /// Both lattices as integer lattices after scaling by a common `p^t`.
    fn common_scale(&self, other: &PLattice) -> (i64, HnfBasis, HnfBasis) {
        let t = self.shift.max(other.shift);
        let lift = |l: &PLattice| {
            let c = BigInt::from(l.p).pow((t - l.shift) as u32);
            hnf(&l.hnf.matrix().scale(&c)).expect("scaled full-rank lattice")
        };
        (t, lift(self), lift(other))
    }

    fn from_scaled(p: u64, t: i64, m: &HnfBasis) -> Result<Self> {
        let scale = p_power(p, -t);
        let cols: Vec<Vec<BigRational>> = m
            .matrix()
            .columns()
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|x| BigRational::from_integer(x) * &scale)
                    .collect()
            })
            .collect();
        Self::from_generators(p, m.dim(), &cols)
    }

    pub fn sum(&self, other: &PLattice) -> Result<PLattice> {
        self.check_compatible(other)?;
        let mut gens = self.basis().columns();
        gens.extend(other.basis().columns());
        Self::from_generators(self.p, self.dim(), &gens)
    }

    pub fn intersect(&self, other: &PLattice) -> Result<PLattice> {
        self.check_compatible(other)?;
        let (t, a, b) = self.common_scale(other);
        Self::from_scaled(self.p, t, &intersect_lattices(&a, &b)?)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &PLattice) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(&self.sum(other)? == self)
    }

    /// `{A x : x ∈ L}`; `A` must be invertible.
    pub fn transform(&self, a: &QMatrix) -> Result<PLattice> {
        if a.rows() != self.dim() || a.cols() != self.dim() {
            return Err(Error::DimensionMismatch(
                "transform matrix has the wrong shape".into(),
            ));
        }
        let cols: Vec<Vec<BigRational>> = self
            .basis()
            .columns()
            .iter()
            .map(|c| a.mul_vec(c))
            .collect();
        Self::from_generators(self.p, self.dim(), &cols)
    }

    /// `{x : A x ∈ L}` for invertible `A`.
    pub fn preimage(&self, a: &QMatrix) -> Result<PLattice> {
        let inv = a.inverse().ok_or(Error::SingularEndomorphism)?;
        self.transform(&inv)
    }
}

/// `[outer : inner]`, an exact power of `p`.
pub fn lattice_index(outer: &PLattice, inner: &PLattice) -> Result<BigInt> {
    if !outer.contains(inner)? {
        return Err(Error::NotSubgroupPair);
    }
    let e = inner.covolume_valuation() - outer.covolume_valuation();
    Ok(BigInt::from(outer.p).pow(e as u32))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PadicEndo {
    p: u64,
    matrix: QMatrix,
}

impl PadicEndo {
    pub fn new(p: u64, matrix: QMatrix) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if matrix.rows() != matrix.cols() || matrix.rows() == 0 {
            return Err(Error::DimensionMismatch(
                "endomorphism matrix must be square and nonempty".into(),
            ));
        }
        Ok(PadicEndo { p, matrix })
    }

    /// Multiplication by `c` on ℚ_p.
    pub fn scalar(p: u64, c: BigRational) -> Result<Self> {
        Self::new(p, QMatrix::scalar(1, c))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    /// The dual endomorphism of ℚ_p^d under the standard self-duality.
    pub fn transpose(&self) -> PadicEndo {
        PadicEndo {
            p: self.p,
            matrix: self.matrix.transpose(),
        }
    }

    fn check_lattice(&self, u: &PLattice) -> Result<()> {
        if u.prime() != self.p {
            return Err(Error::MixedPrimes(self.p, u.prime()));
        }
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch(
                "lattice and endomorphism dimensions differ".into(),
            ));
        }
        Ok(())
    }
}

/// `[U : C_n(φ, U)]` for `n = 1..=count`, via `C_{n+1} = U ∩ φ⁻¹(C_n)`.
pub fn cotrajectory_index_seq(
    phi: &PadicEndo,
    u: &PLattice,
    count: usize,
) -> Result<IndexSequence> {
    phi.check_lattice(u)?;
    let inv = phi.matrix.inverse().ok_or(Error::SingularEndomorphism)?;
    let mut c = u.clone();
    let mut out = Vec::with_capacity(count);
    for n in 1..=count {
        if n > 1 {
            c = u.intersect(&c.transform(&inv)?)?;
        }
        out.push(lattice_index(u, &c)?);
    }
    IndexSequence::new(out)
}

/// `[T_n(φ, U) : U]` for `n = 1..=count`, via `T_{n+1} = U + φ(T_n)`.
pub fn trajectory_index_seq(phi: &PadicEndo, u: &PLattice, count: usize) -> Result<IndexSequence> {
    phi.check_lattice(u)?;
    if phi.matrix.inverse().is_none() {
        return Err(Error::SingularEndomorphism);
    }
    let mut t = u.clone();
    let mut out = Vec::with_capacity(count);
    for n in 1..=count {
        if n > 1 {
            t = u.sum(&t.transform(&phi.matrix)?)?;
        }
        out.push(lattice_index(&t, u)?);
    }
    IndexSequence::new(out)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NewtonSegment {
    pub start: (usize, i64),
    pub end: (usize, i64),
}

impl NewtonSegment {
    pub fn length(&self) -> usize {
        self.end.0 - self.start.0
    }

    pub fn slope(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.end.1 - self.start.1),
            BigInt::from(self.length() as i64),
        )
    }
}

/// Lower convex hull of `(i, v_p(a_i))` over the nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub p: u64,
    pub points: Vec<(usize, i64)>,
    pub segments: Vec<NewtonSegment>,
}

impl NewtonPolygon {
    /// `coeffs` are ascending, `coeffs[i]` multiplying `x^i`.
    pub fn new(p: u64, coeffs: &[BigRational]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let points: Vec<(usize, i64)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i, valuation(a, p)))
            .collect();
        let mut hull: Vec<(usize, i64)> = Vec::new();
        for &pt in &points {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                // drop b unless it lies strictly below the chord a → pt
                let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                    - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| NewtonSegment {
                start: w[0],
                end: w[1],
            })
            .collect();
        Ok(NewtonPolygon {
            p,
            points,
            segments,
        })
    }

    /// Root valuations with multiplicity: each segment of slope `s` and
    /// length `ℓ` contributes `ℓ` roots of valuation `−s`. Zero roots are omitted.
    pub fn root_valuations(&self) -> Vec<BigRational> {
        self.segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(-s.slope(), s.length()))
            .collect()
    }
}

/// An exact multiple `coefficient · log p`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PadicEntropy {
    pub p: u64,
    pub coefficient: BigRational,
}

impl PadicEntropy {
    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN) * (self.p as f64).ln()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// Whether `log r` equals this value, i.e. `r^den = p^num`.
    pub fn equals_log_of(&self, r: &BigInt) -> bool {
        compare_with_log_ratio(
            self,
            &LogRatio {
                index: r.clone(),
                steps: 1,
            },
        ) == Ordering::Equal
    }
}

impl fmt::Display for PadicEntropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coefficient;
        if c.is_zero() {
            write!(f, "0")
        } else if c.is_one() {
            write!(f, "log {}", self.p)
        } else if c.is_integer() {
            write!(f, "{} log {}", c.numer(), self.p)
        } else {
            write!(f, "({}/{}) log {}", c.numer(), c.denom(), self.p)
        }
    }
}

/// Orders `coefficient · log p` against `log(index)/steps` exactly.
pub fn compare_with_log_ratio(h: &PadicEntropy, r: &LogRatio) -> Ordering {
    // (a/b) log p vs log(x)/n  ⇔  p^{a n} vs x^b   (b > 0)
    let a = h.coefficient.numer();
    let b = h.coefficient.denom();
    let n = BigInt::from(r.steps as u64);
    let exp = a * n;
    let b = b.to_u32().expect("small denominator");
    let rhs = r.index.pow(b);
    if exp.is_negative() {
        // p^{-k} < 1 ≤ x^b
        return Ordering::Less;
    }
    let lhs = BigInt::from(h.p).pow(exp.to_u32().expect("small exponent"));
    lhs.cmp(&rhs)
}

/// `Σ_{|λ|_p > 1} log |λ|_p` read off the Newton polygon of the characteristic polynomial.
pub fn newton_entropy(phi: &PadicEndo) -> Result<PadicEntropy> {
    let poly = newton_polygon(phi)?;
    let coefficient = poly
        .root_valuations()
        .into_iter()
        .filter(|v| v.is_negative())
        .fold(BigRational::zero(), |acc, v| acc - v);
    Ok(PadicEntropy {
        p: phi.p,
        coefficient,
    })
}

pub fn newton_polygon(phi: &PadicEndo) -> Result<NewtonPolygon> {
    NewtonPolygon::new(phi.p, &phi.matrix.charpoly()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropyseq::{estimate, EstimateStatus};

    fn q(s: &str) -> BigRational {
        crate::linalg::parse_rational(s).unwrap()
    }

    fn qm(rows: &[&[&str]]) -> QMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        QMatrix::parse_rows(&rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primes_and_valuations() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(91));
        assert_eq!(valuation(&q("12"), 2), 2);
        assert_eq!(valuation(&q("-3/8"), 2), -3);
        assert_eq!(valuation(&q("5/3"), 3), -1);
    }

    #[test]
    fn lattice_examples() {
        let z2 = PLattice::standard(2, 1).unwrap();
        assert_eq!(lattice_index(&z2, &z2).unwrap(), BigInt::one());
        let four = PLattice::scaled_standard(2, 1, 2).unwrap();
        assert_eq!(lattice_index(&z2, &four).unwrap(), BigInt::from(4));
        assert!(lattice_index(&four, &z2).is_err());

        let plane = PLattice::standard(2, 2).unwrap();
        let l = PLattice::from_basis(2, &qm(&[&["1", "0"], &["0", "1/2"]])).unwrap();
        assert_eq!(plane.intersect(&l).unwrap(), plane);
        assert_eq!(plane.sum(&l).unwrap(), l);
        assert_eq!(lattice_index(&l, &plane).unwrap(), BigInt::from(2));
    }

    #[test]
    fn canonical_form_ignores_units_and_presentation() {
        let a = PLattice::from_basis(3, &qm(&[&["1/3", "1"], &["0", "3"]])).unwrap();
        let b = PLattice::from_basis(3, &qm(&[&["2/3", "1/3"], &["3/5", "3"]])).unwrap();
        let c = PLattice::from_basis(3, &qm(&[&["1/3", "0"], &["0", "3"]])).unwrap();
        assert_eq!(a.covolume_valuation(), 0);
        assert_eq!(c.covolume_valuation(), 0);
        assert_eq!(a, c);
        assert!(a.contains(&c).unwrap());
        assert_eq!(b.shift(), 1);
        assert_eq!(PLattice::scaled_standard(5, 2, -3).unwrap().shift(), 3);
        assert_eq!(PLattice::scaled_standard(5, 2, 3).unwrap().shift(), -3);
    }

    #[test]
    fn mixed_primes_rejected() {
        let a = PLattice::standard(2, 1).unwrap();
        let b = PLattice::standard(3, 1).unwrap();
        assert_eq!(a.sum(&b), Err(Error::MixedPrimes(2, 3)));
        assert!(PLattice::standard(6, 1).is_err());
        assert_eq!(
            PLattice::from_basis(2, &qm(&[&["1", "2"], &["2", "4"]])),
            Err(Error::LatticeNotFullRank)
        );
    }

    #[test]
    fn index_sequences_for_scalars() {
        for p in [2u64, 3, 5] {
            let u = PLattice::standard(p, 1).unwrap();
            let mult_p = PadicEndo::scalar(p, BigRational::from_integer(BigInt::from(p))).unwrap();
            assert!(cotrajectory_index_seq(&mult_p, &u, 5)
                .unwrap()
                .indices()
                .iter()
                .all(One::is_one));
            let inv_p = PadicEndo::scalar(p, BigRational::new(1.into(), p.into())).unwrap();
            let expected: Vec<BigInt> = (0..5).map(|k| BigInt::from(p).pow(k)).collect();
            assert_eq!(
                cotrajectory_index_seq(&inv_p, &u, 5).unwrap().indices(),
                &expected[..]
            );
            assert_eq!(
                trajectory_index_seq(&inv_p.transpose(), &u, 5)
                    .unwrap()
                    .indices(),
                &expected[..]
            );
            let id = PadicEndo::new(p, QMatrix::identity(2)).unwrap();
            let u2 = PLattice::standard(p, 2).unwrap();
            assert!(cotrajectory_index_seq(&id, &u2, 4)
                .unwrap()
                .indices()
                .iter()
                .all(One::is_one));
        }
    }

    #[test]
    fn singular_matrices_rejected() {
        let phi = PadicEndo::new(2, qm(&[&["1", "2"], &["1", "2"]])).unwrap();
        let u = PLattice::standard(2, 2).unwrap();
        let err = cotrajectory_index_seq(&phi, &u, 3).unwrap_err();
        assert_eq!(err.to_string(), "v1 requires invertible endomorphism");
        assert!(trajectory_index_seq(&phi, &u, 3).is_err());
        assert_eq!(
            newton_entropy(&phi).unwrap().coefficient,
            BigRational::zero()
        );
    }

    #[test]
    fn newton_sign_convention() {
        // x − p has the root p of valuation +1, x − 1/p the root 1/p of valuation −1.
        for p in [2u64, 3, 5] {
            let pq = BigRational::from_integer(BigInt::from(p));
            let poly = NewtonPolygon::new(p, &[-pq.clone(), BigRational::one()]).unwrap();
            assert_eq!(poly.root_valuations(), vec![BigRational::one()]);
            let poly = NewtonPolygon::new(p, &[-pq.recip(), BigRational::one()]).unwrap();
            assert_eq!(poly.root_valuations(), vec![-BigRational::one()]);

            let inv_p = PadicEndo::scalar(p, pq.recip()).unwrap();
            let h = newton_entropy(&inv_p).unwrap();
            assert_eq!(h.to_string(), format!("log {p}"));
            assert!(h.equals_log_of(&BigInt::from(p)));
            assert!(newton_entropy(&PadicEndo::scalar(p, pq).unwrap())
                .unwrap()
                .is_zero());
            assert!(
                newton_entropy(&PadicEndo::new(p, QMatrix::identity(3)).unwrap())
                    .unwrap()
                    .is_zero()
            );
        }
    }

    #[test]
    fn newton_polygon_of_diag_half_two() {
        let phi = PadicEndo::new(2, qm(&[&["1/2", "0"], &["0", "2"]])).unwrap();
        let poly = newton_polygon(&phi).unwrap();
        assert_eq!(poly.points, vec![(0, 0), (1, -1), (2, 0)]);
        assert_eq!(poly.segments.len(), 2);
        let h = newton_entropy(&phi).unwrap();
        assert_eq!(h.to_string(), "log 2");
        let seq = cotrajectory_index_seq(&phi, &PLattice::standard(2, 2).unwrap(), 6).unwrap();
        assert_eq!(seq.indices(), &big(&[1, 2, 4, 8, 16, 32])[..]);
        let est = estimate(&seq, 3).unwrap();
        assert_eq!(est.status, EstimateStatus::Stabilized);
        assert!(h.equals_log_of(est.stabilized.as_ref().unwrap()));
    }

    #[test]
    fn fractional_slopes() {
        // x² − 1/2: two roots of valuation −1/2 over ℚ_2
        let phi = PadicEndo::new(2, qm(&[&["0", "1/2"], &["1", "0"]])).unwrap();
        let h = newton_entropy(&phi).unwrap();
        assert_eq!(h.coefficient, BigRational::one());
        let phi = PadicEndo::new(2, qm(&[&["0", "1/2"], &["1", "1"]])).unwrap();
        let poly = newton_polygon(&phi).unwrap();
        assert_eq!(poly.root_valuations().len(), 2);
        let x3 = NewtonPolygon::new(3, &[q("1/3"), q("0"), q("0"), q("1")]).unwrap();
        assert_eq!(x3.root_valuations(), vec![q("-1/3"); 3]);
    }

    #[test]
    fn exact_comparison_with_log_ratios() {
        let h = PadicEntropy {
            p: 2,
            coefficient: q("3/2"),
        };
        assert_eq!(
            compare_with_log_ratio(
                &h,
                &LogRatio {
                    index: 8.into(),
                    steps: 2
                }
            ),
            Ordering::Equal
        );
        assert_eq!(
            compare_with_log_ratio(
                &h,
                &LogRatio {
                    index: 9.into(),
                    steps: 2
                }
            ),
            Ordering::Less
        );
        assert_eq!(
            compare_with_log_ratio(
                &h,
                &LogRatio {
                    index: 7.into(),
                    steps: 2
                }
            ),
            Ordering::Greater
        );
        assert_eq!(h.to_string(), "(3/2) log 2");
    }

    #[test]
    fn transpose_bridge() {
        let phi = PadicEndo::new(3, qm(&[&["1/3", "2"], &["1", "9"]])).unwrap();
        let u = PLattice::standard(3, 2).unwrap();
        let cot = cotrajectory_index_seq(&phi, &u, 6).unwrap();
        let tr = trajectory_index_seq(&phi.transpose(), &u, 6).unwrap();
        assert_eq!(cot, tr);
        assert_eq!(
            newton_entropy(&phi).unwrap(),
            newton_entropy(&phi.transpose()).unwrap()
        );
    }
}
