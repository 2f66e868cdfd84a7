//! Seeded random instances for the randomized verification suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fingroup::{FinAbGroup, GroupHom, SubgroupLattice};
use crate::linalg::{IntMatrix, QMatrix};
use crate::tdlca::ProfiniteTower;

const SMALL_PRIMES: [u64; 3] = [2, 3, 5];

/// Independent deterministic stream for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// A group `ℤ/d_1 × … × ℤ/d_k` with `1 ≤ k ≤ 3`, every `d_i` a product of
/// 2, 3 and 5, and total order at most `max_order`.
pub fn random_group<R: Rng>(rng: &mut R, max_order: u64) -> FinAbGroup {
    let max_order = max_order.max(2);
    let rank = rng.gen_range(1..=3);
    let mut moduli = Vec::with_capacity(rank);
    let mut order = 1u64;
    for _ in 0..rank {
        let mut d = 1u64;
        let factors = rng.gen_range(1..=4);
        for _ in 0..factors {
            let p = *SMALL_PRIMES.choose(rng).expect("nonempty");
            if order * d * p <= max_order {
                d *= p;
            }
        }
        order *= d;
        moduli.push(d);
    }
    // keep the group nontrivial
    if order == 1 {
        moduli[0] = 2;
    }
    FinAbGroup::from_moduli(&moduli).expect("positive moduli")
}

/// Endomorphism with entries drawn uniformly from `[0, d_i)` and redrawn until
/// `d_j · M_ij ≡ 0 (mod d_i)`.
pub fn random_endo<R: Rng>(rng: &mut R, g: &FinAbGroup) -> GroupHom {
    let d: Vec<u64> = g
        .moduli()
        .iter()
        .map(|x| u64::try_from(x).expect("small modulus"))
        .collect();
    let k = d.len();
    let mut m = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let entry = loop {
                let x = rng.gen_range(0..d[i]);
                if (d[j] * x).is_multiple_of(d[i]) {
                    break x;
                }
            };
            m[(i, j)] = BigInt::from(entry);
        }
    }
    GroupHom::endo(g, m).expect("entries satisfy the compatibility condition")
}

pub fn random_element<R: Rng>(rng: &mut R, g: &FinAbGroup) -> Vec<BigInt> {
    g.moduli()
        .iter()
        .map(|d| BigInt::from(rng.gen_range(0..u64::try_from(d).expect("small modulus"))))
        .collect()
}

/// Subgroup spanned by one to three random elements.
pub fn random_subgroup<R: Rng>(rng: &mut R, g: &FinAbGroup) -> SubgroupLattice {
    let count = rng.gen_range(1..=3);
    let gens: Vec<Vec<BigInt>> = (0..count).map(|_| random_element(rng, g)).collect();
    SubgroupLattice::from_generators(g, &gens).expect("generators match the rank")
}

/// Product of random elementary operations; determinant ±1.
pub fn random_unimodular<R: Rng>(rng: &mut R, k: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(k);
    if k == 0 {
        return m;
    }
    for _ in 0..3 * k {
        let i = rng.gen_range(0..k);
        let j = rng.gen_range(0..k);
        if i != j {
            let c = BigInt::from(rng.gen_range(-2i64..=2));
            m.add_row_multiple(i, j, &c);
        } else if rng.gen_bool(0.3) {
            m.negate_row(i);
        }
    }
    let perm_a = rng.gen_range(0..k);
    let perm_b = rng.gen_range(0..k);
    m.swap_rows(perm_a, perm_b);
    m
}

/// Level-wise automorphisms for every level of a tower.
pub fn random_level_autos<R: Rng>(rng: &mut R, t: &ProfiniteTower) -> Vec<IntMatrix> {
    t.levels()
        .iter()
        .map(|g| random_unimodular(rng, g.rank()))
        .collect()
}

/// Random invertible `dim × dim` matrix with entries `c · p^e`, `|c| ≤ 3`, `|e| ≤ 2`.
pub fn random_padic_matrix<R: Rng>(rng: &mut R, p: u64, dim: usize) -> QMatrix {
    loop {
        let mut m = QMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let c: i64 = rng.gen_range(-3..=3);
                let e: i32 = rng.gen_range(-2..=2);
                let pe = BigInt::from(p).pow(e.unsigned_abs());
                m[(i, j)] = if e >= 0 {
                    BigRational::from_integer(BigInt::from(c) * pe)
                } else {
                    BigRational::new(BigInt::from(c), pe)
                };
            }
        }
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Square integer matrix with entries in `[-bound, bound]`.
pub fn random_int_matrix<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = BigInt::from(rng.gen_range(-bound..=bound));
        }
    }
    m
}
