//! Brute-force element enumeration for small groups.
//!
//! Used as the independent reference in tests: nothing here touches the
//! lattice machinery beyond reading moduli, generators and matrices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::fingroup::{FinAbGroup, GroupHom, SubgroupLattice};

/// Largest group order the oracle will enumerate.
pub const MAX_ORDER: u64 = 100_000;

pub type Element = Vec<i64>;
pub type ElementSet = BTreeSet<Element>;

fn moduli(g: &FinAbGroup) -> Vec<i64> {
    let m: Vec<i64> = g
        .moduli()
        .iter()
        .map(|d| d.to_i64().expect("oracle modulus fits in i64"))
        .collect();
    let order: u64 = m.iter().map(|&d| d as u64).product();
    assert!(
        order <= MAX_ORDER,
        "oracle limited to |G| <= {MAX_ORDER}, got {order}"
    );
    m
}

pub fn all_elements(g: &FinAbGroup) -> Vec<Element> {
    let m = moduli(g);
    let mut out = vec![Vec::with_capacity(m.len())];
    for &d in &m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn add(m: &[i64], a: &[i64], b: &[i64]) -> Element {
    a.iter()
        .zip(b)
        .zip(m)
        .map(|((x, y), d)| (x + y).rem_euclid(*d))
        .collect()
}

/// Subgroup generated by `gens`, by breadth-first closure.
pub fn span(g: &FinAbGroup, gens: &[Element]) -> ElementSet {
    let m = moduli(g);
    let gens: Vec<Element> = gens
        .iter()
        .map(|x| x.iter().zip(&m).map(|(v, d)| v.rem_euclid(*d)).collect())
        .collect();
    let zero = vec![0; m.len()];
    let mut seen = ElementSet::new();
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = add(&m, &x, s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn subgroup_elements(h: &SubgroupLattice) -> ElementSet {
    let gens: Vec<Element> = h
        .generators()
        .iter()
        .map(|c| c.iter().map(|x| x.to_i64().expect("small entry")).collect())
        .collect();
    span(h.ambient(), &gens)
}

pub fn apply(f: &GroupHom, x: &[i64]) -> Element {
    let e = moduli(f.codomain());
    let m = f.matrix();
    (0..m.rows())
        .map(|i| {
            let s: i64 = (0..m.cols())
                .map(|j| m[(i, j)].to_i64().expect("small entry") * x[j])
                .sum();
            s.rem_euclid(e[i])
        })
        .collect()
}

pub fn image(f: &GroupHom, set: &ElementSet) -> ElementSet {
    set.iter().map(|x| apply(f, x)).collect()
}

pub fn preimage(f: &GroupHom, set: &ElementSet) -> ElementSet {
    all_elements(f.domain())
        .into_iter()
        .filter(|x| set.contains(&apply(f, x)))
        .collect()
}

pub fn sum(g: &FinAbGroup, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let m = moduli(g);
    a.iter()
        .flat_map(|x| b.iter().map(|y| add(&m, x, y)).collect::<Vec<_>>())
        .collect()
}

/// `Σ x_i y_i / d_i mod 1` as a reduced fraction `(num, den)` with `0 <= num < den`.
pub fn pairing(g: &FinAbGroup, x: &[i64], y: &[i64]) -> (i64, i64) {
    let m = moduli(g);
    let l = m.iter().fold(1i64, |acc, d| acc.lcm(d));
    let num: i128 = x
        .iter()
        .zip(y)
        .zip(&m)
        .map(|((a, b), d)| (*a as i128) * (*b as i128) * (l / d) as i128)
        .sum();
    let num = num.rem_euclid(l as i128) as i64;
    let gcd = num.gcd(&l);
    (num / gcd, l / gcd)
}

/// `{y ∈ Ĝ : ⟨x, y⟩ = 0 for every x in the set}`
pub fn annihilator(g: &FinAbGroup, set: &ElementSet) -> ElementSet {
    all_elements(g)
        .into_iter()
        .filter(|y| set.iter().all(|x| pairing(g, x, y).0 == 0))
        .collect()
}

/// Number of cosets of `inner` in `outer` of each order, keyed by order.
/// Two finite abelian groups are isomorphic iff these profiles agree.
pub fn quotient_order_profile(
    g: &FinAbGroup,
    outer: &ElementSet,
    inner: &ElementSet,
) -> BTreeMap<u64, u64> {
    let m = moduli(g);
    let canonical = |x: &Element| -> Element {
        inner
            .iter()
            .map(|h| add(&m, x, h))
            .min()
            .expect("inner contains 0")
    };
    let reps: BTreeSet<Element> = outer.iter().map(canonical).collect();
    let mut profile = BTreeMap::new();
    for r in &reps {
        let mut k = 1u64;
        let mut acc = r.clone();
        while !inner.contains(&acc) {
            acc = add(&m, &acc, r);
            k += 1;
        }
        *profile.entry(k).or_insert(0) += 1;
    }
    profile
}

/// Order profile of the finite abelian group with the given invariant factors.
pub fn profile_of_invariants(factors: &[u64]) -> BTreeMap<u64, u64> {
    let g = FinAbGroup::from_moduli(factors).expect("positive factors");
    let all: ElementSet = all_elements(&g).into_iter().collect();
    let zero: ElementSet = [vec![0; factors.len()]].into_iter().collect();
    quotient_order_profile(&g, &all, &zero)
}
