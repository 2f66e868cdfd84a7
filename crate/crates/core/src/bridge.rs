//! Verification suites comparing topological data of an endomorphism with
//! algebraic data of its dual: per-step index tables, entropy verdicts, and a
//! randomized battery of duality laws.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::duality::{annihilator, check_quotient_duality, dual_hom};
use crate::entropyseq::{compare, estimate, EntropyEstimate, IndexSequence, Verdict};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::fingroup::{
    cotrajectory_chain, index, trajectory_chain, FinAbGroup, GroupHom, SubgroupLattice,
};
use crate::linalg::IntMatrix;
use crate::padic::{
    compare_with_log_ratio, cotrajectory_index_seq, newton_entropy, trajectory_index_seq, PLattice,
    PadicEndo,
};
use crate::random::{random_endo, random_group, random_subgroup, trial_rng};
use crate::realspace::{bowen_entropy, virili_entropy, RealEndo};
use crate::tdlca::ProfiniteTower;

/// Bound on `|h_top − h_alg|` for the float closed forms on ℝⁿ.
pub const REAL_TOLERANCE: f64 = 1e-9;

fn parse_big(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::InvalidArgument(format!("not an integer: {s:?}")))
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| strings(m.row(i))).collect()
}

/// A finite instance in plain serializable form. Every counterexample of
/// the finite checks carries one, and rebuilding from it reproduces the run.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiniteInstance {
    pub moduli: Vec<String>,
    pub endomorphism: Vec<Vec<String>>,
    /// Generators of `U`, one per entry.
    pub subgroup: Vec<Vec<String>>,
}

impl FiniteInstance {
    pub fn from_parts(f: &GroupHom, u: &SubgroupLattice) -> Self {
        FiniteInstance {
            moduli: strings(f.domain().moduli()),
            endomorphism: int_rows(f.matrix()),
            subgroup: u.generators().iter().map(|g| strings(g)).collect(),
        }
    }

    pub fn build(&self) -> Result<(GroupHom, SubgroupLattice)> {
        let moduli = self
            .moduli
            .iter()
            .map(|s| parse_big(s))
            .collect::<Result<Vec<_>>>()?;
        let g = FinAbGroup::new(moduli)?;
        let rows = self
            .endomorphism
            .iter()
            .map(|r| r.iter().map(|s| parse_big(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let f = GroupHom::endo(&g, IntMatrix::from_big_rows(rows, g.rank())?)?;
        let gens = self
            .subgroup
            .iter()
            .map(|r| r.iter().map(|s| parse_big(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let u = SubgroupLattice::from_generators(&g, &gens)?;
        Ok((f, u))
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum InstanceDescriptor {
    Finite {
        #[serde(flatten)]
        instance: FiniteInstance,
        depth: usize,
    },
    Tower {
        level_moduli: Vec<Vec<String>>,
        lag: usize,
        base_level: usize,
        depth: usize,
    },
    Padic {
        p: u64,
        matrix: Vec<Vec<String>>,
        depth: usize,
    },
    Real {
        matrix: Vec<Vec<String>>,
        tolerance: f64,
    },
    LawSuite {
        seed: u64,
        trials: usize,
        max_order: u64,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IndexRow {
    pub n: usize,
    #[serde(with = "crate::serde_big")]
    pub topological: BigInt,
    #[serde(with = "crate::serde_big")]
    pub algebraic: BigInt,
    pub equal: bool,
}

impl IndexRow {
    fn new(n: usize, topological: BigInt, algebraic: BigInt) -> Self {
        let equal = topological == algebraic;
        IndexRow {
            n,
            topological,
            algebraic,
            equal,
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct EntropyComparison {
    pub topological: EntropyEstimate,
    pub algebraic: EntropyEstimate,
    pub verdict: Verdict,
}

impl EntropyComparison {
    fn from_rows(rows: &[IndexRow], window: usize) -> Result<Option<Self>> {
        if rows.len() < 2 {
            return Ok(None);
        }
        let top = IndexSequence::new(rows.iter().map(|r| r.topological.clone()).collect())?;
        let alg = IndexSequence::new(rows.iter().map(|r| r.algebraic.clone()).collect())?;
        let topological = estimate(&top, window)?;
        let algebraic = estimate(&alg, window)?;
        let verdict = compare(&topological, &algebraic);
        Ok(Some(EntropyComparison {
            topological,
            algebraic,
            verdict,
        }))
    }
}

/// An entropy value obtained from a closed formula rather than index counting.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ClosedForm {
    pub name: String,
    pub exact: Option<String>,
    pub value: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub boundary: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct LawResult {
    pub law: String,
    pub checked: usize,
    pub failed: usize,
    pub counterexamples: Vec<Value>,
}

impl LawResult {
    fn new(law: &str) -> Self {
        LawResult {
            law: law.to_string(),
            checked: 0,
            failed: 0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, outcome: Option<Value>) {
        self.checked += 1;
        if let Some(cx) = outcome {
            self.failed += 1;
            self.counterexamples.push(cx);
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct BridgeReport {
    pub instance: InstanceDescriptor,
    pub rows: Vec<IndexRow>,
    pub entropy: Option<EntropyComparison>,
    pub closed_forms: Vec<ClosedForm>,
    pub laws: Vec<LawResult>,
    pub passed: bool,
}

impl BridgeReport {
    fn new(
        instance: InstanceDescriptor,
        rows: Vec<IndexRow>,
        entropy: Option<EntropyComparison>,
        closed_forms: Vec<ClosedForm>,
        laws: Vec<LawResult>,
    ) -> Self {
        let passed = rows.iter().all(|r| r.equal)
            && laws.iter().all(LawResult::passed)
            && entropy
                .as_ref()
                .is_none_or(|e| e.verdict != Verdict::Mismatch);
        BridgeReport {
            instance,
            rows,
            entropy,
            closed_forms,
            laws,
            passed,
        }
    }

    /// Rows whose two indices differ.
    pub fn mismatched_rows(&self) -> impl Iterator<Item = &IndexRow> {
        self.rows.iter().filter(|r| !r.equal)
    }
}

/// Compares `[U : C_n(f, U)]` with `[T_n(f̂, U^⊥) : U^⊥]` for `n = 1..=depth`
/// and checks `C_n(f, U)^⊥ = T_n(f̂, U^⊥)` on the nose.
pub fn check_finite_instance(
    f: &GroupHom,
    u: &SubgroupLattice,
    depth: usize,
    window: usize,
) -> Result<BridgeReport> {
    if depth == 0 {
        return Err(Error::ZeroSteps);
    }
    let fh = dual_hom(f);
    let u_perp = annihilator(u)?;
    let cot = cotrajectory_chain(f, u, depth)?;
    let traj = trajectory_chain(&fh, &u_perp, depth)?;
    let instance = FiniteInstance::from_parts(f, u);
    let mut law = LawResult::new("annihilator-of-cotrajectory");
    let mut rows = Vec::with_capacity(depth);
    for (k, (c, t)) in cot.iter().zip(&traj).enumerate() {
        let n = k + 1;
        rows.push(IndexRow::new(n, index(u, c)?, index(t, &u_perp)?));
        let ann = annihilator(c)?;
        law.record((&ann != t).then(|| {
            json!({
                "instance": instance,
                "n": n,
                "annihilator": int_rows(ann.basis().matrix()),
                "trajectory": int_rows(t.basis().matrix()),
            })
        }));
    }
    let entropy = EntropyComparison::from_rows(&rows, window)?;
    Ok(BridgeReport::new(
        InstanceDescriptor::Finite { instance, depth },
        rows,
        entropy,
        Vec::new(),
        vec![law],
    ))
}

/// `check_finite_instance` on a serialized instance.
pub fn check_finite_payload(
    instance: &FiniteInstance,
    depth: usize,
    window: usize,
) -> Result<BridgeReport> {
    let (f, u) = instance.build()?;
    check_finite_instance(&f, &u, depth, window)
}

/// `count` random finite instances with `|G| ≤ max_order`, one RNG stream per instance.
pub fn finite_bridge_batch(
    seed: u64,
    count: usize,
    max_order: u64,
    depth: usize,
    window: usize,
    exec: Execution,
) -> Result<Vec<BridgeReport>> {
    map_indexed(count, exec, |trial| {
        let mut rng = trial_rng(seed, trial);
        let g = random_group(&mut rng, max_order);
        let f = random_endo(&mut rng, &g);
        let u = random_subgroup(&mut rng, &g);
        check_finite_instance(&f, &u, depth, window)
    })
    .into_iter()
    .collect()
}

/// Cotrajectory indices of a tower against trajectory indices of its dual
/// system, with the annihilator identity checked at every working level.
pub fn check_tower_pair(
    t: &ProfiniteTower,
    j: usize,
    depth: usize,
    window: usize,
) -> Result<BridgeReport> {
    if depth == 0 {
        return Err(Error::ZeroSteps);
    }
    let d = t.dualize()?;
    let mut rows = Vec::with_capacity(depth);
    let mut law = LawResult::new("annihilator-of-cotrajectory");
    for n in 1..=depth {
        let level = t.working_level(j, n);
        let c = t.cotrajectory_subgroup(j, n, level)?;
        let tr = d.trajectory_subgroup(j, n, level)?;
        rows.push(IndexRow::new(
            n,
            t.cotrajectory_index_at(j, n, level)?,
            d.trajectory_index_at(j, n, level)?,
        ));
        let ann = annihilator(&c)?;
        law.record((ann != tr).then(|| {
            json!({
                "base_level": j,
                "n": n,
                "level": level,
                "annihilator": int_rows(ann.basis().matrix()),
                "trajectory": int_rows(tr.basis().matrix()),
            })
        }));
    }
    let entropy = EntropyComparison::from_rows(&rows, window)?;
    let instance = InstanceDescriptor::Tower {
        level_moduli: t.levels().iter().map(|g| strings(g.moduli())).collect(),
        lag: t.lag(),
        base_level: j,
        depth,
    };
    Ok(BridgeReport::new(
        instance,
        rows,
        entropy,
        Vec::new(),
        vec![law],
    ))
}

/// ℚ_p^d with `U = ℤ_p^d`: lattice cotrajectory indices of `φ` against
/// trajectory indices of `φᵀ`, and both against the Newton-polygon value.
pub fn check_padic_instance(phi: &PadicEndo, depth: usize, window: usize) -> Result<BridgeReport> {
    if depth == 0 {
        return Err(Error::ZeroSteps);
    }
    let u = PLattice::standard(phi.prime(), phi.dim())?;
    let cot = cotrajectory_index_seq(phi, &u, depth)?;
    let traj = trajectory_index_seq(&phi.transpose(), &u, depth)?;
    let rows: Vec<IndexRow> = cot
        .indices()
        .iter()
        .zip(traj.indices())
        .enumerate()
        .map(|(k, (a, b))| IndexRow::new(k + 1, a.clone(), b.clone()))
        .collect();
    let entropy = EntropyComparison::from_rows(&rows, window)?;
    let newton = newton_entropy(phi)?;
    let newton_t = newton_entropy(&phi.transpose())?;
    let matrix = phi.matrix().to_string_rows();

    let mut transpose_law = LawResult::new("newton-transpose-invariant");
    transpose_law.record((newton != newton_t).then(|| {
        json!({ "p": phi.prime(), "matrix": matrix, "newton": newton.to_string(), "transpose": newton_t.to_string() })
    }));

    // Stabilized lattice entropy must equal the closed form; otherwise the
    // certified upper bound must dominate it.
    let mut lattice_law = LawResult::new("newton-agrees-with-lattice");
    if let Some(e) = &entropy {
        let ok = match &e.topological.stabilized {
            Some(r) => newton.equals_log_of(r),
            None => compare_with_log_ratio(&newton, &e.topological.upper_bound).is_le(),
        };
        lattice_law.record((!ok).then(|| {
            json!({
                "p": phi.prime(),
                "matrix": matrix,
                "newton": newton.to_string(),
                "lattice": e.topological.exact_string(),
            })
        }));
    }

    let closed_forms = vec![ClosedForm {
        name: "newton".into(),
        exact: Some(newton.to_string()),
        value: newton.to_f64(),
        boundary: false,
    }];
    let instance = InstanceDescriptor::Padic {
        p: phi.prime(),
        matrix,
        depth,
    };
    Ok(BridgeReport::new(
        instance,
        rows,
        entropy,
        closed_forms,
        vec![transpose_law, lattice_law],
    ))
}

/// ℝⁿ: Bowen's entropy of `M` against Virili's entropy of the dual, `Mᵀ`.
pub fn check_real_instance(phi: &RealEndo, tol: f64) -> Result<BridgeReport> {
    let bowen = bowen_entropy(phi, tol)?;
    let virili = virili_entropy(phi, tol)?;
    let matrix = phi.matrix().to_string_rows();
    let mut law = LawResult::new("bowen-equals-virili");
    law.record(
        ((bowen.value - virili.value).abs() > REAL_TOLERANCE)
            .then(|| json!({ "matrix": matrix, "bowen": bowen.value, "virili": virili.value })),
    );
    let closed_forms = vec![
        ClosedForm {
            name: "bowen".into(),
            exact: None,
            value: bowen.value,
            boundary: bowen.boundary,
        },
        ClosedForm {
            name: "virili".into(),
            exact: None,
            value: virili.value,
            boundary: virili.boundary,
        },
    ];
    Ok(BridgeReport::new(
        InstanceDescriptor::Real {
            matrix,
            tolerance: tol,
        },
        Vec::new(),
        None,
        closed_forms,
        vec![law],
    ))
}

/// Names of the laws run by [`duality_law_suite`], in report order.
pub const LAWS: [&str; 9] = [
    "double-annihilator",
    "quotient-duality",
    "annihilator-of-sum",
    "annihilator-of-intersection",
    "invariance-transfer",
    "preimage-annihilator",
    "annihilator-of-cotrajectory",
    "index-identity",
    "double-dual-hom",
];

const LAW_STEPS: usize = 4;

fn run_laws(f: &GroupHom, a: &SubgroupLattice, b: &SubgroupLattice) -> Result<Vec<Option<Value>>> {
    let fh = dual_hom(f);
    let a_perp = annihilator(a)?;
    let b_perp = annihilator(b)?;
    let mut out = Vec::with_capacity(LAWS.len());

    let back = annihilator(&a_perp)?;
    out.push(
        (&back != a).then(|| json!({ "double_annihilator": int_rows(back.basis().matrix()) })),
    );

    let inner = a.intersect(b)?;
    let (primal, dual) = check_quotient_duality(a, &inner)?;
    out.push(
        (primal != dual)
            .then(|| json!({ "quotient": strings(&primal), "dual_quotient": strings(&dual) })),
    );

    let lhs = annihilator(&a.sum(b)?)?;
    let rhs = a_perp.intersect(&b_perp)?;
    out.push((lhs != rhs).then(
        || json!({ "lhs": int_rows(lhs.basis().matrix()), "rhs": int_rows(rhs.basis().matrix()) }),
    ));

    let lhs = annihilator(&inner)?;
    let rhs = a_perp.sum(&b_perp)?;
    out.push((lhs != rhs).then(
        || json!({ "lhs": int_rows(lhs.basis().matrix()), "rhs": int_rows(rhs.basis().matrix()) }),
    ));

    let inv = f.leaves_invariant(a)?;
    let inv_dual = fh.leaves_invariant(&a_perp)?;
    out.push((inv != inv_dual).then(|| json!({ "invariant": inv, "dual_invariant": inv_dual })));

    let mut bad = None;
    for n in 0..LAW_STEPS as u32 {
        let lhs = annihilator(&f.pow(n)?.preimage(a)?)?;
        let rhs = fh.pow(n)?.image(&a_perp)?;
        if lhs != rhs {
            bad = Some(
                json!({ "n": n, "lhs": int_rows(lhs.basis().matrix()), "rhs": int_rows(rhs.basis().matrix()) }),
            );
            break;
        }
    }
    out.push(bad);

    let cot = cotrajectory_chain(f, a, LAW_STEPS)?;
    let traj = trajectory_chain(&fh, &a_perp, LAW_STEPS)?;
    let mut bad_ann = None;
    let mut bad_index = None;
    for (k, (c, t)) in cot.iter().zip(&traj).enumerate() {
        if bad_ann.is_none() && &annihilator(c)? != t {
            bad_ann = Some(json!({ "n": k + 1 }));
        }
        let (top, alg) = (index(a, c)?, index(t, &a_perp)?);
        if bad_index.is_none() && top != alg {
            bad_index = Some(
                json!({ "n": k + 1, "topological": top.to_string(), "algebraic": alg.to_string() }),
            );
        }
    }
    out.push(bad_ann);
    out.push(bad_index);

    let twice = dual_hom(&fh);
    out.push((&twice != f).then(|| json!({ "double_dual": int_rows(twice.matrix()) })));
    Ok(out)
}

/// Runs every law in [`LAWS`] on `trials` random instances. Failures are
/// collected with a payload holding the seed, trial number and instance.
pub fn duality_law_suite(
    seed: u64,
    trials: usize,
    max_order: u64,
    exec: Execution,
) -> BridgeReport {
    let per_trial = map_indexed(trials, exec, |trial| {
        let mut rng = trial_rng(seed, trial);
        let g = random_group(&mut rng, max_order);
        let f = random_endo(&mut rng, &g);
        let a = random_subgroup(&mut rng, &g);
        let b = random_subgroup(&mut rng, &g);
        let payload = json!({
            "seed": seed,
            "trial": trial,
            "instance": FiniteInstance::from_parts(&f, &a),
            "second_subgroup": b.generators().iter().map(|v| strings(v)).collect::<Vec<_>>(),
        });
        (run_laws(&f, &a, &b), payload)
    });

    let mut laws: Vec<LawResult> = if trials == 0 {
        Vec::new()
    } else {
        LAWS.iter().map(|l| LawResult::new(l)).collect()
    };
    for (outcome, payload) in per_trial {
        match outcome {
            Ok(results) => {
                for (law, result) in laws.iter_mut().zip(results) {
                    law.record(result.map(|detail| {
                        let mut p = payload.clone();
                        p["detail"] = detail;
                        p
                    }));
                }
            }
            Err(e) => {
                for law in laws.iter_mut() {
                    let mut p = payload.clone();
                    p["error"] = json!(e.to_string());
                    law.record(Some(p));
                }
            }
        }
    }
    BridgeReport::new(
        InstanceDescriptor::LawSuite {
            seed,
            trials,
            max_order,
        },
        Vec::new(),
        None,
        Vec::new(),
        laws,
    )
}
