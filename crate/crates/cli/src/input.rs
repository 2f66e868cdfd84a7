//! Instance files: JSON with exact rational-string matrices.

use std::fmt;

use num_bigint::BigInt;
use serde::Deserialize;

use lca_entropy::fingroup::{FinAbGroup, GroupHom, SubgroupLattice};
use lca_entropy::linalg::{parse_rational, IntMatrix, QMatrix};
use lca_entropy::padic::PadicEndo;
use lca_entropy::realspace::RealEndo;
use lca_entropy::tdlca::ProfiniteTower;

/// A matrix entry or modulus, written either as a JSON number or a string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Int(v) => write!(f, "{v}"),
            Entry::Text(s) => f.write_str(s),
        }
    }
}

pub type Matrix = Vec<Vec<Entry>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub group: GroupDesc,
    #[serde(default)]
    pub endomorphism: Option<Matrix>,
    /// Generators of the subgroup `U` of a finite group; the whole group if absent.
    #[serde(default)]
    pub subgroup: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    pub base_level: Option<usize>,
    #[serde(default)]
    pub depth: Option<usize>,
    /// Recorded with the instance; no current family draws random data.
    #[serde(default)]
    #[allow(dead_code)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub window: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDesc {
    Finite { moduli: Vec<Entry> },
    ProfiniteTower(TowerDesc),
    Padic { p: u64, d: usize, matrix: Matrix },
    Real { n: usize, matrix: Matrix },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum TowerDesc {
    FullShift {
        m: u64,
        levels: usize,
    },
    PAdic {
        p: u64,
        levels: usize,
        matrix: Matrix,
    },
    Explicit {
        moduli: Vec<Vec<Entry>>,
        projections: Vec<Matrix>,
        lag: usize,
        endo_maps: Vec<Matrix>,
    },
}

/// A fully validated instance, ready for computation.
pub enum Instance {
    Finite {
        f: GroupHom,
        u: SubgroupLattice,
    },
    Tower {
        tower: ProfiniteTower,
        base_level: usize,
    },
    Padic(PadicEndo),
    Real(RealEndo),
}

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<lca_entropy::Error> for InputError {
    fn from(e: lca_entropy::Error) -> Self {
        InputError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, InputError>;

pub fn parse(text: &str) -> Result<InstanceFile> {
    serde_json::from_str(text).map_err(|e| InputError(format!("invalid instance file: {e}")))
}

fn integer(e: &Entry) -> Result<BigInt> {
    match e {
        Entry::Int(v) => Ok(BigInt::from(*v)),
        Entry::Text(s) => {
            let q = parse_rational(s)?;
            if !q.is_integer() {
                return Err(InputError(format!("expected an integer, got {s:?}")));
            }
            Ok(q.to_integer())
        }
    }
}

fn int_matrix(rows: &Matrix, cols: usize) -> Result<IntMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(integer).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_big_rows(rows, cols)?)
}

fn rational_matrix(rows: &Matrix, n: usize) -> Result<QMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(InputError(format!("matrix must be {n}x{n}")));
    }
    let strings: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    Ok(QMatrix::parse_rows(&strings)?)
}

fn group(moduli: &[Entry]) -> Result<FinAbGroup> {
    Ok(FinAbGroup::new(
        moduli.iter().map(integer).collect::<Result<_>>()?,
    )?)
}

fn require_absent(input: &InstanceFile, family: &str) -> Result<()> {
    if input.endomorphism.is_some() {
        return Err(InputError(format!(
            "'endomorphism' is implied by the {family} group and must be omitted"
        )));
    }
    if input.subgroup.is_some() {
        return Err(InputError(format!(
            "'subgroup' is not used by the {family} group"
        )));
    }
    Ok(())
}

impl InstanceFile {
    pub fn build(&self) -> Result<Instance> {
        match &self.group {
            GroupDesc::Finite { moduli } => {
                let g = group(moduli)?;
                let m = self.endomorphism.as_ref().ok_or_else(|| {
                    InputError("finite groups need an 'endomorphism' matrix".into())
                })?;
                let f = GroupHom::endo(&g, int_matrix(m, g.rank())?)?;
                let u = match &self.subgroup {
                    None => SubgroupLattice::full(&g),
                    Some(gens) => {
                        let gens = gens
                            .iter()
                            .map(|v| v.iter().map(integer).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?;
                        SubgroupLattice::from_generators(&g, &gens)?
                    }
                };
                Ok(Instance::Finite { f, u })
            }
            GroupDesc::ProfiniteTower(t) => {
                if self.subgroup.is_some() {
                    return Err(InputError(
                        "towers take 'base_level' instead of 'subgroup'".into(),
                    ));
                }
                let tower = match t {
                    TowerDesc::FullShift { m, levels } => {
                        require_absent(self, "full_shift")?;
                        ProfiniteTower::full_shift(*m, *levels)?
                    }
                    TowerDesc::PAdic { p, levels, matrix } => {
                        require_absent(self, "p_adic")?;
                        let d = matrix.len();
                        ProfiniteTower::padic(*p, *levels, &int_matrix(matrix, d)?)?
                    }
                    TowerDesc::Explicit {
                        moduli,
                        projections,
                        lag,
                        endo_maps,
                    } => {
                        require_absent(self, "explicit")?;
                        let levels = moduli
                            .iter()
                            .map(|m| group(m))
                            .collect::<Result<Vec<_>>>()?;
                        if projections.len() + 1 != levels.len() {
                            return Err(InputError(format!(
                                "{} levels need {} projections, got {}",
                                levels.len(),
                                levels.len().saturating_sub(1),
                                projections.len()
                            )));
                        }
                        let projections = projections
                            .iter()
                            .enumerate()
                            .map(|(k, m)| {
                                let mat = int_matrix(m, levels[k + 1].rank())?;
                                Ok(GroupHom::new(&levels[k + 1], &levels[k], mat)?)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        let endo_maps = endo_maps
                            .iter()
                            .enumerate()
                            .map(|(k, m)| {
                                let src = levels.get(k + lag).ok_or_else(|| {
                                    InputError(format!("endomorphism map {k} has no source level"))
                                })?;
                                Ok(GroupHom::new(src, &levels[k], int_matrix(m, src.rank())?)?)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        ProfiniteTower::new(levels, projections, *lag, endo_maps)?
                    }
                };
                let base_level = self.base_level.unwrap_or(1);
                if base_level > tower.top_level() {
                    return Err(InputError(format!(
                        "base level {base_level} exceeds the top level {}",
                        tower.top_level()
                    )));
                }
                Ok(Instance::Tower { tower, base_level })
            }
            GroupDesc::Padic { p, d, matrix } => {
                require_absent(self, "padic")?;
                Ok(Instance::Padic(PadicEndo::new(
                    *p,
                    rational_matrix(matrix, *d)?,
                )?))
            }
            GroupDesc::Real { n, matrix } => {
                require_absent(self, "real")?;
                Ok(Instance::Real(RealEndo::new(rational_matrix(matrix, *n)?)?))
            }
        }
    }
}
