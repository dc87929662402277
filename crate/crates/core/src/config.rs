//! Branch configurations `B = B' + ΣA_i` on a K3 lattice and the surface
//! invariants of the double cover they determine.
//!
//! [`validate`] checks the lattice-decidable content of the branch condition:
//! the number `t` of nodal branch curves, their squares and disjointness, that
//! `B'` is big and (against the listed curves) nef, and that `B` is twice a
//! class `L` with `L² = −4`. Whether `B'` has only negligible singularities is
//! geometric, so it is carried as an explicit flag.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ade::{self, AdeError, DualGraph, DynkinType};
use crate::lattice::{DivisorClass, EvennessCertificate, IntLattice, LatticeError};

pub const MIN_BRANCH_CURVES: usize = 9;
pub const MAX_BRANCH_CURVES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Ade(#[from] AdeError),
    #[error("configuration violates the branch condition: {}", .0.summary())]
    Invalid(Box<ValidationReport>),
    #[error(
        "inventory class #{index} is orthogonal to B' but has square {square} >= 0 (Hodge index)"
    )]
    HodgeIndex { index: usize, square: i64 },
    #[error("inventory class #{index} is orthogonal to B' with square {square}; only (-2)-curves can be")]
    NonNodalInventory { index: usize, square: i64 },
}

/// Wire form of a configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub lattice: IntLattice,
    #[serde(rename = "Bprime")]
    pub bprime: DivisorClass,
    #[serde(rename = "A")]
    pub branch_curves: Vec<DivisorClass>,
    #[serde(default)]
    pub inventory: Vec<DivisorClass>,
    pub negligible_ok: bool,
    /// Curves whose component maps to the singular point of a non-birational
    /// `φ_{|B'|}`; graph selection skips components containing them.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub obstructed: Vec<DivisorClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigDocument", into = "ConfigDocument")]
pub struct BranchConfiguration {
    lattice: IntLattice,
    bprime: DivisorClass,
    branch_curves: Vec<DivisorClass>,
    inventory: Vec<DivisorClass>,
    negligible_ok: bool,
    obstructed: Vec<DivisorClass>,
}

impl TryFrom<ConfigDocument> for BranchConfiguration {
    type Error = ConfigError;
    fn try_from(doc: ConfigDocument) -> Result<Self, ConfigError> {
        BranchConfiguration::new(
            doc.lattice,
            doc.bprime,
            doc.branch_curves,
            doc.inventory,
            doc.negligible_ok,
        )?
        .with_obstructed(doc.obstructed)
    }
}

impl From<BranchConfiguration> for ConfigDocument {
    fn from(cfg: BranchConfiguration) -> Self {
        ConfigDocument {
            lattice: cfg.lattice,
            bprime: cfg.bprime,
            branch_curves: cfg.branch_curves,
            inventory: cfg.inventory,
            negligible_ok: cfg.negligible_ok,
            obstructed: cfg.obstructed,
        }
    }
}

impl BranchConfiguration {
    /// Assembles a configuration, checking only that every class lives in the lattice.
    pub fn new(
        lattice: IntLattice,
        bprime: DivisorClass,
        branch_curves: Vec<DivisorClass>,
        inventory: Vec<DivisorClass>,
        negligible_ok: bool,
    ) -> Result<Self, ConfigError> {
        lattice.check_dim(&bprime)?;
        for c in branch_curves.iter().chain(&inventory) {
            lattice.check_dim(c)?;
        }
        Ok(BranchConfiguration {
            lattice,
            bprime,
            branch_curves,
            inventory,
            negligible_ok,
            obstructed: Vec::new(),
        })
    }

    pub fn with_obstructed(mut self, obstructed: Vec<DivisorClass>) -> Result<Self, ConfigError> {
        for c in &obstructed {
            self.lattice.check_dim(c)?;
        }
        self.obstructed = obstructed;
        Ok(self)
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn bprime(&self) -> &DivisorClass {
        &self.bprime
    }

    pub fn branch_curves(&self) -> &[DivisorClass] {
        &self.branch_curves
    }

    pub fn inventory(&self) -> &[DivisorClass] {
        &self.inventory
    }

    pub fn negligible_ok(&self) -> bool {
        self.negligible_ok
    }

    pub fn obstructed(&self) -> &[DivisorClass] {
        &self.obstructed
    }

    /// Number of nodal branch curves.
    pub fn t(&self) -> usize {
        self.branch_curves.len()
    }

    /// The full branch class `B' + ΣA_i`.
    pub fn branch_class(&self) -> DivisorClass {
        self.branch_curves
            .iter()
            .fold(self.bprime.clone(), |acc, a| acc + a)
    }

    pub fn bprime_square(&self) -> i64 {
        self.lattice
            .square(&self.bprime)
            .expect("dimensions checked at construction")
    }

    /// Every curve known to the configuration: branch curves, then the
    /// inventory entries that are not branch curves.
    pub fn known_curves(&self) -> Vec<DivisorClass> {
        let mut out = self.branch_curves.clone();
        for c in &self.inventory {
            if !out.contains(c) {
                out.push(c.clone());
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    BranchCount,
    NodalSquare,
    Disjoint,
    OrthogonalToBprime,
    Big,
    NefPartial,
    Evenness,
    HalfSquare,
    Negligible,
    SquareIdentity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: Clause,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub t: usize,
    pub bprime_square: i64,
    pub branch_square: i64,
    /// `B²/4` rendered exactly (`"-4"`, `"-3/2"`).
    pub branch_half_square: String,
    pub evenness: Option<EvennessCertificate>,
    /// Nefness of `B'` is certified only against this many listed curves.
    pub nef_checked_against: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn violated(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    pub fn summary(&self) -> String {
        if self.passed {
            return "passed".to_string();
        }
        self.violations
            .iter()
            .map(|v| v.detail.as_str())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Checks every lattice-level clause of the branch condition.
pub fn validate(cfg: &BranchConfiguration) -> ValidationReport {
    let lat = &cfg.lattice;
    let pair = |a: &DivisorClass, b: &DivisorClass| {
        lat.pair(a, b).expect("dimensions checked at construction")
    };
    let mut violations = Vec::new();
    let violate =
        |v: &mut Vec<Violation>, clause, detail: String| v.push(Violation { clause, detail });

    let t = cfg.t();
    if !(MIN_BRANCH_CURVES..=MAX_BRANCH_CURVES).contains(&t) {
        violate(
            &mut violations,
            Clause::BranchCount,
            format!("t = {t} is outside {MIN_BRANCH_CURVES}..={MAX_BRANCH_CURVES}"),
        );
    }
    for (i, a) in cfg.branch_curves.iter().enumerate() {
        let sq = pair(a, a);
        if sq != -2 {
            violate(
                &mut violations,
                Clause::NodalSquare,
                format!("A{} has square {sq}, expected -2", i + 1),
            );
        }
        for (j, b) in cfg.branch_curves[..i].iter().enumerate() {
            let p = pair(a, b);
            if p != 0 {
                violate(
                    &mut violations,
                    Clause::Disjoint,
                    format!("A{}·A{} = {p}, expected 0", j + 1, i + 1),
                );
            }
        }
        let p = pair(&cfg.bprime, a);
        if p != 0 {
            violate(
                &mut violations,
                Clause::OrthogonalToBprime,
                format!("B'·A{} = {p}, expected 0", i + 1),
            );
        }
    }
    let bprime_square = pair(&cfg.bprime, &cfg.bprime);
    if bprime_square <= 0 {
        violate(
            &mut violations,
            Clause::Big,
            format!("B'² = {bprime_square} is not positive"),
        );
    }
    for (k, c) in cfg.inventory.iter().enumerate() {
        let p = pair(&cfg.bprime, c);
        if p < 0 {
            violate(
                &mut violations,
                Clause::NefPartial,
                format!("B'·C = {p} < 0 for inventory curve #{k}"),
            );
        }
    }
    let branch = cfg.branch_class();
    let evenness = lat
        .is_even(&branch)
        .expect("dimensions checked at construction");
    if evenness.is_none() {
        violate(
            &mut violations,
            Clause::Evenness,
            "B' + ΣA is not 2-divisible modulo the declared even classes".to_string(),
        );
    }
    let branch_square = pair(&branch, &branch);
    let half = Ratio::new(branch_square, 4);
    if half != Ratio::from_integer(-4) {
        violate(
            &mut violations,
            Clause::HalfSquare,
            format!("(B/2)² = {half}, expected -4"),
        );
    }
    if !cfg.negligible_ok {
        violate(
            &mut violations,
            Clause::Negligible,
            "B' is not asserted to have at most negligible singularities".to_string(),
        );
    }
    if violations.is_empty() && bprime_square != 2 * (t as i64 - 8) {
        violate(
            &mut violations,
            Clause::SquareIdentity,
            format!(
                "B'² = {bprime_square} but 2(t - 8) = {}",
                2 * (t as i64 - 8)
            ),
        );
    }
    ValidationReport {
        passed: violations.is_empty(),
        t,
        bprime_square,
        branch_square,
        branch_half_square: half.to_string(),
        evenness,
        nef_checked_against: cfg.inventory.len() + t,
        violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub q: i64,
    pub p_g: i64,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub chi: i64,
}

/// Invariants of the minimal model `S` of the double cover branched on `B`.
///
/// `q = 0` and `p_g = 1` follow from the vanishing of `h⁰(L)` and `h¹(L)`
/// once the branch condition holds; they are not recomputed here.
/// `K_S² = 2(K_P + L)² + t = 2L² + t` since `K_P = 0`.
pub fn invariants(cfg: &BranchConfiguration) -> Result<SurfaceInvariants, ConfigError> {
    let report = validate(cfg);
    if !report.passed {
        return Err(ConfigError::Invalid(Box::new(report)));
    }
    let l_square = cfg.lattice.half_square(&cfg.branch_class())?.to_integer();
    let (q, p_g) = (0, 1);
    Ok(SurfaceInvariants {
        q,
        p_g,
        k2: 2 * l_square + cfg.t() as i64,
        chi: 1 + p_g - q,
    })
}

/// Where a vertex of the ξ-graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveSource {
    Branch(usize),
    Inventory(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiComponent {
    pub vertices: Vec<usize>,
    #[serde(rename = "type")]
    pub dynkin: DynkinType,
    /// Vertices of the component that are branch curves.
    pub marking: Vec<usize>,
    /// Whether `marking` satisfies the parity condition on this component.
    pub admissible: bool,
}

/// Dual graph of the known curves disjoint from `B'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiGraph {
    pub graph: DualGraph,
    pub sources: Vec<CurveSource>,
}

impl XiGraph {
    pub fn is_branch(&self, v: usize) -> bool {
        matches!(self.sources[v], CurveSource::Branch(_))
    }

    pub fn components(&self) -> Vec<XiComponent> {
        ade::classify_components(&self.graph)
            .into_iter()
            .map(|c| {
                let marking: Vec<usize> = c
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| self.is_branch(v))
                    .collect();
                let admissible = ade::is_parity_admissible(&self.graph, &c.vertices, &marking);
                XiComponent {
                    vertices: c.vertices,
                    dynkin: c.dynkin,
                    marking,
                    admissible,
                }
            })
            .collect()
    }

    pub fn census(&self) -> Vec<DynkinType> {
        self.components().into_iter().map(|c| c.dynkin).collect()
    }
}

/// The ξ-graph: branch curves followed by the inventory curves orthogonal to `B'`.
pub fn xi_graph(cfg: &BranchConfiguration) -> Result<XiGraph, ConfigError> {
    let lat = &cfg.lattice;
    let mut curves = cfg.branch_curves.clone();
    let mut sources: Vec<CurveSource> = (0..cfg.t()).map(CurveSource::Branch).collect();
    let mut seen: BTreeSet<&DivisorClass> = cfg.branch_curves.iter().collect();
    for (index, c) in cfg.inventory.iter().enumerate() {
        if !seen.insert(c) || lat.pair(&cfg.bprime, c)? != 0 {
            continue;
        }
        let square = lat.square(c)?;
        if square >= 0 {
            return Err(ConfigError::HodgeIndex { index, square });
        }
        if square != -2 {
            return Err(ConfigError::NonNodalInventory { index, square });
        }
        curves.push(c.clone());
        sources.push(CurveSource::Inventory(index));
    }
    let graph = ade::build_dual_graph(lat, &curves)?;
    Ok(XiGraph { graph, sources })
}
