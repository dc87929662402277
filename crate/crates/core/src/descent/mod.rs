//! The K²-descent on branch configurations.
//!
//! One step picks a connected ADE graph `G` of curves disjoint from `B'` whose
//! branch curves `S` form a parity-admissible marking, replaces `B'` by
//! `B' − Z` (with `Z` the fundamental cycle of `G`) and swaps the branch
//! curves on `G` for the vertex set `N ≡ Z + Σ_S (mod 2)`. Each step lowers
//! `t`, and so `K²`, by one until `t = 9`.

mod saint_donat;
mod splitting;

pub use saint_donat::{
    check_sd_case, sd_exclusions, verify_sd_case, Exclusion, SdCase, SdDocument, SdExclusions,
    SdKind,
};
pub use splitting::{cubic_splitting_certificate, SplittingReport};

use serde::Serialize;
use thiserror::Error;

use crate::ade::{self, AdeError, DynkinType, FundamentalCycle};
use crate::config::{
    self, BranchConfiguration, ConfigError, ValidationReport, XiComponent, XiGraph,
    MIN_BRANCH_CURVES,
};
use crate::lattice::{DivisorClass, EvennessCertificate, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Ade(#[from] AdeError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("configuration does not validate: {}", .0.summary())]
    Invalid(Box<ValidationReport>),
    #[error("descent exhausted: t = {0} is already minimal")]
    Exhausted(usize),
    #[error("no component of the xi-graph carries an admissible branch marking")]
    NoAdmissible,
    #[error("descent postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error("exclusions are only defined for case iii.b")]
    NotQuadricConeB,
    #[error("no odd pairing justifies excluding gamma {0}")]
    NoWitness(usize),
    #[error("splitting needs t = 9 and B'^2 = 2, got t = {t} and B'^2 = {bprime_square}")]
    NotTerminal { t: usize, bprime_square: i64 },
    #[error("pullback minus the branch curves is not 2-divisible")]
    NotEven,
}

fn require_valid(cfg: &BranchConfiguration) -> Result<ValidationReport, DescentError> {
    let report = config::validate(cfg);
    if report.passed {
        Ok(report)
    } else {
        Err(DescentError::Invalid(Box::new(report)))
    }
}

/// The component chosen for a descent step, together with the graph it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub xi: XiGraph,
    pub component: XiComponent,
}

/// Lowest-indexed component that contains a branch curve, whose branch
/// vertices form an admissible marking, and that avoids `obstructed` vertices.
pub fn select_from_graph(xi: &XiGraph, obstructed: &[usize]) -> Result<XiComponent, DescentError> {
    xi.components()
        .into_iter()
        .find(|c| {
            !c.marking.is_empty()
                && c.admissible
                && c.dynkin.is_ade()
                && !c.vertices.iter().any(|v| obstructed.contains(v))
        })
        .ok_or(DescentError::NoAdmissible)
}

pub fn select_graph(cfg: &BranchConfiguration) -> Result<Selection, DescentError> {
    let report = require_valid(cfg)?;
    if report.t <= MIN_BRANCH_CURVES {
        return Err(DescentError::Exhausted(report.t));
    }
    let xi = config::xi_graph(cfg)?;
    let obstructed: Vec<usize> = (0..xi.graph.len())
        .filter(|&v| cfg.obstructed().contains(&xi.graph.vertices()[v]))
        .collect();
    let component = select_from_graph(&xi, &obstructed)?;
    Ok(Selection { xi, component })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    /// Vertices of the chosen component in the xi-graph.
    pub component: Vec<usize>,
    #[serde(rename = "type")]
    pub dynkin: DynkinType,
    /// Branch curves on the component, as xi-graph vertices.
    pub marking: Vec<usize>,
    pub fundamental_cycle: FundamentalCycle,
    /// Vertices of the component that become branch curves.
    pub new_vertices: Vec<usize>,
    pub new_bprime: DivisorClass,
    pub new_branch_curves: Vec<DivisorClass>,
    #[serde(rename = "K2_before")]
    pub k2_before: i64,
    #[serde(rename = "K2")]
    pub k2_after: i64,
    /// `(old B − new B) / 2`.
    pub branch_change_half: DivisorClass,
    pub evenness: EvennessCertificate,
}

/// Vertices `v` of the cycle's support with `Z_v + [v ∈ marking]` odd.
pub fn new_branch_vertices(z: &FundamentalCycle, marking: &[usize]) -> Vec<usize> {
    z.vertices
        .iter()
        .zip(&z.multiplicities)
        .filter(|&(v, m)| (m + i64::from(marking.contains(v))) % 2 != 0)
        .map(|(&v, _)| v)
        .collect()
}

pub fn descent_step(
    cfg: &BranchConfiguration,
) -> Result<(DescentStep, BranchConfiguration), DescentError> {
    let Selection { xi, component } = select_graph(cfg)?;
    let graph = &xi.graph;
    let z = ade::fundamental_cycle(graph, &component.vertices)?;

    let new_vertices = new_branch_vertices(&z, &component.marking);
    let removed: Vec<&DivisorClass> = component
        .marking
        .iter()
        .map(|&v| &graph.vertices()[v])
        .collect();
    let mut new_branch: Vec<DivisorClass> = cfg
        .branch_curves()
        .iter()
        .filter(|a| !removed.contains(a))
        .cloned()
        .collect();
    new_branch.extend(new_vertices.iter().map(|&v| graph.vertices()[v].clone()));
    let new_bprime = cfg.bprime() - &z.class;

    let mut inventory = Vec::new();
    for c in cfg.branch_curves().iter().chain(cfg.inventory()) {
        if !new_branch.contains(c) && !inventory.contains(c) {
            inventory.push(c.clone());
        }
    }
    let next = BranchConfiguration::new(
        cfg.lattice().clone(),
        new_bprime.clone(),
        new_branch.clone(),
        inventory,
        cfg.negligible_ok(),
    )?;

    let fail = |msg: String| Err(DescentError::PostconditionFailed(msg));
    let before = config::invariants(cfg)?;
    if next.bprime_square() != cfg.bprime_square() - 2 {
        return fail(format!(
            "new B'^2 = {} instead of {}",
            next.bprime_square(),
            cfg.bprime_square() - 2
        ));
    }
    if next.t() + 1 != cfg.t() {
        return fail(format!(
            "{} new branch curves instead of {}",
            next.t(),
            cfg.t() - 1
        ));
    }
    let Some(half) = (&cfg.branch_class() - &next.branch_class()).halved() else {
        return fail("old and new branch classes differ by a non-even class".to_string());
    };
    let report = config::validate(&next);
    if !report.passed {
        return fail(format!("new configuration: {}", report.summary()));
    }
    let after = config::invariants(&next)?;
    if after.k2 != before.k2 - 1 {
        return fail(format!("K^2 went from {} to {}", before.k2, after.k2));
    }

    let step = DescentStep {
        component: component.vertices,
        dynkin: component.dynkin,
        marking: component.marking,
        fundamental_cycle: z,
        new_vertices,
        new_bprime,
        new_branch_curves: new_branch,
        k2_before: before.k2,
        k2_after: after.k2,
        branch_change_half: half,
        evenness: report.evenness.expect("validation passed"),
    };
    Ok((step, next))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentChain {
    /// Input first, then one configuration per step down to `t = 9`.
    pub configurations: Vec<BranchConfiguration>,
    pub steps: Vec<DescentStep>,
}

impl DescentChain {
    pub fn last(&self) -> &BranchConfiguration {
        self.configurations.last().expect("chain holds its input")
    }

    pub fn k2_sequence(&self) -> Vec<i64> {
        self.configurations
            .iter()
            .map(|c| c.t() as i64 - 8)
            .collect()
    }
}

/// Runs at most `max_steps` descent steps, stopping early at `t = 9`.
pub fn descend(cfg: &BranchConfiguration, max_steps: usize) -> Result<DescentChain, DescentError> {
    require_valid(cfg)?;
    let mut chain = DescentChain {
        configurations: vec![cfg.clone()],
        steps: Vec::new(),
    };
    while chain.steps.len() < max_steps && chain.last().t() > MIN_BRANCH_CURVES {
        let (step, next) = descent_step(chain.last())?;
        chain.steps.push(step);
        chain.configurations.push(next);
    }
    Ok(chain)
}

pub fn full_descent(cfg: &BranchConfiguration) -> Result<DescentChain, DescentError> {
    descend(cfg, usize::MAX)
}
