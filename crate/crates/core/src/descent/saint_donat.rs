//! Non-birational linear systems on K3 surfaces with singular image.
//!
//! Each case writes `D` through an elliptic class `E` (`E² = 0`, `E·D = 2`)
//! and a few (−2)-curves `Γ_i` with a fixed pairing table.

use serde::{Deserialize, Serialize};

use super::DescentError;
use crate::config::BranchConfiguration;
use crate::lattice::{DivisorClass, IntLattice, LatticeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SdKind {
    /// `D = 4E + 2Γ`.
    #[serde(rename = "i")]
    ConeOverQuartic,
    /// `D = 3E + 2Γ₀ + Γ₁`.
    #[serde(rename = "ii")]
    ConeOverCubic,
    /// `D = 2E + Γ₀ + Γ₁` with `Γ₀`, `Γ₁` disjoint.
    #[serde(rename = "iii.a")]
    QuadricConeA,
    /// `D = 2E + 2Γ₀ + … + 2Γ_N + Γ_{N+1} + Γ_{N+2}`.
    #[serde(rename = "iii.b")]
    QuadricConeB,
}

impl SdKind {
    /// Coefficients of `E` and of each `Γ_i` in `D`, or `None` if `gammas`
    /// has the wrong length for the case.
    fn decomposition(self, gammas: usize) -> Option<(i64, Vec<i64>)> {
        match (self, gammas) {
            (SdKind::ConeOverQuartic, 1) => Some((4, vec![2])),
            (SdKind::ConeOverCubic, 2) => Some((3, vec![2, 1])),
            (SdKind::QuadricConeA, 2) => Some((2, vec![1, 1])),
            (SdKind::QuadricConeB, n) if n >= 3 => {
                let mut coeffs = vec![2; n - 2];
                coeffs.extend([1, 1]);
                Some((2, coeffs))
            }
            _ => None,
        }
    }

    /// Required `E·Γ_i` and `Γ_i·Γ_j` (`i < j`).
    fn pairings(self, n: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
        let mut gg = vec![vec![0; n]; n];
        let mut eg = vec![0; n];
        match self {
            SdKind::ConeOverQuartic => eg[0] = 1,
            SdKind::ConeOverCubic => {
                eg[0] = 1;
                gg[0][1] = 1;
            }
            SdKind::QuadricConeA => {
                eg[0] = 1;
                eg[1] = 1;
            }
            SdKind::QuadricConeB => {
                // chain Γ₀ – … – Γ_N with Γ_{N+1}, Γ_{N+2} both on Γ_N; only Γ₀ meets E
                let big_n = n - 3;
                eg[0] = 1;
                for i in 0..big_n {
                    gg[i][i + 1] = 1;
                }
                gg[big_n][big_n + 1] = 1;
                gg[big_n][big_n + 2] = 1;
            }
        }
        (eg, gg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdCase {
    #[serde(rename = "case")]
    pub kind: SdKind,
    #[serde(rename = "E")]
    pub elliptic: DivisorClass,
    pub gammas: Vec<DivisorClass>,
}

impl SdCase {
    /// `N` for case iii.b.
    pub fn chain_length(&self) -> Option<usize> {
        (self.kind == SdKind::QuadricConeB && self.gammas.len() >= 3).then(|| self.gammas.len() - 3)
    }
}

/// Wire form: `{"lattice", "D", "case", "E", "gammas"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SdDocument {
    pub lattice: IntLattice,
    #[serde(rename = "D")]
    pub d: DivisorClass,
    #[serde(flatten)]
    pub case: SdCase,
}

/// Every way in which `case` fails to describe `d`; empty when it does.
pub fn check_sd_case(
    lat: &IntLattice,
    d: &DivisorClass,
    case: &SdCase,
) -> Result<Vec<String>, LatticeError> {
    lat.check_dim(d)?;
    lat.check_dim(&case.elliptic)?;
    for g in &case.gammas {
        lat.check_dim(g)?;
    }
    let e = &case.elliptic;
    let mut failures = Vec::new();
    let e2 = lat.square(e)?;
    if e2 != 0 {
        failures.push(format!("E^2 = {e2}, expected 0"));
    }
    let ed = lat.pair(e, d)?;
    if ed != 2 {
        failures.push(format!("E.D = {ed}, expected 2"));
    }
    for (i, g) in case.gammas.iter().enumerate() {
        let s = lat.square(g)?;
        if s != -2 {
            failures.push(format!("gamma {i} has square {s}, expected -2"));
        }
    }
    let Some((ce, cg)) = case.kind.decomposition(case.gammas.len()) else {
        failures.push(format!(
            "{} curves do not fit case {:?}",
            case.gammas.len(),
            case.kind
        ));
        return Ok(failures);
    };
    let combo = case
        .gammas
        .iter()
        .zip(&cg)
        .fold(e.scaled(ce), |acc, (g, &c)| acc + g.scaled(c));
    if &combo != d {
        failures.push(format!("D = {d} but the case decomposition gives {combo}"));
    }
    let (eg, gg) = case.kind.pairings(case.gammas.len());
    for (i, g) in case.gammas.iter().enumerate() {
        let p = lat.pair(e, g)?;
        if p != eg[i] {
            failures.push(format!("E.gamma {i} = {p}, expected {}", eg[i]));
        }
        for j in i + 1..case.gammas.len() {
            let p = lat.pair(g, &case.gammas[j])?;
            if p != gg[i][j] {
                failures.push(format!("gamma {i}.gamma {j} = {p}, expected {}", gg[i][j]));
            }
        }
    }
    Ok(failures)
}

pub fn verify_sd_case(lat: &IntLattice, d: &DivisorClass, case: &SdCase) -> bool {
    check_sd_case(lat, d, case).is_ok_and(|f| f.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    /// Index `i` of `Γ_i`.
    pub gamma: usize,
    /// `"E"` or `"gamma k"`: a curve pairing oddly with the branch class that
    /// would contain `Γ_i`.
    pub witness: String,
    pub pairing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SdExclusions {
    /// One entry per `Γ_0, …, Γ_N`.
    pub excluded: Vec<Exclusion>,
    /// Excluded indices that are nonetheless branch curves of the configuration.
    pub violated_by_config: Vec<usize>,
}

/// Shows that none of `Γ_0, …, Γ_N` can be a branch curve when `B' ~ D` falls
/// under case iii.b: adding `Γ_i` to the branch makes some curve pair oddly with it.
pub fn sd_exclusions(
    cfg: &BranchConfiguration,
    case: &SdCase,
) -> Result<SdExclusions, DescentError> {
    let Some(big_n) = case.chain_length() else {
        return Err(DescentError::NotQuadricConeB);
    };
    let lat = cfg.lattice();
    let others: Vec<(String, &DivisorClass)> = std::iter::once(("E".to_string(), &case.elliptic))
        .chain(
            case.gammas
                .iter()
                .enumerate()
                .map(|(k, g)| (format!("gamma {k}"), g)),
        )
        .collect();
    let mut excluded = Vec::new();
    let mut violated_by_config = Vec::new();
    for (i, gamma) in case.gammas.iter().enumerate().take(big_n + 1) {
        let is_branch = cfg.branch_curves().contains(gamma);
        if is_branch {
            violated_by_config.push(i);
        }
        let branch = if is_branch {
            cfg.branch_class()
        } else {
            cfg.branch_class() + gamma
        };
        let mut witness = None;
        for (name, c) in &others {
            let p = lat.pair(c, &branch)?;
            if p % 2 != 0 {
                witness = Some(Exclusion {
                    gamma: i,
                    witness: name.clone(),
                    pairing: p,
                });
                break;
            }
        }
        excluded.push(witness.ok_or(DescentError::NoWitness(i))?);
    }
    Ok(SdExclusions {
        excluded,
        violated_by_config,
    })
}
