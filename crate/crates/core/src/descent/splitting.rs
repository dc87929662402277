//! Lattice certificate that the terminal branch curve splits as two cubics.
//!
//! At `t = 9`, `B'² = 2` the system `|B'|` maps the K3 surface two-to-one onto
//! the plane. Given the pullback `φ*C` of a cubic, the class `J` with
//! `2J = φ*C − ΣA_i` must exist, pass once through every `A_i` and satisfy the
//! Riemann–Roch effectivity bound `J² ≥ −2`.

use serde::Serialize;

use super::{require_valid, DescentError};
use crate::config::{BranchConfiguration, MIN_BRANCH_CURVES};
use crate::lattice::{DivisorClass, EvennessCertificate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    /// `J` in the lattice extended by the halves of the declared even classes.
    #[serde(rename = "J")]
    pub j: DivisorClass,
    pub extended_labels: Vec<String>,
    pub certificate: EvennessCertificate,
    #[serde(rename = "J_dot_A")]
    pub j_dot_a: Vec<i64>,
    pub multiplicity_one: bool,
    #[serde(rename = "J_square")]
    pub j_square: i64,
    pub effective_proxy: bool,
    pub passed: bool,
}

pub fn cubic_splitting_certificate(
    cfg: &BranchConfiguration,
    pullback: &DivisorClass,
) -> Result<SplittingReport, DescentError> {
    let report = require_valid(cfg)?;
    if report.t != MIN_BRANCH_CURVES || report.bprime_square != 2 {
        return Err(DescentError::NotTerminal {
            t: report.t,
            bprime_square: report.bprime_square,
        });
    }
    let lat = cfg.lattice();
    lat.check_dim(pullback)?;
    let target = cfg
        .branch_curves()
        .iter()
        .fold(pullback.clone(), |acc, a| acc - a);
    let certificate = lat.is_even(&target)?.ok_or(DescentError::NotEven)?;

    let ext = lat.with_halves();
    let m = lat.declared_even().len();
    let mut coords = certificate.quotient.padded(m).into_coords();
    for (k, &eps) in certificate.coefficients.iter().enumerate() {
        coords[lat.rank() + k] = i64::from(eps);
    }
    let j = DivisorClass::new(coords);
    let j_dot_a = cfg
        .branch_curves()
        .iter()
        .map(|a| ext.pair(&j, &a.padded(m)))
        .collect::<Result<Vec<_>, _>>()?;
    let j_square = ext.square(&j)?;
    let multiplicity_one = j_dot_a.iter().all(|&p| p == 1);
    let effective_proxy = j_square >= -2;
    Ok(SplittingReport {
        j,
        extended_labels: ext.labels().to_vec(),
        certificate,
        j_dot_a,
        multiplicity_one,
        j_square,
        effective_proxy,
        passed: multiplicity_one && effective_proxy,
    })
}
