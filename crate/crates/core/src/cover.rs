//! Canonical resolution of double planes.
//!
//! A plane branch curve of degree `2k` is given with a forest of (possibly
//! infinitely near) singular points. Blowing up a point of multiplicity `m`
//! with `a = ⌊m/2⌋` updates
//!
//! ```text
//! branch ← σ*branch − 2a·E,   L ← σ*L − a·E,   K ← σ*K + E
//! ```
//!
//! on the basis `{h, e_1, …, e_n}` (gram `diag(1, −1, …, −1)`); `e_i` belongs
//! to the i-th point as listed in the input. Pullbacks are the identity on
//! coordinates, so the state stores every class in the final basis from the start.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::DivisorClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("branch degree {0} is not a positive even integer")]
    BadDegree(i64),
    #[error("point {id} has multiplicity {mult}; singular points need multiplicity at least 2")]
    LowMultiplicity { id: String, mult: i64 },
    #[error("point id {0} is used twice")]
    DuplicateId(String),
    #[error("point {id} has unknown parent {parent}")]
    UnknownParent { id: String, parent: String },
    #[error("parent links through {0} form a cycle")]
    Cycle(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("order does not list each point once with parents first")]
    BadOrder,
    #[error("L·(L+K) = {0} is odd")]
    OddEuler(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfinitelyNearPoint {
    pub id: String,
    /// The point whose exceptional curve this one lies on; `None` for points of the plane.
    #[serde(default)]
    pub parent: Option<String>,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneBranchCurve {
    pub degree: i64,
    #[serde(default)]
    pub points: Vec<InfinitelyNearPoint>,
}

impl PlaneBranchCurve {
    pub fn new(degree: i64, points: Vec<InfinitelyNearPoint>) -> Result<Self, CoverError> {
        let curve = PlaneBranchCurve { degree, points };
        curve.check()?;
        Ok(curve)
    }

    /// Checks degree parity, multiplicities and that the parent links form a forest.
    pub fn check(&self) -> Result<(), CoverError> {
        if self.degree <= 0 || self.degree % 2 != 0 {
            return Err(CoverError::BadDegree(self.degree));
        }
        let mut ids = BTreeSet::new();
        for p in &self.points {
            if p.mult < 2 {
                return Err(CoverError::LowMultiplicity {
                    id: p.id.clone(),
                    mult: p.mult,
                });
            }
            if !ids.insert(p.id.as_str()) {
                return Err(CoverError::DuplicateId(p.id.clone()));
            }
        }
        for p in &self.points {
            if let Some(parent) = &p.parent {
                if !ids.contains(parent.as_str()) {
                    return Err(CoverError::UnknownParent {
                        id: p.id.clone(),
                        parent: parent.clone(),
                    });
                }
            }
        }
        self.topological_order().map(|_| ())
    }

    fn index_of(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    fn parent_index(&self, i: usize) -> Option<usize> {
        self.points[i]
            .parent
            .as_deref()
            .and_then(|p| self.index_of(p))
    }

    /// Point indices with every parent before its children; ties keep input order.
    pub fn topological_order(&self) -> Result<Vec<usize>, CoverError> {
        let n = self.points.len();
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let before = order.len();
            for i in 0..n {
                if !placed[i] && self.parent_index(i).is_none_or(|p| placed[p]) {
                    placed[i] = true;
                    order.push(i);
                }
            }
            if order.len() == before {
                let stuck = (0..n)
                    .find(|&i| !placed[i])
                    .expect("some point is unplaced");
                return Err(CoverError::Cycle(self.points[stuck].id.clone()));
            }
        }
        Ok(order)
    }

    pub fn children(&self, id: &str) -> Vec<&InfinitelyNearPoint> {
        self.points
            .iter()
            .filter(|p| p.parent.as_deref() == Some(id))
            .collect()
    }

    /// Whether the singularity rooted at `id` is negligible: a double point,
    /// or a triple point whose infinitely near points are at most double.
    pub fn is_negligible(&self, id: &str) -> Result<bool, CoverError> {
        let idx = self
            .index_of(id)
            .ok_or_else(|| CoverError::UnknownPoint(id.to_string()))?;
        let children: Vec<i64> = self.children(id).iter().map(|c| c.mult).collect();
        Ok(is_negligible(self.points[idx].mult, &children))
    }

    /// Negligibility verdict for every listed point.
    pub fn negligibility(&self) -> BTreeMap<String, bool> {
        self.points
            .iter()
            .map(|p| {
                let children: Vec<i64> = self.children(&p.id).iter().map(|c| c.mult).collect();
                (p.id.clone(), is_negligible(p.mult, &children))
            })
            .collect()
    }
}

pub fn is_negligible(mult: i64, children: &[i64]) -> bool {
    match mult {
        2 => true,
        3 => children.iter().all(|&m| m <= 2),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowUpRecord {
    pub id: String,
    pub mult: i64,
    /// `⌊m/2⌋`, the multiple of `E` removed from `L`.
    pub removed: i64,
    pub basis_index: usize,
    /// Change of `χ(O)` of the double cover caused by this point.
    pub chi_change: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionState {
    /// `h` then one `e_<id>` per point.
    pub labels: Vec<String>,
    pub l: DivisorClass,
    pub k: DivisorClass,
    pub branch: DivisorClass,
    pub log: Vec<BlowUpRecord>,
}

impl ResolutionState {
    /// Intersection form `diag(1, −1, …, −1)` of the blown-up plane.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> i64 {
        let (a, b) = (a.coords(), b.coords());
        a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
    }

    /// `L·(L+K)`.
    pub fn euler_term(&self) -> i64 {
        self.pair(&self.l, &(&self.l + &self.k))
    }

    pub fn k_square(&self) -> i64 {
        self.pair(&self.k, &self.k)
    }
}

pub fn canonical_resolution(curve: &PlaneBranchCurve) -> Result<ResolutionState, CoverError> {
    curve.check()?;
    let order = curve.topological_order()?;
    resolve_in_order(curve, &order)
}

/// Resolves the points in the given order, which must list parents before children.
pub fn resolve_in_order(
    curve: &PlaneBranchCurve,
    order: &[usize],
) -> Result<ResolutionState, CoverError> {
    curve.check()?;
    let n = curve.points.len();
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || seen[i] || curve.parent_index(i).is_some_and(|p| !seen[p]) {
            return Err(CoverError::BadOrder);
        }
        seen[i] = true;
    }
    if order.len() != n {
        return Err(CoverError::BadOrder);
    }

    let mut labels = vec!["h".to_string()];
    labels.extend(curve.points.iter().map(|p| format!("e_{}", p.id)));
    let k_half = curve.degree / 2;
    let h = DivisorClass::basis(n + 1, 0);
    let mut state = ResolutionState {
        labels,
        l: k_half * &h,
        k: -3 * &h,
        branch: curve.degree * &h,
        log: Vec::with_capacity(n),
    };
    for &i in order {
        let p = &curve.points[i];
        let e = DivisorClass::basis(n + 1, i + 1);
        let a = p.mult / 2;
        state.branch = &state.branch - &(2 * a * &e);
        state.l = &state.l - &(a * &e);
        state.k = &state.k + &e;
        state.log.push(BlowUpRecord {
            id: p.id.clone(),
            mult: p.mult,
            removed: a,
            basis_index: i + 1,
            chi_change: a * (1 - a) / 2,
        });
    }
    Ok(state)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DoublePlaneInvariants {
    pub chi: i64,
    #[serde(rename = "KV2")]
    pub kv2: i64,
}

/// `χ(O_V) = 2 + ½·L(L+K)` and `K_V² = 2(K+L)²` for the resolved double cover.
pub fn double_plane_invariants(
    state: &ResolutionState,
) -> Result<DoublePlaneInvariants, CoverError> {
    let e = state.euler_term();
    if e % 2 != 0 {
        return Err(CoverError::OddEuler(e));
    }
    let kl = &state.k + &state.l;
    Ok(DoublePlaneInvariants {
        chi: 2 + e / 2,
        kv2: 2 * state.pair(&kl, &kl),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(id: &str, parent: Option<&str>, mult: i64) -> InfinitelyNearPoint {
        InfinitelyNearPoint {
            id: id.into(),
            parent: parent.map(Into::into),
            mult,
        }
    }

    #[test]
    fn smooth_curves() {
        let sextic = PlaneBranchCurve::new(6, vec![]).unwrap();
        let st = canonical_resolution(&sextic).unwrap();
        assert_eq!(st.l.coords(), &[3]);
        assert_eq!(st.euler_term(), 0);
        assert_eq!(
            double_plane_invariants(&st).unwrap(),
            DoublePlaneInvariants { chi: 2, kv2: 0 }
        );

        let octic = PlaneBranchCurve::new(8, vec![]).unwrap();
        let st = canonical_resolution(&octic).unwrap();
        assert_eq!(
            double_plane_invariants(&st).unwrap(),
            DoublePlaneInvariants { chi: 4, kv2: 2 }
        );
    }

    #[test]
    fn nine_nodes() {
        let pts = (1..=9).map(|i| pt(&format!("p{i}"), None, 2)).collect();
        let st = canonical_resolution(&PlaneBranchCurve::new(6, pts).unwrap()).unwrap();
        let mut expected = vec![-1; 10];
        expected[0] = 3;
        assert_eq!(st.l.coords(), expected.as_slice());
        assert_eq!(st.branch, st.l.scaled(2));
        assert_eq!(st.k_square(), 0);
        assert_eq!(
            double_plane_invariants(&st).unwrap(),
            DoublePlaneInvariants { chi: 2, kv2: 0 }
        );
    }

    #[test]
    fn quadruple_point_changes_chi() {
        // ordinary quadruple point on a sextic: a = 2 lowers χ by one
        let st = canonical_resolution(&PlaneBranchCurve::new(6, vec![pt("q", None, 4)]).unwrap())
            .unwrap();
        assert_eq!(double_plane_invariants(&st).unwrap().chi, 1);
        assert_eq!(st.log[0].chi_change, -1);
    }

    #[test]
    fn negligibility() {
        let c = PlaneBranchCurve::new(
            8,
            vec![
                pt("n", None, 2),
                pt("q", None, 4),
                pt("t", None, 3),
                pt("t1", Some("t"), 2),
                pt("u", None, 3),
                pt("u1", Some("u"), 3),
            ],
        )
        .unwrap();
        assert!(c.is_negligible("n").unwrap());
        assert!(!c.is_negligible("q").unwrap());
        assert!(c.is_negligible("t").unwrap());
        assert!(!c.is_negligible("u").unwrap());
        assert!(c.is_negligible("missing").is_err());
    }

    #[test]
    fn malformed_input() {
        assert_eq!(
            PlaneBranchCurve::new(5, vec![]),
            Err(CoverError::BadDegree(5))
        );
        assert_eq!(
            PlaneBranchCurve::new(0, vec![]),
            Err(CoverError::BadDegree(0))
        );
        assert!(matches!(
            PlaneBranchCurve::new(6, vec![pt("a", None, 1)]),
            Err(CoverError::LowMultiplicity { .. })
        ));
        assert!(matches!(
            PlaneBranchCurve::new(6, vec![pt("a", None, 2), pt("a", None, 2)]),
            Err(CoverError::DuplicateId(_))
        ));
        assert!(matches!(
            PlaneBranchCurve::new(6, vec![pt("a", Some("b"), 2)]),
            Err(CoverError::UnknownParent { .. })
        ));
        assert!(matches!(
            PlaneBranchCurve::new(6, vec![pt("a", Some("b"), 2), pt("b", Some("a"), 2)]),
            Err(CoverError::Cycle(_))
        ));
    }

    #[test]
    fn order_must_respect_parents() {
        let c = PlaneBranchCurve::new(6, vec![pt("a", None, 2), pt("b", Some("a"), 2)]).unwrap();
        assert_eq!(resolve_in_order(&c, &[1, 0]), Err(CoverError::BadOrder));
        assert_eq!(resolve_in_order(&c, &[0]), Err(CoverError::BadOrder));
        assert!(resolve_in_order(&c, &[0, 1]).is_ok());
    }

    #[test]
    fn json_shape() {
        let c: PlaneBranchCurve = serde_json::from_str(
            r#"{"degree": 6, "points": [{"id": "p", "parent": null, "mult": 2}]}"#,
        )
        .unwrap();
        assert_eq!(c.points[0], pt("p", None, 2));
    }
}
