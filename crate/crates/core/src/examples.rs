//! Shipped fixtures.
//!
//! Configuration fixtures model the Picard lattice only as far as the
//! construction needs: the relevant curve classes and their pairings, with
//! 2-divisibility supplied through `declared_even`.
//!
//! * `kummer` (`j = 0..7`): a quartic Kummer surface, `h² = 4`, sixteen
//!   disjoint nodes `N_i`, `ΣN_i` even. `B' = 2h − N_1 − … − N_j` is a quadric
//!   section through `j` nodes and the other `16 − j` nodes are branch curves.
//! * `non-kummer-2`, `non-kummer-3`: `H = π*T` for a line `T` on a double plane,
//!   `H² = 2`; `A_1`, `A_2` meet `H` twice each (they split the conic), the
//!   remaining nine are disjoint from it.
//! * `a17`: a quartic with an `A_17` and an `A_1` point. The chain
//!   `A_1 – E_1 – A_2 – … – E_8 – A_9` resolves the `A_17` point and `l` the node.
//!   The pairings `H·l = 2` and `(H + l)² = 4` come from the quartic's hyperplane
//!   class `H + l` restricted away from the chain.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::{self, BranchConfiguration};
use crate::cover::{self, InfinitelyNearPoint, PlaneBranchCurve};
use crate::descent::{check_sd_case, SdCase, SdDocument, SdKind};
use crate::lattice::{DivisorClass, IntLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExampleError {
    #[error("unknown example {0}")]
    Unknown(String),
    #[error("kummer parameter j = {0} is outside 0..=7")]
    BadJ(usize),
    #[error("example {0} takes no parameter")]
    NoParameter(String),
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Configuration(BranchConfiguration),
    Plane(PlaneBranchCurve),
    SaintDonat(SdDocument),
}

impl Fixture {
    pub fn to_json(&self) -> Value {
        match self {
            Fixture::Configuration(c) => serde_json::to_value(c),
            Fixture::Plane(p) => serde_json::to_value(p),
            Fixture::SaintDonat(s) => serde_json::to_value(s),
        }
        .expect("fixtures serialize")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureKind {
    Configuration,
    Plane,
    SaintDonat,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(rename = "K2", skip_serializing_if = "Option::is_none")]
    pub k2: Option<i64>,
    #[serde(rename = "Bprime_square", skip_serializing_if = "Option::is_none")]
    pub bprime_square: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(rename = "KV2", skip_serializing_if = "Option::is_none")]
    pub kv2: Option<i64>,
    #[serde(rename = "D_square", skip_serializing_if = "Option::is_none")]
    pub d_square: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureDescriptor {
    pub name: &'static str,
    pub kind: FixtureKind,
    pub summary: &'static str,
    pub params: Value,
    pub expected: Expected,
}

pub const NAMES: &[&str] = &[
    "kummer",
    "kunev",
    "non-kummer-2",
    "non-kummer-3",
    "a17",
    "sextic",
    "octic",
    "two-cubics",
    "a17-plane",
    "sd-i",
    "sd-ii",
    "sd-iii-a",
    "sd-iii-b",
];

fn a1s(n: usize) -> Vec<String> {
    vec!["A(1)".to_string(); n]
}

pub fn describe(name: &str) -> Result<FixtureDescriptor, ExampleError> {
    let cfg = |t: usize, census: Vec<String>| Expected {
        t: Some(t),
        k2: Some(t as i64 - 8),
        bprime_square: Some(2 * (t as i64 - 8)),
        census: Some(census),
        ..Expected::default()
    };
    let plane = |chi, kv2| Expected {
        chi: Some(chi),
        kv2,
        ..Expected::default()
    };
    let sd = |d2| Expected {
        d_square: Some(d2),
        ..Expected::default()
    };
    let (name, kind, summary, params, expected) = match name {
        "kummer" => (
            "kummer",
            FixtureKind::Configuration,
            "Double cover of a 16-nodal quartic branched over the nodes and a quadric section through j of them; K^2 = 8 - j.",
            json!({"j": 0, "j_range": [0, 7]}),
            cfg(16, a1s(16)),
        ),
        "kunev" => (
            "kunev",
            FixtureKind::Configuration,
            "The j = 7 Kummer case, K^2 = p_g = 1: the Kunev surface, a bidouble cover of the plane branched over two cubics and a line.",
            json!({"j": 7}),
            cfg(9, a1s(9)),
        ),
        "non-kummer-2" => (
            "non-kummer-2",
            FixtureKind::Configuration,
            "Eleven disjoint nodal curves on a double plane, two of them over a conic; branch |H + A_2| plus A_2..A_11 gives K^2 = 2.",
            json!({"variant": "two"}),
            cfg(10, a1s(10)),
        ),
        "non-kummer-3" => (
            "non-kummer-3",
            FixtureKind::Configuration,
            "Same lattice as non-kummer-2 with branch |H + A_1 + A_2| plus all eleven curves; K^2 = 3.",
            json!({"variant": "three"}),
            cfg(11, a1s(11)),
        ),
        "a17" => (
            "a17",
            FixtureKind::Configuration,
            "Quartic with an A_17 and an A_1 point; nine alternate chain curves and the node curve are branch curves, K^2 = 2.",
            json!({"plane": "a17-plane"}),
            cfg(10, vec!["A(17)".to_string(), "A(1)".to_string()]),
        ),
        "sextic" => (
            "sextic",
            FixtureKind::Plane,
            "Smooth plane sextic: its double plane is a K3 surface.",
            json!({"degree": 6}),
            plane(2, Some(0)),
        ),
        "octic" => (
            "octic",
            FixtureKind::Plane,
            "Smooth plane octic.",
            json!({"degree": 8}),
            plane(4, Some(2)),
        ),
        "two-cubics" => (
            "two-cubics",
            FixtureKind::Plane,
            "Two general cubics meeting in nine nodes.",
            json!({"degree": 6, "nodes": 9}),
            plane(2, Some(0)),
        ),
        "a17-plane" => (
            "a17-plane",
            FixtureKind::Plane,
            "Two nodal cubics with a contact of order nine at one point (nine infinitely near double points) plus their two nodes.",
            json!({"degree": 6, "chain": 9, "nodes": 2}),
            plane(2, Some(0)),
        ),
        "sd-i" => ("sd-i", FixtureKind::SaintDonat, "D = 4E + 2G with E.G = 1.", json!({"case": "i"}), sd(8)),
        "sd-ii" => (
            "sd-ii",
            FixtureKind::SaintDonat,
            "D = 3E + 2G0 + G1 with E.G0 = 1, E.G1 = 0, G0.G1 = 1.",
            json!({"case": "ii"}),
            sd(6),
        ),
        "sd-iii-a" => (
            "sd-iii-a",
            FixtureKind::SaintDonat,
            "D = 2E + G0 + G1 with two disjoint sections of the pencil.",
            json!({"case": "iii.a"}),
            sd(4),
        ),
        "sd-iii-b" => (
            "sd-iii-b",
            FixtureKind::SaintDonat,
            "D = 2E + 2G0 + G1 + G2, the chain with N = 0.",
            json!({"case": "iii.b", "N": 0}),
            sd(4),
        ),
        other => return Err(ExampleError::Unknown(other.to_string())),
    };
    Ok(FixtureDescriptor {
        name,
        kind,
        summary,
        params,
        expected,
    })
}

pub fn list() -> Vec<FixtureDescriptor> {
    NAMES
        .iter()
        .map(|n| describe(n).expect("listed names resolve"))
        .collect()
}

/// Builds a fixture; `j` is only accepted by `kummer`.
pub fn build(name: &str, j: Option<usize>) -> Result<Fixture, ExampleError> {
    if j.is_some() && name != "kummer" {
        return Err(ExampleError::NoParameter(name.to_string()));
    }
    Ok(match name {
        "kummer" => Fixture::Configuration(kummer_config(j.unwrap_or(0))?),
        "kunev" => Fixture::Configuration(kummer_config(7)?),
        "non-kummer-2" => Fixture::Configuration(non_kummer_config(NonKummer::Two)),
        "non-kummer-3" => Fixture::Configuration(non_kummer_config(NonKummer::Three)),
        "a17" => Fixture::Configuration(a17_config()),
        "sextic" => Fixture::Plane(smooth_plane(6)),
        "octic" => Fixture::Plane(smooth_plane(8)),
        "two-cubics" => Fixture::Plane(two_cubics_plane()),
        "a17-plane" => Fixture::Plane(a17_plane()),
        "sd-i" => Fixture::SaintDonat(sd_fixture(SdKind::ConeOverQuartic, 0)),
        "sd-ii" => Fixture::SaintDonat(sd_fixture(SdKind::ConeOverCubic, 0)),
        "sd-iii-a" => Fixture::SaintDonat(sd_fixture(SdKind::QuadricConeA, 0)),
        "sd-iii-b" => Fixture::SaintDonat(sd_fixture(SdKind::QuadricConeB, 0)),
        other => return Err(ExampleError::Unknown(other.to_string())),
    })
}

fn lattice(labels: Vec<String>, gram: Vec<Vec<i64>>, declared: Vec<DivisorClass>) -> IntLattice {
    IntLattice::new(labels, gram, declared).expect("fixture lattices are well formed")
}

fn configuration(
    lat: IntLattice,
    bprime: DivisorClass,
    a: Vec<DivisorClass>,
    inventory: Vec<DivisorClass>,
) -> BranchConfiguration {
    BranchConfiguration::new(lat, bprime, a, inventory, true)
        .expect("fixture classes fit the lattice")
}

pub fn kummer_config(j: usize) -> Result<BranchConfiguration, ExampleError> {
    if j > 7 {
        return Err(ExampleError::BadJ(j));
    }
    let n = 17;
    let mut gram = vec![vec![0; n]; n];
    gram[0][0] = 4;
    for (i, row) in gram.iter_mut().enumerate().skip(1) {
        row[i] = -2;
    }
    let mut labels = vec!["h".to_string()];
    labels.extend((1..=16).map(|i| format!("N{i}")));
    let nodes = DivisorClass::new((0..n).map(|i| i64::from(i > 0)).collect());
    let lat = lattice(labels, gram, vec![nodes]);
    let node = |i: usize| DivisorClass::basis(n, i);
    let bprime = (1..=j).fold(DivisorClass::basis(n, 0).scaled(2), |acc, i| acc - node(i));
    let a = (j + 1..=16).map(node).collect();
    let inventory = (1..=j).map(node).collect();
    Ok(configuration(lat, bprime, a, inventory))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonKummer {
    Two,
    Three,
}

pub fn non_kummer_config(variant: NonKummer) -> BranchConfiguration {
    let n = 12;
    let mut gram = vec![vec![0; n]; n];
    gram[0][0] = 2;
    for i in 1..n {
        gram[i][i] = -2;
    }
    for i in [1, 2] {
        gram[0][i] = 2;
        gram[i][0] = 2;
    }
    let mut labels = vec!["H".to_string()];
    labels.extend((1..=11).map(|i| format!("A{i}")));
    let declared = DivisorClass::new((0..n).map(|i| i64::from(i == 0 || i >= 3)).collect());
    let lat = lattice(labels, gram, vec![declared]);
    let e = |i: usize| DivisorClass::basis(n, i);
    match variant {
        NonKummer::Two => configuration(lat, e(0) + e(2), (2..=11).map(e).collect(), vec![e(1)]),
        NonKummer::Three => {
            configuration(lat, e(0) + e(1) + e(2), (1..=11).map(e).collect(), vec![])
        }
    }
}

/// Basis `H, l, A_1..A_9, E_1..E_8`.
pub fn a17_config() -> BranchConfiguration {
    let n = 19;
    let (h, l) = (0, 1);
    let a = |i: usize| 1 + i; // A_i, i = 1..9
    let e = |i: usize| 10 + i; // E_i, i = 1..8
    let mut gram = vec![vec![0; n]; n];
    gram[h][h] = 2;
    gram[l][l] = -2;
    gram[h][l] = 2;
    gram[l][h] = 2;
    for i in 2..n {
        gram[i][i] = -2;
    }
    for i in 1..=8 {
        for (x, y) in [(a(i), e(i)), (e(i), a(i + 1))] {
            gram[x][y] = 1;
            gram[y][x] = 1;
        }
    }
    let mut labels = vec!["H".to_string(), "l".to_string()];
    labels.extend((1..=9).map(|i| format!("A{i}")));
    labels.extend((1..=8).map(|i| format!("E{i}")));
    let b = |i| DivisorClass::basis(n, i);
    let bprime = b(h) + b(l);
    let mut branch: Vec<DivisorClass> = (1..=9).map(|i| b(a(i))).collect();
    branch.push(b(l));
    let full_branch = branch.iter().fold(bprime.clone(), |acc, c| acc + c);
    let lat = lattice(labels, gram, vec![full_branch]);
    configuration(lat, bprime, branch, (1..=8).map(|i| b(e(i))).collect())
}

fn point(id: String, parent: Option<String>, mult: i64) -> InfinitelyNearPoint {
    InfinitelyNearPoint { id, parent, mult }
}

pub fn smooth_plane(degree: i64) -> PlaneBranchCurve {
    PlaneBranchCurve::new(degree, vec![]).expect("even degree")
}

pub fn two_cubics_plane() -> PlaneBranchCurve {
    let pts = (1..=9).map(|i| point(format!("p{i}"), None, 2)).collect();
    PlaneBranchCurve::new(6, pts).expect("well formed")
}

pub fn a17_plane() -> PlaneBranchCurve {
    let mut pts: Vec<InfinitelyNearPoint> = (1..=9)
        .map(|i| point(format!("q{i}"), (i > 1).then(|| format!("q{}", i - 1)), 2))
        .collect();
    pts.push(point("n1".into(), None, 2));
    pts.push(point("n2".into(), None, 2));
    PlaneBranchCurve::new(6, pts).expect("well formed")
}

/// Rank `1 + #Γ` lattice on `E, Γ_0, …` carrying exactly the pairing table of
/// the case; `chain` is `N` for iii.b and ignored otherwise.
pub fn sd_fixture(kind: SdKind, chain: usize) -> SdDocument {
    let (coeff_e, coeffs, pairs): (i64, Vec<i64>, Vec<(usize, usize)>) = match kind {
        SdKind::ConeOverQuartic => (4, vec![2], vec![(0, 1)]),
        SdKind::ConeOverCubic => (3, vec![2, 1], vec![(0, 1), (1, 2)]),
        SdKind::QuadricConeA => (2, vec![1, 1], vec![(0, 1), (0, 2)]),
        SdKind::QuadricConeB => {
            let mut coeffs = vec![2; chain + 1];
            coeffs.extend([1, 1]);
            let mut pairs = vec![(0, 1)];
            pairs.extend((1..=chain).map(|i| (i, i + 1)));
            pairs.push((chain + 1, chain + 2));
            pairs.push((chain + 1, chain + 3));
            (2, coeffs, pairs)
        }
    };
    let n = 1 + coeffs.len();
    let mut gram = vec![vec![0; n]; n];
    for (i, row) in gram.iter_mut().enumerate().skip(1) {
        row[i] = -2;
    }
    for (x, y) in pairs {
        gram[x][y] = 1;
        gram[y][x] = 1;
    }
    let mut labels = vec!["E".to_string()];
    labels.extend((0..n - 1).map(|i| format!("G{i}")));
    let lat = lattice(labels, gram, vec![]);
    let mut d = vec![coeff_e];
    d.extend(coeffs);
    SdDocument {
        lattice: lat,
        d: DivisorClass::new(d),
        case: SdCase {
            kind,
            elliptic: DivisorClass::basis(n, 0),
            gammas: (1..n).map(|i| DivisorClass::basis(n, i)).collect(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub mismatches: Vec<String>,
}

fn compare<T: PartialEq + std::fmt::Debug>(
    out: &mut Vec<String>,
    what: &str,
    expected: &Option<T>,
    got: T,
) {
    if let Some(e) = expected {
        if *e != got {
            out.push(format!("{what}: expected {e:?}, got {got:?}"));
        }
    }
}

fn check_configuration(cfg: &BranchConfiguration, expected: &Expected, out: &mut Vec<String>) {
    let report = config::validate(cfg);
    if !report.passed {
        out.push(format!("validation failed: {}", report.summary()));
        return;
    }
    compare(out, "t", &expected.t, report.t);
    compare(out, "B'^2", &expected.bprime_square, report.bprime_square);
    match config::invariants(cfg) {
        Ok(inv) => compare(out, "K^2", &expected.k2, inv.k2),
        Err(e) => out.push(e.to_string()),
    }
    match config::xi_graph(cfg) {
        Ok(xi) => compare(
            out,
            "census",
            &expected.census,
            xi.census().iter().map(ToString::to_string).collect(),
        ),
        Err(e) => out.push(e.to_string()),
    }
}

/// Rebuilds a fixture and compares it with its descriptor. `kummer` is
/// checked for every `j`.
pub fn check(name: &str) -> Result<CheckOutcome, ExampleError> {
    let desc = describe(name)?;
    let mut out = Vec::new();
    match build(name, None)? {
        Fixture::Configuration(cfg) => {
            check_configuration(&cfg, &desc.expected, &mut out);
            if name == "kummer" {
                for j in 1..=7 {
                    let t = 16 - j;
                    let expected = Expected {
                        t: Some(t),
                        k2: Some(8 - j as i64),
                        bprime_square: Some(2 * (t as i64 - 8)),
                        census: Some(a1s(t)),
                        ..Expected::default()
                    };
                    let mut local = Vec::new();
                    check_configuration(&kummer_config(j)?, &expected, &mut local);
                    out.extend(local.into_iter().map(|m| format!("j = {j}: {m}")));
                }
            }
            if let Some(plane) = desc.params.get("plane").and_then(Value::as_str) {
                if let Fixture::Plane(p) = build(plane, None)? {
                    if !p.negligibility().values().all(|&b| b) {
                        out.push(format!("linked plane {plane} has a non-negligible point"));
                    }
                }
            }
        }
        Fixture::Plane(p) => {
            match cover::canonical_resolution(&p).and_then(|s| cover::double_plane_invariants(&s)) {
                Ok(inv) => {
                    compare(&mut out, "chi", &desc.expected.chi, inv.chi);
                    compare(&mut out, "KV2", &desc.expected.kv2, inv.kv2);
                }
                Err(e) => out.push(e.to_string()),
            }
        }
        Fixture::SaintDonat(doc) => {
            match check_sd_case(&doc.lattice, &doc.d, &doc.case) {
                Ok(f) => out.extend(f),
                Err(e) => out.push(e.to_string()),
            }
            match doc.lattice.square(&doc.d) {
                Ok(d2) => compare(&mut out, "D^2", &desc.expected.d_square, d2),
                Err(e) => out.push(e.to_string()),
            }
        }
    }
    Ok(CheckOutcome {
        name: name.to_string(),
        passed: out.is_empty(),
        mismatches: out,
    })
}

pub fn check_all() -> Vec<CheckOutcome> {
    NAMES
        .iter()
        .map(|n| check(n).expect("listed names resolve"))
        .collect()
}
