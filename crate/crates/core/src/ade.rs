//! Dual graphs of (−2)-curve configurations and their Dynkin types.
//!
//! A [`DualGraph`] is built from classes of square −2 whose pairwise
//! intersections are 0 or 1. Connected components are classified as
//! `A_n`, `D_n`, `E_6`, `E_7`, `E_8` by the shape of the tree, fundamental
//! cycles are computed by Laufer's incremental algorithm, and
//! [`even_markings`] lists the vertex subsets that a 2-divisible branch
//! divisor could contain.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lattice::gf2::{self, BitVector};
use crate::lattice::{DivisorClass, IntLattice, LatticeError};

/// Largest component for which markings are enumerated.
pub const MARKING_RANK_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("vertex {index} has self-intersection {square}, expected -2")]
    NotNodal { index: usize, square: i64 },
    #[error("vertices {0} and {1} have pairing {2}; only 0 or 1 is allowed")]
    NonSimple(usize, usize, i64),
    #[error("adjacency matrix is not a symmetric 0/1 matrix with zero diagonal")]
    BadAdjacency,
    #[error("component is empty")]
    EmptyComponent,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("component is not connected")]
    Disconnected,
    #[error("component is not of ADE type")]
    NotAde,
    #[error("component has {0} vertices, marking enumeration is capped at {MARKING_RANK_CAP}")]
    TooLarge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    NotAde,
}

impl DynkinType {
    pub fn rank(self) -> Option<usize> {
        match self {
            DynkinType::A(n) | DynkinType::D(n) => Some(n),
            DynkinType::E6 => Some(6),
            DynkinType::E7 => Some(7),
            DynkinType::E8 => Some(8),
            DynkinType::NotAde => None,
        }
    }

    pub fn is_ade(self) -> bool {
        self != DynkinType::NotAde
    }

    /// Every ADE type of rank at most `max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<DynkinType> {
        let mut out: Vec<DynkinType> = (1..=max_rank).map(DynkinType::A).collect();
        out.extend((4..=max_rank).map(DynkinType::D));
        for (e, n) in [
            (DynkinType::E6, 6),
            (DynkinType::E7, 7),
            (DynkinType::E8, 8),
        ] {
            if n <= max_rank {
                out.push(e);
            }
        }
        out
    }

    /// Adjacency matrix of the Dynkin diagram in a fixed labeling.
    ///
    /// `A_n` is the path `0 – 1 – … – n−1`. `D_n` has fork ends `0` and `1`
    /// attached to `2`, followed by the chain `2 – 3 – … – n−1`. `E_n` is the
    /// chain `0 – … – n−2` with vertex `n−1` attached to vertex `2`.
    pub fn diagram(self) -> Option<Vec<Vec<u8>>> {
        let n = self.rank()?;
        let mut adj = vec![vec![0u8; n]; n];
        let mut link = |a: usize, b: usize| {
            adj[a][b] = 1;
            adj[b][a] = 1;
        };
        match self {
            DynkinType::A(_) => (1..n).for_each(|i| link(i - 1, i)),
            DynkinType::D(_) => {
                link(0, 2);
                (2..n).for_each(|i| link(i - 1, i));
            }
            _ => {
                (1..n - 1).for_each(|i| link(i - 1, i));
                link(2, n - 1);
            }
        }
        Some(adj)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A({n})"),
            DynkinType::D(n) => write!(f, "D({n})"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
            DynkinType::NotAde => write!(f, "NotADE"),
        }
    }
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Simple graph on (−2)-classes with adjacency given by their pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<DivisorClass>,
    adjacency: Vec<Vec<u8>>,
}

impl DualGraph {
    pub fn vertices(&self) -> &[DivisorClass] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &[Vec<u8>] {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Graph from a bare adjacency matrix; vertex `i` becomes the `i`-th basis
    /// vector of the lattice with Gram matrix `−2·I + adjacency`.
    pub fn from_adjacency(adjacency: Vec<Vec<u8>>) -> Result<DualGraph, AdeError> {
        let n = adjacency.len();
        for i in 0..n {
            if adjacency[i].len() != n || adjacency[i][i] != 0 {
                return Err(AdeError::BadAdjacency);
            }
            for j in 0..n {
                if adjacency[i][j] > 1 || adjacency[i][j] != adjacency[j][i] {
                    return Err(AdeError::BadAdjacency);
                }
            }
        }
        let vertices = (0..n).map(|i| DivisorClass::basis(n, i)).collect();
        Ok(DualGraph {
            vertices,
            adjacency,
        })
    }

    /// The lattice `−2·I + adjacency` on which [`DualGraph::from_adjacency`] vertices live.
    pub fn nodal_lattice(&self) -> Result<IntLattice, LatticeError> {
        let gram = self
            .adjacency
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &a)| if i == j { -2 } else { i64::from(a) })
                    .collect()
            })
            .collect();
        IntLattice::from_gram(gram)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 1)
            .map(|(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn check_component(&self, component: &[usize]) -> Result<(), AdeError> {
        if component.is_empty() {
            return Err(AdeError::EmptyComponent);
        }
        if let Some(&bad) = component.iter().find(|&&v| v >= self.len()) {
            return Err(AdeError::UnknownVertex(bad));
        }
        let mut seen = vec![false; self.len()];
        seen[component[0]] = true;
        let mut stack = vec![component[0]];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if component.contains(&w) && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != component.len() {
            return Err(AdeError::Disconnected);
        }
        Ok(())
    }

    fn edges_within(&self, component: &[usize]) -> usize {
        component
            .iter()
            .map(|&v| self.neighbors(v).filter(|w| component.contains(w)).count())
            .sum::<usize>()
            / 2
    }
}

/// Dual graph of `curves`; every curve must have square −2 and distinct curves
/// must meet in 0 or 1 points.
pub fn build_dual_graph(lat: &IntLattice, curves: &[DivisorClass]) -> Result<DualGraph, AdeError> {
    let n = curves.len();
    let mut adjacency = vec![vec![0u8; n]; n];
    for (i, c) in curves.iter().enumerate() {
        let square = lat.square(c)?;
        if square != -2 {
            return Err(AdeError::NotNodal { index: i, square });
        }
        for j in 0..i {
            match lat.pair(c, &curves[j])? {
                0 => {}
                1 => {
                    adjacency[i][j] = 1;
                    adjacency[j][i] = 1;
                }
                p => return Err(AdeError::NonSimple(j, i, p)),
            }
        }
    }
    Ok(DualGraph {
        vertices: curves.to_vec(),
        adjacency,
    })
}

/// A connected component together with its Dynkin type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdeComponent {
    pub vertices: Vec<usize>,
    #[serde(rename = "type")]
    pub dynkin: DynkinType,
}

/// Dynkin type of a connected component, read off from the shape of the tree.
pub fn classify(g: &DualGraph, component: &[usize]) -> Result<DynkinType, AdeError> {
    g.check_component(component)?;
    let n = component.len();
    if g.edges_within(component) != n - 1 {
        return Ok(DynkinType::NotAde);
    }
    let degree = |v: usize| g.neighbors(v).filter(|w| component.contains(w)).count();
    let branch: Vec<usize> = component
        .iter()
        .copied()
        .filter(|&v| degree(v) >= 3)
        .collect();
    match branch.as_slice() {
        [] => Ok(DynkinType::A(n)),
        [center] if degree(*center) == 3 => {
            let mut legs: Vec<usize> = g
                .neighbors(*center)
                .filter(|w| component.contains(w))
                .map(|first| {
                    // walk outward until the end of the leg
                    let (mut prev, mut cur, mut len) = (*center, first, 1);
                    while let Some(next) = g
                        .neighbors(cur)
                        .find(|&w| w != prev && component.contains(&w))
                    {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            legs.sort_unstable();
            Ok(match legs.as_slice() {
                [1, 1, k] => DynkinType::D(k + 3),
                [1, 2, 2] => DynkinType::E6,
                [1, 2, 3] => DynkinType::E7,
                [1, 2, 4] => DynkinType::E8,
                _ => DynkinType::NotAde,
            })
        }
        _ => Ok(DynkinType::NotAde),
    }
}

/// Classifies every connected component of `g`.
pub fn classify_components(g: &DualGraph) -> Vec<AdeComponent> {
    g.components()
        .into_iter()
        .map(|vertices| {
            let dynkin = classify(g, &vertices).expect("components are connected");
            AdeComponent { vertices, dynkin }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalCycle {
    /// Component vertices, sorted; `multiplicities[i]` belongs to `vertices[i]`.
    pub vertices: Vec<usize>,
    pub multiplicities: Vec<i64>,
    pub class: DivisorClass,
    pub self_intersection: i64,
}

impl FundamentalCycle {
    pub fn multiplicity_of(&self, vertex: usize) -> i64 {
        self.vertices
            .iter()
            .position(|&v| v == vertex)
            .map_or(0, |i| self.multiplicities[i])
    }
}

/// Minimal positive cycle `Z` with `Z·v ≤ 0` for every vertex of the component.
///
/// Starts from a single vertex and adds any vertex `v` with `Z·v > 0` until
/// none is left.
pub fn fundamental_cycle(g: &DualGraph, component: &[usize]) -> Result<FundamentalCycle, AdeError> {
    if !classify(g, component)?.is_ade() {
        return Err(AdeError::NotAde);
    }
    let mut vertices = component.to_vec();
    vertices.sort_unstable();
    let local = |v: usize| vertices.binary_search(&v).ok();
    let dot = |z: &[i64], i: usize| -> i64 {
        let v = vertices[i];
        -2 * z[i] + g.neighbors(v).filter_map(local).map(|j| z[j]).sum::<i64>()
    };
    let k = vertices.len();
    let mut z = vec![0i64; k];
    z[0] = 1;
    while let Some(i) = (0..k).find(|&i| dot(&z, i) > 0) {
        z[i] += 1;
    }
    let self_intersection = (0..k).map(|i| z[i] * dot(&z, i)).sum();
    let rank = g.vertices.first().map_or(0, DivisorClass::len);
    let class = vertices
        .iter()
        .zip(&z)
        .fold(DivisorClass::zero(rank), |acc, (&v, &m)| {
            acc + g.vertices[v].scaled(m)
        });
    Ok(FundamentalCycle {
        vertices,
        multiplicities: z,
        class,
        self_intersection,
    })
}

/// Whether `marking` (a subset of `component`) meets every vertex of the
/// component in an even number of neighbours.
///
/// This is the parity a branch divisor `B' + ΣA_i` must have on the component
/// when `B'` is orthogonal to it: `B·C ≡ #(neighbours of C among the A_i)`.
pub fn is_parity_admissible(g: &DualGraph, component: &[usize], marking: &[usize]) -> bool {
    component
        .iter()
        .all(|&v| g.neighbors(v).filter(|w| marking.contains(w)).count() % 2 == 0)
}

/// All nonempty parity-admissible markings of an ADE component, each sorted,
/// in lexicographic order.
///
/// The admissible markings are the nonzero vectors of the kernel of the
/// adjacency matrix over F₂, which is enumerated from a kernel basis.
pub fn even_markings(g: &DualGraph, component: &[usize]) -> Result<Vec<Vec<usize>>, AdeError> {
    if !classify(g, component)?.is_ade() {
        return Err(AdeError::NotAde);
    }
    let k = component.len();
    if k > MARKING_RANK_CAP {
        return Err(AdeError::TooLarge(k));
    }
    let mut vertices = component.to_vec();
    vertices.sort_unstable();
    let rows: Vec<BitVector> = vertices
        .iter()
        .map(|&v| {
            BitVector::from_bools(
                &vertices
                    .iter()
                    .map(|&w| g.adjacency[v][w] == 1)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let basis = gf2::kernel(&rows, k);
    let mut out: Vec<Vec<usize>> = (1u64..1 << basis.len())
        .map(|mask| {
            let mut x = BitVector::zeros(k);
            for (b, vec) in basis.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    x.xor_assign(vec);
                }
            }
            x.ones().map(|i| vertices[i]).collect()
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(t: DynkinType) -> DualGraph {
        DualGraph::from_adjacency(t.diagram().unwrap()).unwrap()
    }

    fn all(g: &DualGraph) -> Vec<usize> {
        (0..g.len()).collect()
    }

    #[test]
    fn chain_of_three_classes() {
        let lat =
            IntLattice::from_gram(vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]).unwrap();
        let curves: Vec<_> = (0..3).map(|i| lat.basis_vector(i).unwrap()).collect();
        let g = build_dual_graph(&lat, &curves).unwrap();
        assert_eq!(
            g.adjacency(),
            &[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]
        );
        assert_eq!(classify(&g, &[0, 1, 2]).unwrap(), DynkinType::A(3));
    }

    #[test]
    fn rejects_double_edges_and_wrong_squares() {
        let lat = IntLattice::from_gram(vec![vec![-2, 2], vec![2, -2]]).unwrap();
        let curves: Vec<_> = (0..2).map(|i| lat.basis_vector(i).unwrap()).collect();
        assert_eq!(
            build_dual_graph(&lat, &curves),
            Err(AdeError::NonSimple(0, 1, 2))
        );
        let lat = IntLattice::from_gram(vec![vec![-4]]).unwrap();
        assert!(matches!(
            build_dual_graph(&lat, &[lat.basis_vector(0).unwrap()]),
            Err(AdeError::NotNodal {
                index: 0,
                square: -4
            })
        ));
    }

    #[test]
    fn classify_basic_shapes() {
        assert_eq!(
            classify(&graph(DynkinType::D(4)), &[0, 1, 2, 3]).unwrap(),
            DynkinType::D(4)
        );
        let tri =
            DualGraph::from_adjacency(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(classify(&tri, &[0, 1, 2]).unwrap(), DynkinType::NotAde);
        for t in DynkinType::all_up_to(9) {
            let g = graph(t);
            assert_eq!(classify(&g, &all(&g)).unwrap(), t, "{t}");
        }
        // affine D4: a star with four leaves
        let mut star = vec![vec![0u8; 5]; 5];
        for leaf in 1..5 {
            star[0][leaf] = 1;
            star[leaf][0] = 1;
        }
        let g = DualGraph::from_adjacency(star).unwrap();
        assert_eq!(classify(&g, &all(&g)).unwrap(), DynkinType::NotAde);
    }

    #[test]
    fn classify_errors() {
        let g = DualGraph::from_adjacency(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(classify(&g, &[0, 1]), Err(AdeError::Disconnected));
        assert_eq!(classify(&g, &[]), Err(AdeError::EmptyComponent));
        assert_eq!(classify(&g, &[5]), Err(AdeError::UnknownVertex(5)));
    }

    #[test]
    fn fundamental_cycles_of_small_types() {
        let a5 = graph(DynkinType::A(5));
        let z = fundamental_cycle(&a5, &all(&a5)).unwrap();
        assert_eq!(z.multiplicities, vec![1; 5]);
        assert_eq!(z.self_intersection, -2);

        // D4 by hand: leaves 1, centre 2
        let d4 = graph(DynkinType::D(4));
        let z = fundamental_cycle(&d4, &all(&d4)).unwrap();
        assert_eq!(z.multiplicities, vec![1, 1, 2, 1]);
        assert_eq!(z.self_intersection, -2);

        // D(n): fork ends 1, 1, chain of 2s, far end 1
        let d7 = graph(DynkinType::D(7));
        let z = fundamental_cycle(&d7, &all(&d7)).unwrap();
        assert_eq!(z.multiplicities, vec![1, 1, 2, 2, 2, 2, 1]);

        let e8 = graph(DynkinType::E8);
        let z = fundamental_cycle(&e8, &all(&e8)).unwrap();
        assert_eq!(z.multiplicities.iter().max(), Some(&6));
        assert_eq!(z.self_intersection, -2);

        let tri =
            DualGraph::from_adjacency(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(fundamental_cycle(&tri, &[0, 1, 2]), Err(AdeError::NotAde));
    }

    #[test]
    fn cycle_class_matches_lattice_pairing() {
        let g = graph(DynkinType::D(6));
        let lat = g.nodal_lattice().unwrap();
        let z = fundamental_cycle(&g, &all(&g)).unwrap();
        assert_eq!(lat.square(&z.class).unwrap(), -2);
        for v in g.vertices() {
            assert!(lat.pair(&z.class, v).unwrap() <= 0);
        }
    }

    #[test]
    fn markings_small_cases() {
        let a3 = graph(DynkinType::A(3));
        assert_eq!(even_markings(&a3, &[0, 1, 2]).unwrap(), vec![vec![0, 2]]);
        let a2 = graph(DynkinType::A(2));
        assert!(even_markings(&a2, &[0, 1]).unwrap().is_empty());
        let e6 = graph(DynkinType::E6);
        assert!(even_markings(&e6, &all(&e6)).unwrap().is_empty());
        let d4 = graph(DynkinType::D(4));
        assert_eq!(
            even_markings(&d4, &all(&d4)).unwrap(),
            vec![vec![0, 1], vec![0, 3], vec![1, 3]]
        );
        let a1 = graph(DynkinType::A(1));
        assert_eq!(even_markings(&a1, &[0]).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn marking_cap() {
        let g = graph(DynkinType::A(25));
        assert_eq!(even_markings(&g, &all(&g)), Err(AdeError::TooLarge(25)));
    }

    #[test]
    fn components_ordered_by_smallest_vertex() {
        let g = DualGraph::from_adjacency(vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 0],
        ])
        .unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1], vec![3]]);
        let census: Vec<_> = classify_components(&g)
            .into_iter()
            .map(|c| c.dynkin)
            .collect();
        assert_eq!(
            census,
            vec![DynkinType::A(2), DynkinType::A(1), DynkinType::A(1)]
        );
    }

    #[test]
    fn display_names() {
        assert_eq!(DynkinType::A(17).to_string(), "A(17)");
        assert_eq!(DynkinType::E7.to_string(), "E7");
        assert_eq!(
            serde_json::to_string(&DynkinType::NotAde).unwrap(),
            "\"NotADE\""
        );
    }
}
