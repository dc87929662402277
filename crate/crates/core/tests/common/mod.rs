#![allow(clippy::needless_range_loop)]

//! Independent brute-force oracles shared by the integration tests and the
//! acceptance suite. None of them call the library routine they check.

#![allow(dead_code)]

use todorov::ade::{DualGraph, DynkinType};

/// Graph of a Dynkin type in its standard labeling.
pub fn dynkin_graph(t: DynkinType) -> DualGraph {
    DualGraph::from_adjacency(t.diagram().expect("ADE type")).expect("valid diagram")
}

/// `Z·v` for every vertex, with the (−2)-form of an adjacency matrix.
fn pairings(adj: &[Vec<u8>], z: &[i64]) -> Vec<i64> {
    (0..z.len())
        .map(|v| {
            -2 * z[v]
                + (0..z.len())
                    .filter(|&w| adj[v][w] == 1)
                    .map(|w| z[w])
                    .sum::<i64>()
        })
        .collect()
}

/// Nonempty vertex subsets `S` in which every vertex has an even number of
/// neighbours, by enumerating all `2^n − 1` subsets. Sorted lexicographically.
pub fn brute_markings(adj: &[Vec<u8>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let ok = (0..n).all(|v| {
            (0..n)
                .filter(|&w| adj[v][w] == 1 && mask >> w & 1 == 1)
                .count()
                % 2
                == 0
        });
        if ok {
            out.push((0..n).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

/// The fundamental cycle found by scanning every multiplicity vector in
/// `1..=bound` per vertex: the unique cycle of least degree with `Z·v ≤ 0`
/// everywhere. Returns `None` if the box holds no such cycle or the minimum
/// is not unique.
pub fn brute_fundamental_cycle(adj: &[Vec<u8>], bound: i64) -> Option<Vec<i64>> {
    let n = adj.len();
    let mut z = vec![1i64; n];
    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut ties = 0;
    loop {
        if pairings(adj, &z).iter().all(|&p| p <= 0) {
            let s: i64 = z.iter().sum();
            match &best {
                Some((bs, _)) if s > *bs => {}
                Some((bs, _)) if s == *bs => ties += 1,
                _ => {
                    best = Some((s, z.clone()));
                    ties = 0;
                }
            }
        }
        // odometer over 1..=bound
        let mut i = 0;
        loop {
            if i == n {
                return if ties == 0 {
                    best.map(|(_, z)| z)
                } else {
                    None
                };
            }
            z[i] += 1;
            if z[i] <= bound {
                break;
            }
            z[i] = 1;
            i += 1;
        }
    }
}

pub fn cycle_square(adj: &[Vec<u8>], z: &[i64]) -> i64 {
    pairings(adj, z).iter().zip(z).map(|(p, m)| p * m).sum()
}

/// Characteristic polynomial coefficients of an integer matrix by
/// Faddeev–LeVerrier: `det(xI − M) = Σ c_k x^(n−k)`, `c_0 = 1`.
pub fn char_poly(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let mm: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut coeffs = vec![1i128];
    let mut mk = vec![vec![0i128; n]; n]; // M_0 = 0
    for k in 1..=n {
        // M_k = M·M_{k−1} + c_{k−1}·I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| mm[i][l] * mk[l][j]).sum::<i128>();
            }
            next[i][i] += coeffs[k - 1];
        }
        mk = next;
        let trace: i128 = (0..n)
            .map(|i| (0..n).map(|l| mm[i][l] * mk[l][i]).sum::<i128>())
            .sum();
        assert_eq!(trace % k as i128, 0, "Faddeev–LeVerrier division is exact");
        coeffs.push(-trace / k as i128);
    }
    coeffs
}

/// A real symmetric matrix is negative definite iff all roots of its
/// characteristic polynomial are negative, i.e. every coefficient of
/// `det(xI − M)` is strictly positive.
pub fn negative_definite_by_char_poly(m: &[Vec<i64>]) -> bool {
    char_poly(m).iter().all(|&c| c > 0)
}

/// `−2·I + adjacency`.
pub fn nodal_gram(adj: &[Vec<u8>]) -> Vec<Vec<i64>> {
    let n = adj.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { -2 } else { i64::from(adj[i][j]) })
                .collect()
        })
        .collect()
}

/// Adjacency matrix from the bits of `mask` over the pairs `i < j` in order.
pub fn graph_from_mask(n: usize, mask: u64) -> Vec<Vec<u8>> {
    let mut adj = vec![vec![0u8; n]; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                adj[i][j] = 1;
                adj[j][i] = 1;
            }
            bit += 1;
        }
    }
    adj
}

pub fn is_connected(adj: &[Vec<u8>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if adj[v][w] == 1 && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
