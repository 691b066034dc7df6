//! Slow, obviously-correct reference implementations used by the tests.
#![allow(dead_code)]

use std::collections::HashSet;

use degseq::Graph;

/// Sorted (non-increasing) degree vectors of every labeled simple graph on
/// `n` vertices, found by enumerating all edge subsets.
pub fn realizable_degree_vectors(n: usize) -> HashSet<Vec<u64>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut out = HashSet::new();
    let mut degrees = vec![0u64; n];
    // Gray-code walk: each step toggles exactly one edge.
    let total: u64 = 1 << pairs.len();
    let mut record = |d: &[u64]| {
        let mut s = d.to_vec();
        s.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(s);
    };
    record(&degrees);
    let mut present = vec![false; pairs.len()];
    for i in 1..total {
        let bit = i.trailing_zeros() as usize;
        let (a, b) = pairs[bit];
        if present[bit] {
            degrees[a] -= 1;
            degrees[b] -= 1;
        } else {
            degrees[a] += 1;
            degrees[b] += 1;
        }
        present[bit] = !present[bit];
        record(&degrees);
    }
    out
}

/// Erdős–Gallai verdict evaluating all n inequalities directly, with the
/// right-hand side summing min(d_i, k) term by term.
pub fn all_inequalities_graphical(degrees: &[u64]) -> bool {
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    if d.iter().sum::<u64>() % 2 == 1 {
        return false;
    }
    (1..=n).all(|k| {
        let lhs: u64 = d[..k].iter().sum();
        let rhs = (k * (k - 1)) as u64 + d[k..].iter().map(|&x| x.min(k as u64)).sum::<u64>();
        lhs <= rhs
    })
}

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in g.edges() {
        m[a][b] = true;
        m[b][a] = true;
    }
    m
}

pub fn triangles(g: &Graph) -> u64 {
    let m = matrix(g);
    let n = m.len();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if m[a][b] && m[b][c] && m[a][c] {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Component sizes, largest first, by repeated label propagation.
pub fn components(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(a, b) in g.edges() {
            let low = label[a].min(label[b]);
            if label[a] != low || label[b] != low {
                label[a] = low;
                label[b] = low;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut sizes: Vec<usize> = (0..n)
        .map(|r| label.iter().filter(|&&l| l == r).count())
        .filter(|&s| s > 0)
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

pub const INF: u64 = u64::MAX / 4;

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u64>> {
    let m = matrix(g);
    let n = m.len();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if m[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Average over reachable ordered pairs and the largest finite distance.
pub fn path_stats(g: &Graph) -> Option<(f64, u64)> {
    if g.edge_count() == 0 {
        return None;
    }
    let d = floyd_warshall(g);
    let (mut sum, mut pairs, mut diameter) = (0u64, 0u64, 0u64);
    for (i, row) in d.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i != j && x < INF {
                sum += x;
                pairs += 1;
                diameter = diameter.max(x);
            }
        }
    }
    Some((sum as f64 / pairs as f64, diameter))
}

pub fn local_clustering(g: &Graph) -> Vec<f64> {
    let m = matrix(g);
    let n = m.len();
    (0..n)
        .map(|v| {
            let nb: Vec<usize> = (0..n).filter(|&u| m[v][u]).collect();
            let k = nb.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if m[nb[i]][nb[j]] {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (k * (k - 1)) as f64
        })
        .collect()
}

/// Number of shortest paths between every pair, by dynamic programming over
/// the distance matrix.
fn path_counts(g: &Graph, d: &[Vec<u64>]) -> Vec<Vec<f64>> {
    let m = matrix(g);
    let n = m.len();
    let mut sigma = vec![vec![0.0; n]; n];
    for s in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&v| d[s][v] < INF).collect();
        order.sort_by_key(|&v| d[s][v]);
        sigma[s][s] = 1.0;
        for &v in &order {
            if v == s {
                continue;
            }
            sigma[s][v] = (0..n)
                .filter(|&u| m[u][v] && d[s][u] + 1 == d[s][v])
                .map(|u| sigma[s][u])
                .sum();
        }
    }
    sigma
}

/// Betweenness by counting, for each unordered pair, the share of shortest
/// paths through every intermediate vertex; normalized by (n-1)(n-2).
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let d = floyd_warshall(g);
    let sigma = path_counts(g, &d);
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] >= INF {
                continue;
            }
            for v in 0..n {
                if v != s && v != t && d[s][v] + d[v][t] == d[s][t] {
                    b[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
                }
            }
        }
    }
    if n < 3 {
        return vec![0.0; n];
    }
    let scale = ((n - 1) * (n - 2)) as f64;
    b.iter().map(|x| x / scale).collect()
}

pub fn closeness(g: &Graph) -> Vec<f64> {
    let d = floyd_warshall(g);
    d.iter()
        .enumerate()
        .map(|(i, row)| {
            let reach: Vec<u64> = row
                .iter()
                .enumerate()
                .filter(|&(j, &x)| j != i && x < INF)
                .map(|(_, &x)| x)
                .collect();
            if reach.is_empty() {
                0.0
            } else {
                reach.len() as f64 / reach.iter().sum::<u64>() as f64
            }
        })
        .collect()
}

/// Maximal cliques by checking every vertex subset.
pub fn maximal_cliques(g: &Graph) -> u64 {
    let m = matrix(g);
    let n = m.len();
    assert!(n <= 20);
    let neighbors: Vec<u32> = (0..n)
        .map(|a| (0..n).filter(|&b| m[a][b]).fold(0, |acc, b| acc | (1 << b)))
        .collect();
    // clique[mask]: drop the lowest vertex and require it to see the rest.
    let mut clique = vec![false; 1 << n];
    clique[0] = true;
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        clique[mask] = clique[rest] && (rest as u32) & !neighbors[low] == 0;
    }
    (1usize..(1 << n))
        .filter(|&mask| clique[mask] && (0..n).all(|v| mask & (1 << v) != 0 || !clique[mask | (1 << v)]))
        .count() as u64
}
