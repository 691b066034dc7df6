//! Structural metrics of simple graphs.
//!
//! Path lengths, closeness and betweenness come from one breadth-first pass
//! per source vertex; the sources fan out over the worker team and each
//! worker keeps its own accumulator. Disconnected graphs are handled by
//! averaging over reachable pairs only: the average shortest path runs over
//! ordered pairs `(s, t)` with `t` reachable from `s`, and closeness of `v`
//! is `(r - 1) / (sum of distances)` over the `r` vertices reachable from `v`
//! (including `v`), or 0 when `v` is isolated.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::graphicality::Mode;

pub const HISTOGRAM_BINS: usize = 100;

/// Largest vertex count accepted by [`maximal_cliques`] without override.
pub const CLIQUE_VERTEX_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("clique enumeration refused for {n} vertices (limit {limit})")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathStats {
    pub avg_shortest_path: f64,
    pub diameter: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub n: usize,
    pub m: usize,
    pub triangles: u64,
    /// `None` when clique enumeration was skipped.
    pub maximal_cliques: Option<u64>,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    /// `None` for edgeless graphs.
    pub path: Option<PathStats>,
    pub avg_betweenness: f64,
    pub avg_closeness: f64,
    pub avg_clustering: f64,
    /// Vertex counts per clustering bin `[i/100, (i+1)/100)`, the last bin
    /// closed at 1.
    pub clustering_histogram: Vec<u64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MetricsOptions {
    pub skip_cliques: bool,
    /// Enumerate cliques even above [`CLIQUE_VERTEX_LIMIT`].
    pub allow_large: bool,
}

pub fn report(
    g: &Graph,
    options: MetricsOptions,
    mode: Mode<'_>,
) -> Result<MetricsReport, MetricsError> {
    let adj = g.sorted_adjacency();
    let n = g.vertex_count();
    let per_vertex = triangles_per_vertex_sorted(&adj);
    let triangles = per_vertex.iter().sum::<u64>() / 3;
    let (avg_clustering, clustering_histogram) = clustering_from(&adj, &per_vertex);
    let maximal_cliques = if options.skip_cliques {
        None
    } else {
        Some(maximal_cliques_with(g, options.allow_large)?)
    };
    let component_sizes = components(g);
    let sweep = sweep(&adj, mode);
    let path = (g.edge_count() > 0).then(|| sweep.path_stats());
    Ok(MetricsReport {
        n,
        m: g.edge_count(),
        triangles,
        maximal_cliques,
        components: component_sizes.len(),
        component_sizes,
        path,
        avg_betweenness: mean(&sweep.betweenness(n)),
        avg_closeness: mean(&sweep.closeness),
        avg_clustering,
        clustering_histogram,
    })
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

fn intersection_count(a: &[usize], b: &[usize]) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn triangles_per_vertex_sorted(adj: &[Vec<usize>]) -> Vec<u64> {
    let mut t = vec![0u64; adj.len()];
    for (u, nu) in adj.iter().enumerate() {
        let higher_u = &nu[nu.partition_point(|&x| x <= u)..];
        for &v in higher_u {
            let nv = &adj[v];
            let higher_v = &nv[nv.partition_point(|&x| x <= v)..];
            let hu = &higher_u[higher_u.partition_point(|&x| x <= v)..];
            // Each triangle u < v < w is found exactly once, from its
            // smallest two vertices.
            let mut i = 0;
            for &w in hu {
                while i < higher_v.len() && higher_v[i] < w {
                    i += 1;
                }
                if i < higher_v.len() && higher_v[i] == w {
                    t[u] += 1;
                    t[v] += 1;
                    t[w] += 1;
                }
            }
        }
    }
    t
}

/// Triangles through each vertex.
pub fn triangles_per_vertex(g: &Graph) -> Vec<u64> {
    triangles_per_vertex_sorted(&g.sorted_adjacency())
}

pub fn triangles(g: &Graph) -> u64 {
    triangles_per_vertex(g).iter().sum::<u64>() / 3
}

/// Component sizes, largest first.
pub fn components(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &x in g.neighbors(v) {
                if !seen[x] {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

fn clustering_from(adj: &[Vec<usize>], tri: &[u64]) -> (f64, Vec<u64>) {
    let mut histogram = vec![0u64; HISTOGRAM_BINS];
    let mut total = 0.0;
    for (v, nv) in adj.iter().enumerate() {
        let d = nv.len() as u64;
        let pairs = if d < 2 { 0 } else { d * (d - 1) };
        // Exact integer binning avoids rounding at bin edges.
        let bin = if pairs == 0 {
            0
        } else {
            total += 2.0 * tri[v] as f64 / pairs as f64;
            ((2 * tri[v] * HISTOGRAM_BINS as u64 / pairs) as usize).min(HISTOGRAM_BINS - 1)
        };
        histogram[bin] += 1;
    }
    let avg = if adj.is_empty() {
        0.0
    } else {
        total / adj.len() as f64
    };
    (avg, histogram)
}

/// Local clustering coefficient of every vertex, 0 below degree 2.
pub fn local_clustering(g: &Graph) -> Vec<f64> {
    let tri = triangles_per_vertex(g);
    (0..g.vertex_count())
        .map(|v| {
            let d = g.degree(v) as f64;
            if d < 2.0 {
                0.0
            } else {
                2.0 * tri[v] as f64 / (d * (d - 1.0))
            }
        })
        .collect()
}

/// Average local clustering over all vertices and its 100-bin histogram.
pub fn clustering(g: &Graph) -> (f64, Vec<u64>) {
    let adj = g.sorted_adjacency();
    clustering_from(&adj, &triangles_per_vertex_sorted(&adj))
}

/// Totals gathered by the per-source sweep.
#[derive(Debug, Clone)]
struct Sweep {
    distance_sum: u64,
    pairs: u64,
    diameter: u64,
    /// Unnormalized dependency sums; every pair is counted from both ends.
    dependency: Vec<f64>,
    closeness: Vec<f64>,
}

impl Sweep {
    fn empty(n: usize) -> Self {
        Self {
            distance_sum: 0,
            pairs: 0,
            diameter: 0,
            dependency: vec![0.0; n],
            closeness: vec![0.0; n],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.distance_sum += other.distance_sum;
        self.pairs += other.pairs;
        self.diameter = self.diameter.max(other.diameter);
        for (a, b) in self.dependency.iter_mut().zip(&other.dependency) {
            *a += b;
        }
        for (a, b) in self.closeness.iter_mut().zip(&other.closeness) {
            *a += b;
        }
        self
    }

    fn path_stats(&self) -> PathStats {
        PathStats {
            avg_shortest_path: self.distance_sum as f64 / self.pairs as f64,
            diameter: self.diameter,
        }
    }

    fn betweenness(&self, n: usize) -> Vec<f64> {
        if n < 3 {
            return vec![0.0; n];
        }
        let scale = ((n - 1) * (n - 2)) as f64;
        self.dependency.iter().map(|&d| d / 2.0 / scale).collect()
    }
}

/// Scratch buffers reused across sources handled by one worker.
struct Scratch {
    dist: Vec<u64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![u64::MAX; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }
}

fn visit_source(adj: &[Vec<usize>], s: usize, scratch: &mut Scratch, acc: &mut Sweep) {
    let Scratch {
        dist,
        sigma,
        delta,
        order,
    } = scratch;
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push(s);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &x in &adj[v] {
            if dist[x] == u64::MAX {
                dist[x] = dist[v] + 1;
                order.push(x);
            }
            if dist[x] == dist[v] + 1 {
                sigma[x] += sigma[v];
            }
        }
    }
    let mut sum = 0;
    for &v in &order[1..] {
        sum += dist[v];
        acc.diameter = acc.diameter.max(dist[v]);
    }
    let reached = order.len() as u64 - 1;
    acc.distance_sum += sum;
    acc.pairs += reached;
    if reached > 0 {
        acc.closeness[s] = reached as f64 / sum as f64;
    }
    // Dependency accumulation in reverse BFS order; predecessors of w are
    // the neighbors one level closer to s.
    for &w in order.iter().rev() {
        let coeff = (1.0 + delta[w]) / sigma[w];
        for &v in &adj[w] {
            if dist[v] != u64::MAX && dist[v] + 1 == dist[w] {
                delta[v] += sigma[v] * coeff;
            }
        }
        if w != s {
            acc.dependency[w] += delta[w];
        }
    }
    for &v in order.iter() {
        dist[v] = u64::MAX;
        sigma[v] = 0.0;
        delta[v] = 0.0;
    }
}

fn sweep(adj: &[Vec<usize>], mode: Mode<'_>) -> Sweep {
    let n = adj.len();
    match mode {
        Mode::Parallel(team) if n > 1 => team.install(|| {
            (0..n)
                .into_par_iter()
                .fold(
                    || (Scratch::new(n), Sweep::empty(n)),
                    |(mut scratch, mut acc), s| {
                        visit_source(adj, s, &mut scratch, &mut acc);
                        (scratch, acc)
                    },
                )
                .map(|(_, acc)| acc)
                .reduce(|| Sweep::empty(n), Sweep::merge)
        }),
        _ => {
            let mut scratch = Scratch::new(n);
            let mut acc = Sweep::empty(n);
            for s in 0..n {
                visit_source(adj, s, &mut scratch, &mut acc);
            }
            acc
        }
    }
}

/// Average shortest path over reachable ordered pairs and the largest finite
/// distance.
pub fn path_stats(g: &Graph, mode: Mode<'_>) -> Result<PathStats, MetricsError> {
    if g.edge_count() == 0 {
        return Err(MetricsError::NoEdges);
    }
    Ok(sweep(&g.sorted_adjacency(), mode).path_stats())
}

/// Betweenness of every vertex, normalized by `(n-1)(n-2)`.
pub fn betweenness(g: &Graph, mode: Mode<'_>) -> Vec<f64> {
    sweep(&g.sorted_adjacency(), mode).betweenness(g.vertex_count())
}

pub fn closeness(g: &Graph, mode: Mode<'_>) -> Vec<f64> {
    sweep(&g.sorted_adjacency(), mode).closeness
}

/// Average betweenness and average closeness.
pub fn centralities(g: &Graph, mode: Mode<'_>) -> (f64, f64) {
    let s = sweep(&g.sorted_adjacency(), mode);
    (mean(&s.betweenness(g.vertex_count())), mean(&s.closeness))
}

/// Number of maximal cliques, isolated vertices included.
pub fn maximal_cliques(g: &Graph) -> Result<u64, MetricsError> {
    maximal_cliques_with(g, false)
}

pub fn maximal_cliques_with(g: &Graph, allow_large: bool) -> Result<u64, MetricsError> {
    let n = g.vertex_count();
    if n > CLIQUE_VERTEX_LIMIT && !allow_large {
        return Err(MetricsError::TooLarge {
            n,
            limit: CLIQUE_VERTEX_LIMIT,
        });
    }
    let adj = g.sorted_adjacency();
    let mut count = 0;
    bron_kerbosch(&adj, (0..n).collect(), Vec::new(), &mut count);
    Ok(count)
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Pivoted Bron–Kerbosch over sorted candidate and excluded sets.
fn bron_kerbosch(adj: &[Vec<usize>], mut p: Vec<usize>, mut x: Vec<usize>, count: &mut u64) {
    if p.is_empty() {
        if x.is_empty() {
            *count += 1;
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| intersection_count(&p, &adj[u]))
        .expect("p is non-empty");
    let branch: Vec<usize> = p
        .iter()
        .copied()
        .filter(|v| adj[pivot].binary_search(v).is_err())
        .collect();
    for v in branch {
        bron_kerbosch(adj, intersect(&p, &adj[v]), intersect(&x, &adj[v]), count);
        p.remove(p.binary_search(&v).expect("v is in p"));
        let at = x.binary_search(&v).unwrap_err();
        x.insert(at, v);
    }
}
