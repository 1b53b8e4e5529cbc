//! Oracles shared by the integration suites. None of them call into the code
//! paths they are used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use hypermoduli::tree::{canonical_code, validate_stable, CanonicalCode, VertexId, WeightedTree};
use itertools::Itertools;

/// Adjacency lists built straight from the edge list.
fn adjacency(t: &WeightedTree) -> BTreeMap<VertexId, Vec<VertexId>> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = t.vertices().iter().map(|v| (v.id, Vec::new())).collect();
    for &(a, b) in t.edges() {
        adj.get_mut(&a).unwrap().push(b);
        adj.get_mut(&b).unwrap().push(a);
    }
    adj
}

fn weights(t: &WeightedTree) -> BTreeMap<VertexId, u32> {
    t.vertices().iter().map(|v| (v.id, v.weight)).collect()
}

/// Weight of the component containing `start` after deleting `removed`.
fn component_weight(t: &WeightedTree, removed: VertexId, start: VertexId) -> u32 {
    let adj = adjacency(t);
    let w = weights(t);
    let mut seen = BTreeSet::from([removed, start]);
    let mut queue = VecDeque::from([start]);
    let mut total = 0;
    while let Some(v) = queue.pop_front() {
        total += w[&v];
        for &u in &adj[&v] {
            if seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    total
}

/// Weight of each side of every edge, by breadth-first search.
pub fn edge_sides(t: &WeightedTree) -> Vec<((VertexId, VertexId), u32, u32)> {
    t.edges().iter().map(|&(a, b)| ((a, b), component_weight(t, b, a), component_weight(t, a, b))).collect()
}

pub fn has_half_weight_edge(t: &WeightedTree) -> bool {
    edge_sides(t).iter().any(|&(_, wa, wb)| wa == wb)
}

/// Vertices satisfying the central-vertex definition, checked one by one.
pub fn central_vertices(t: &WeightedTree) -> Vec<VertexId> {
    let m = t.total_weight();
    let adj = adjacency(t);
    t.vertices()
        .iter()
        .filter(|v| adj[&v.id].iter().all(|&u| 2 * component_weight(t, v.id, u) < m))
        .map(|v| v.id)
        .collect()
}

/// Isomorphism by trying every vertex bijection.
pub fn brute_isomorphic(a: &WeightedTree, b: &WeightedTree) -> bool {
    if a.vertex_count() != b.vertex_count() || a.total_weight() != b.total_weight() {
        return false;
    }
    let av: Vec<_> = a.vertices().to_vec();
    let bv: Vec<_> = b.vertices().to_vec();
    let b_edges: BTreeSet<(VertexId, VertexId)> = b.edges().iter().copied().collect();
    (0..bv.len()).permutations(bv.len()).any(|perm| {
        let image: BTreeMap<VertexId, VertexId> = av.iter().zip(&perm).map(|(x, &j)| (x.id, bv[j].id)).collect();
        av.iter().zip(&perm).all(|(x, &j)| x.weight == bv[j].weight)
            && a.edges().iter().all(|&(x, y)| {
                let (p, q) = (image[&x], image[&y]);
                b_edges.contains(&(p.min(q), p.max(q)))
            })
    })
}

/// Labeled tree on `n` vertices from a Prüfer sequence.
pub fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    if n == 1 {
        return vec![];
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let last: Vec<_> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((last[0], last[1]));
    edges
}

/// Every non-negative weight vector of length `n` summing to `total` with
/// `w[i] >= floor[i]`.
fn weight_vectors(floor: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn go(floor: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == floor.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest_floor: u32 = floor[i + 1..].iter().sum();
        if floor[i] + rest_floor > left {
            return;
        }
        for w in floor[i]..=left - rest_floor {
            cur.push(w);
            go(floor, i + 1, left - w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(floor, 0, total, &mut Vec::new(), &mut out);
    out
}

/// Every labeled tree on `n <= m` vertices (Prüfer sequences) with every
/// weight assignment of total `m`. With `prune`, assignments that cannot be
/// stable (`weight < 3 - degree` somewhere) are skipped while generating.
pub fn prufer_candidates(m: u32, prune: bool, mut visit: impl FnMut(WeightedTree)) {
    for n in 1..=m as usize {
        let sequences: Box<dyn Iterator<Item = Vec<usize>>> = if n <= 2 {
            Box::new(std::iter::once(vec![]))
        } else {
            Box::new((0..n - 2).map(|_| 0..n).multi_cartesian_product())
        };
        for seq in sequences {
            let edges = prufer_edges(n, &seq);
            let mut degree = vec![0u32; n];
            for &(a, b) in &edges {
                degree[a] += 1;
                degree[b] += 1;
            }
            let floor: Vec<u32> =
                if prune { degree.iter().map(|&d| 3u32.saturating_sub(d)).collect() } else { vec![0; n] };
            for w in weight_vectors(&floor, m) {
                if let Ok(t) = WeightedTree::from_weights(&w, &edges) {
                    visit(t);
                }
            }
        }
    }
}

/// Census by brute force: Prüfer trees times weight assignments, filtered by
/// stability and deduplicated by canonical code.
pub fn prufer_census(m: u32) -> BTreeMap<CanonicalCode, WeightedTree> {
    let mut out = BTreeMap::new();
    prufer_candidates(m, true, |t| {
        if validate_stable(&t).stable {
            out.entry(canonical_code(&t)).or_insert(t);
        }
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrippedCover {
    pub ramified: BTreeMap<(VertexId, VertexId), bool>,
    pub branch_count: BTreeMap<VertexId, u32>,
}

/// Builds the double cover by repeatedly removing a leaf component: a leaf
/// with an odd number of branch points must also ramify over its node, and
/// that node becomes an extra branch point on the neighbor.
pub fn leaf_stripping(t: &WeightedTree) -> StrippedCover {
    let adj = adjacency(t);
    let mut marks = weights(t);
    let mut remaining: BTreeSet<VertexId> = marks.keys().copied().collect();
    let mut ramified = BTreeMap::new();
    let mut branch_count = BTreeMap::new();
    while remaining.len() > 1 {
        let leaf = *remaining
            .iter()
            .find(|v| adj[v].iter().filter(|u| remaining.contains(u)).count() == 1)
            .expect("a finite tree has a leaf");
        let parent = *adj[&leaf].iter().find(|u| remaining.contains(u)).unwrap();
        let odd = marks[&leaf] % 2 == 1;
        if odd {
            *marks.get_mut(&parent).unwrap() += 1;
        }
        ramified.insert((leaf.min(parent), leaf.max(parent)), odd);
        branch_count.insert(leaf, marks[&leaf] + odd as u32);
        remaining.remove(&leaf);
    }
    let last = *remaining.iter().next().unwrap();
    assert_eq!(marks[&last] % 2, 0, "final component needs an even number of branch points");
    branch_count.insert(last, marks[&last]);
    StrippedCover { ramified, branch_count }
}

/// Multiplicities of the exceptional curves produced by blowing up the
/// origin of `y^2 = x^n` until the total transform has normal crossings.
///
/// The local state is `x^a y^b (y^p - x^q)`: `x = 0` and `y = 0` are earlier
/// exceptional curves (present when the exponent is positive) and the last
/// factor is the strict transform. Blowing up the origin adds
/// `a + b + min(p, q)`.
pub fn simulate_blowups(n: u32) -> Vec<u32> {
    let (mut a, mut b, mut p, mut q) = (0u32, 0u32, 2u32, n);
    let mut out = Vec::new();
    loop {
        let strict_through_origin = p > 0 && q > 0;
        let normal_crossings = if !strict_through_origin {
            true
        } else if p >= 2 && q >= 2 {
            false
        } else {
            let components = 1 + (a > 0) as u32 + (b > 0) as u32;
            // y = x^q is tangent to y = 0 when q >= 2; y^p = x is tangent to x = 0 when p >= 2.
            let tangent = (p == 1 && q >= 2 && b > 0) || (q == 1 && p >= 2 && a > 0);
            components <= 2 && !tangent
        };
        if normal_crossings {
            return out;
        }
        let e = a + b + p.min(q);
        out.push(e);
        if p <= q {
            // chart y = x y': the new curve is x = 0, the old x = 0 leaves the chart
            a = e;
            q -= p;
        } else {
            // chart x = x' y: the new curve is y = 0, the old y = 0 leaves the chart
            b = e;
            p -= q;
        }
    }
}

/// All compositions (ordered) of `total` into positive parts.
pub fn compositions(total: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Vertices of the component containing `start` after deleting `removed`.
fn component(t: &WeightedTree, removed: VertexId, start: VertexId) -> BTreeSet<VertexId> {
    let adj = adjacency(t);
    let mut seen = BTreeSet::from([removed, start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[&v] {
            if seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    seen.remove(&removed);
    seen
}

/// Sorted multiplicities of the binary form attached to an even-weight
/// tree, rebuilt from the leaf-stripped cover: every branch at the central
/// vertex is a tail of arithmetic genus `h` contributing `2h + 1` (one
/// ramified attachment) or `2h + 2` (two split attachments). `None` when no
/// central vertex exists.
pub fn tail_reconstruction(t: &WeightedTree) -> Option<Vec<u32>> {
    let centers = central_vertices(t);
    let &[center] = centers.as_slice() else { return None };
    let cover = leaf_stripping(t);
    let adj = adjacency(t);
    let mut out = Vec::new();
    for &u in &adj[&center] {
        let part = component(t, center, u);
        let (mut genus_sum, mut comps, mut nodes) = (0i64, 0i64, 0i64);
        for v in &part {
            let b = cover.branch_count[v] as i64;
            if b == 0 {
                comps += 2;
            } else {
                comps += 1;
                genus_sum += b / 2 - 1;
            }
        }
        for (&(a, b), &ram) in &cover.ramified {
            if part.contains(&a) && part.contains(&b) {
                nodes += if ram { 1 } else { 2 };
            }
        }
        let h = genus_sum + nodes - comps + 1;
        assert!(h >= 0);
        let ramified = cover.ramified[&(center.min(u), center.max(u))];
        out.push(if ramified { 2 * h as u32 + 1 } else { 2 * h as u32 + 2 });
    }
    let w = t.vertices().iter().find(|v| v.id == center).unwrap().weight;
    out.extend(std::iter::repeat_n(1, w as usize));
    out.sort_unstable_by(|a, b| b.cmp(a));
    Some(out)
}
