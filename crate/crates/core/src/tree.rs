//! Weighted dual trees of `m`-marked nodal curves of genus 0.
//!
//! A vertex is an irreducible component, its weight is the number of marked
//! points on it, and an edge is a node. Marks are unordered, so only the
//! per-vertex counts are stored.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertex {
    pub id: VertexId,
    pub weight: u32,
}

/// A connected acyclic graph with non-negative vertex weights summing to at
/// least 3. Structural invariants are checked on construction; stability is
/// a separate question answered by [`validate_stable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeDocument", into = "TreeDocument")]
pub struct WeightedTree {
    vertices: Vec<Vertex>,
    /// Normalized so that `a < b`, sorted.
    edges: Vec<(VertexId, VertexId)>,
    /// Neighbor indices per vertex index, ordered by neighbor id.
    adjacency: Vec<Vec<usize>>,
    index: BTreeMap<VertexId, usize>,
    total_weight: u32,
}

impl WeightedTree {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyTree);
        }
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(Error::DuplicateVertex(v.id));
            }
        }

        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            for id in [a, b] {
                if !index.contains_key(&id) {
                    return Err(Error::UnknownVertex(id));
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            normalized.push(if a < b { (a, b) } else { (b, a) });
        }
        normalized.sort();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(a, b) in &normalized {
            let (ia, ib) = (index[&a], index[&b]);
            adjacency[ia].push(ib);
            adjacency[ib].push(ia);
        }
        for list in &mut adjacency {
            list.sort_by_key(|&j| vertices[j].id);
        }

        // Connectivity first: a disconnected graph with n-1 edges also has a cycle,
        // but "disconnected" is the more useful report.
        let mut seen = vec![false; vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    reached += 1;
                    stack.push(j);
                }
            }
        }
        if reached != vertices.len() {
            return Err(Error::Disconnected);
        }
        if normalized.len() != vertices.len() - 1 {
            return Err(Error::Cyclic);
        }

        let total_weight: u32 = vertices.iter().map(|v| v.weight).sum();
        if total_weight < 3 {
            return Err(Error::TotalWeightTooSmall(total_weight));
        }

        Ok(WeightedTree { vertices, edges: normalized, adjacency, index, total_weight })
    }

    /// Builds a tree whose vertex ids are the positions in `weights`.
    pub fn from_weights(weights: &[u32], edges: &[(usize, usize)]) -> Result<Self> {
        let vertices =
            weights.iter().enumerate().map(|(i, &weight)| Vertex { id: VertexId(i as u32), weight }).collect();
        let edges = edges.iter().map(|&(a, b)| (VertexId(a as u32), VertexId(b as u32))).collect();
        Self::new(vertices, edges)
    }

    pub fn single(weight: u32) -> Result<Self> {
        Self::from_weights(&[weight], &[])
    }

    /// A path whose vertices carry `weights` in order.
    pub fn path(weights: &[u32]) -> Result<Self> {
        let edges: Vec<_> = (1..weights.len()).map(|i| (i - 1, i)).collect();
        Self::from_weights(weights, &edges)
    }

    /// A star with the center at id 0 and one leaf per entry of `leaves`.
    pub fn star(center: u32, leaves: &[u32]) -> Result<Self> {
        let mut weights = vec![center];
        weights.extend_from_slice(leaves);
        let edges: Vec<_> = (1..weights.len()).map(|i| (0, i)).collect();
        Self::from_weights(&weights, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TreeDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TreeDocument::from(self.clone())).expect("tree document serializes")
    }

    /// Total weight `m`, the number of marked points.
    pub fn total_weight(&self) -> u32 {
        self.total_weight
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn weight(&self, v: VertexId) -> Result<u32> {
        Ok(self.vertices[self.index_of(v)?].weight)
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.adjacency[self.index_of(v)?].len())
    }

    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        let i = self.index_of(v)?;
        Ok(self.adjacency[i].iter().map(|&j| self.vertices[j].id).collect())
    }

    pub fn are_adjacent(&self, a: VertexId, b: VertexId) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    /// One entry per edge at `v`, in neighbor-id order: the neighbor and the
    /// total weight of the complementary subtree on that side.
    pub fn complementary_subtrees(&self, v: VertexId) -> Result<Vec<(VertexId, u32)>> {
        let i = self.index_of(v)?;
        Ok(self.adjacency[i].iter().map(|&j| (self.vertices[j].id, self.branch_weight_at(i, j))).collect())
    }

    /// Weights of the subtrees complementary to `v`, one per edge at `v`.
    /// Together with `weight(v)` they sum to `m`.
    pub fn complementary_subtree_weights(&self, v: VertexId) -> Result<Vec<u32>> {
        Ok(self.complementary_subtrees(v)?.into_iter().map(|(_, w)| w).collect())
    }

    /// Weights of the two sides of the edge `a`-`b`, in the order `(a side, b side)`.
    pub fn edge_split(&self, a: VertexId, b: VertexId) -> Result<(u32, u32)> {
        let (ia, ib) = (self.index_of(a)?, self.index_of(b)?);
        if !self.adjacency[ia].contains(&ib) {
            return Err(Error::UnknownVertex(b));
        }
        let b_side = self.branch_weight_at(ia, ib);
        Ok((self.total_weight - b_side, b_side))
    }

    /// Vertices of the component containing `to` once the edge `from`-`to` is removed.
    pub fn branch(&self, from: VertexId, to: VertexId) -> Result<Vec<VertexId>> {
        let (i, j) = (self.index_of(from)?, self.index_of(to)?);
        if !self.adjacency[i].contains(&j) {
            return Err(Error::UnknownVertex(to));
        }
        let mut out: Vec<_> = self.branch_indices(i, j).into_iter().map(|k| self.vertices[k].id).collect();
        out.sort();
        Ok(out)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tree {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  v{} [label=\"{}:{}\"];", v.id, v.id, v.weight);
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }

    pub(crate) fn index_of(&self, v: VertexId) -> Result<usize> {
        self.index.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    pub(crate) fn id_at(&self, i: usize) -> VertexId {
        self.vertices[i].id
    }

    pub(crate) fn weight_at(&self, i: usize) -> u32 {
        self.vertices[i].weight
    }

    pub(crate) fn neighbors_at(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    fn branch_indices(&self, from: usize, to: usize) -> Vec<usize> {
        let mut out = vec![to];
        let mut stack = vec![(to, from)];
        while let Some((i, parent)) = stack.pop() {
            for &j in &self.adjacency[i] {
                if j != parent {
                    out.push(j);
                    stack.push((j, i));
                }
            }
        }
        out
    }

    pub(crate) fn branch_weight_at(&self, from: usize, to: usize) -> u32 {
        self.branch_indices(from, to).into_iter().map(|k| self.vertices[k].weight).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: VertexId,
    pub weight: u32,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub violations: Vec<Violation>,
}

/// A tree is stable when every vertex has `weight + degree >= 3`.
pub fn validate_stable(t: &WeightedTree) -> StabilityReport {
    let violations: Vec<_> = (0..t.vertex_count())
        .filter_map(|i| {
            let weight = t.weight_at(i);
            let degree = t.neighbors_at(i).len();
            (weight as usize + degree < 3).then_some(Violation { vertex: t.id_at(i), weight, degree })
        })
        .collect();
    StabilityReport { stable: violations.is_empty(), violations }
}

pub(crate) fn require_stable(t: &WeightedTree) -> Result<()> {
    let report = validate_stable(t);
    if report.stable {
        Ok(())
    } else {
        Err(Error::Unstable(report.violations))
    }
}

/// Isomorphism invariant of a weighted tree: equal codes iff isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(pub Vec<u32>);

/// Rooted encoding at each vertex centroid, minimum taken.
///
/// The rooted code of `v` is `[weight, child count, child codes...]` with the
/// child codes sorted; the arity prefix makes concatenations self-delimiting.
pub fn canonical_code(t: &WeightedTree) -> CanonicalCode {
    centroids(t)
        .into_iter()
        .map(|root| {
            let mut code = Vec::with_capacity(2 * t.vertex_count());
            encode_rooted(t, root, usize::MAX, &mut code);
            code
        })
        .min()
        .map(CanonicalCode)
        .expect("a tree has at least one centroid")
}

fn encode_rooted(t: &WeightedTree, v: usize, parent: usize, out: &mut Vec<u32>) {
    let mut children: Vec<Vec<u32>> = t
        .neighbors_at(v)
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| {
            let mut code = Vec::new();
            encode_rooted(t, c, v, &mut code);
            code
        })
        .collect();
    children.sort();
    out.push(t.weight_at(v));
    out.push(children.len() as u32);
    for child in children {
        out.extend(child);
    }
}

/// Vertices whose removal leaves components of at most `n / 2` vertices.
fn centroids(t: &WeightedTree) -> Vec<usize> {
    let n = t.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        order.push(i);
        for &j in t.neighbors_at(i) {
            if !seen[j] {
                seen[j] = true;
                parent[j] = i;
                stack.push(j);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &i in order.iter().rev() {
        if parent[i] != usize::MAX {
            size[parent[i]] += size[i];
        }
    }
    (0..n)
        .filter(|&i| {
            let largest_child =
                t.neighbors_at(i).iter().filter(|&&j| parent[j] == i).map(|&j| size[j]).max().unwrap_or(0);
            largest_child.max(n - size[i]) * 2 <= n
        })
        .collect()
}

/// JSON exchange form: `{"m": int?, "vertices": [{"id", "weight"}], "edges": [[a, b]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[VertexId; 2]>,
}

impl TryFrom<TreeDocument> for WeightedTree {
    type Error = Error;

    fn try_from(doc: TreeDocument) -> Result<Self> {
        let tree = WeightedTree::new(doc.vertices, doc.edges.into_iter().map(|[a, b]| (a, b)).collect())?;
        match doc.m {
            Some(declared) if declared != tree.total_weight => {
                Err(Error::TotalWeightMismatch { declared, actual: tree.total_weight })
            }
            _ => Ok(tree),
        }
    }
}

impl From<WeightedTree> for TreeDocument {
    fn from(t: WeightedTree) -> Self {
        TreeDocument {
            m: Some(t.total_weight),
            edges: t.edges.iter().map(|&(a, b)| [a, b]).collect(),
            vertices: t.vertices,
        }
    }
}
