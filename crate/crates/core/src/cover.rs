//! Admissible double covers of stable `(2g+2)`-marked trees and their stable
//! hyperelliptic models.
//!
//! Over each edge the cover is ramified exactly when the two sides carry an
//! odd number of marks. A vertex's preimage is branched over its marks and
//! its ramified nodes; `b` such points give one component of genus `b/2 - 1`,
//! or two disjoint rational sheets when `b = 0`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{require_stable, VertexId, WeightedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberKind {
    /// One node, ramified on both branches.
    Ramified,
    /// Two nodes exchanged by the involution.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverComponent {
    pub id: usize,
    pub base_vertex: VertexId,
    /// `None` when the preimage of the base vertex is irreducible.
    pub sheet: Option<u8>,
    /// Marks on the base vertex, i.e. smooth ramification points.
    pub marked_points: u32,
    /// Marks plus ramified nodes on the base vertex.
    pub branch_count: u32,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeFiber {
    pub base_edge: (VertexId, VertexId),
    pub kind: FiberKind,
    /// One component pair per node over the edge.
    pub nodes: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverModel {
    pub components: Vec<CoverComponent>,
    pub fibers: Vec<NodeFiber>,
    pub genus: u32,
}

impl CoverModel {
    pub fn node_count(&self) -> usize {
        self.fibers.iter().map(|f| f.nodes.len()).sum()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.fibers.iter().flat_map(|f| f.nodes.iter().copied())
    }

    /// `sum of genera + #nodes - #components + 1`.
    pub fn arithmetic_genus(&self) -> i64 {
        arithmetic_genus(self.components.iter().map(|c| c.genus), self.node_count(), self.components.len())
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self.components.len(), self.nodes())
    }

    pub fn components_over(&self, v: VertexId) -> Vec<&CoverComponent> {
        self.components.iter().filter(|c| c.base_vertex == v).collect()
    }

    pub fn fiber_over(&self, a: VertexId, b: VertexId) -> Option<&NodeFiber> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.fibers.iter().find(|f| f.base_edge == key)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph cover {\n");
        for c in &self.components {
            let sheet = c.sheet.map(|s| format!("/{s}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "  c{} [label=\"v{}{} g={} b={}\"];",
                c.id, c.base_vertex, sheet, c.genus, c.branch_count
            );
        }
        for f in &self.fibers {
            let style = match f.kind {
                FiberKind::Ramified => "bold",
                FiberKind::Split => "solid",
            };
            for &(a, b) in &f.nodes {
                let _ = writeln!(out, "  c{a} -- c{b} [style={style}];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Ramified iff the sides of the edge carry an odd number of marks.
pub fn edge_fiber_kind(t: &WeightedTree, a: VertexId, b: VertexId) -> Result<FiberKind> {
    let (wa, _) = t.edge_split(a, b)?;
    Ok(if wa % 2 == 1 { FiberKind::Ramified } else { FiberKind::Split })
}

/// Marks on `v` plus the number of incident edges whose far side has odd weight.
pub fn branch_count(t: &WeightedTree, v: VertexId) -> Result<u32> {
    let odd = t.complementary_subtree_weights(v)?.into_iter().filter(|w| w % 2 == 1).count();
    Ok(t.weight(v)? + odd as u32)
}

pub fn build_cover(t: &WeightedTree) -> Result<CoverModel> {
    let m = t.total_weight();
    if m % 2 == 1 {
        return Err(Error::OddTotalWeight(m));
    }
    require_stable(t)?;
    let genus = (m - 2) / 2;

    let mut components = Vec::new();
    // Component ids over each base vertex: one entry, or two sheets.
    let mut over: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for v in t.vertices() {
        let b = branch_count(t, v.id)?;
        if b % 2 == 1 {
            return Err(Error::Internal(format!("odd branch count {b} over vertex {}", v.id)));
        }
        let ids = if b == 0 {
            (0..2u8)
                .map(|sheet| {
                    components.push(CoverComponent {
                        id: components.len(),
                        base_vertex: v.id,
                        sheet: Some(sheet),
                        marked_points: v.weight,
                        branch_count: 0,
                        genus: 0,
                    });
                    components.len() - 1
                })
                .collect()
        } else {
            components.push(CoverComponent {
                id: components.len(),
                base_vertex: v.id,
                sheet: None,
                marked_points: v.weight,
                branch_count: b,
                genus: b / 2 - 1,
            });
            vec![components.len() - 1]
        };
        over.insert(v.id, ids);
    }

    let mut fibers = Vec::with_capacity(t.edge_count());
    for &(a, b) in t.edges() {
        let kind = edge_fiber_kind(t, a, b)?;
        let (ca, cb) = (&over[&a], &over[&b]);
        let nodes = match kind {
            FiberKind::Ramified => {
                if ca.len() != 1 || cb.len() != 1 {
                    return Err(Error::Internal(format!("ramified edge {a}-{b} meets an unbranched vertex")));
                }
                vec![(ca[0], cb[0])]
            }
            // Over a tree the monodromy is trivial, so matching sheet i with
            // sheet i is the only choice up to isomorphism.
            FiberKind::Split => (0..2).map(|s| (ca[s.min(ca.len() - 1)], cb[s.min(cb.len() - 1)])).collect(),
        };
        fibers.push(NodeFiber { base_edge: (a, b), kind, nodes });
    }

    let cover = CoverModel { components, fibers, genus };
    if !cover.is_connected() {
        return Err(Error::Internal("admissible cover is disconnected".into()));
    }
    if cover.arithmetic_genus() != genus as i64 {
        return Err(Error::Internal(format!(
            "cover has arithmetic genus {} instead of {genus}",
            cover.arithmetic_genus()
        )));
    }
    Ok(cover)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableComponent {
    pub id: usize,
    pub genus: u32,
    /// Node branches on the component; a self-node counts twice.
    pub special_points: u32,
}

/// Isomorphism invariant of a nodal curve's dual multigraph with genus labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModelCode(pub Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableHyperellipticModel {
    pub components: Vec<StableComponent>,
    /// Component pairs, `(c, c)` for a self-node.
    pub nodes: Vec<(usize, usize)>,
    pub genus: u32,
    pub code: ModelCode,
}

impl StableHyperellipticModel {
    pub fn arithmetic_genus(&self) -> i64 {
        arithmetic_genus(self.components.iter().map(|c| c.genus), self.nodes.len(), self.components.len())
    }

    pub fn self_nodes(&self) -> usize {
        self.nodes.iter().filter(|(a, b)| a == b).count()
    }

    /// Every rational component has at least three special points.
    pub fn is_stable(&self) -> bool {
        self.components.iter().all(|c| c.genus > 0 || c.special_points >= 3)
    }
}

/// Contracts rational components meeting the rest of the curve in exactly
/// two points, joining their two neighbors by a node, until none is left.
///
/// In genus 1 the process ends at a rational curve with one self-node, which
/// is as far as contraction goes; for `g >= 2` the result is stable.
pub fn stable_model(cover: &CoverModel) -> Result<StableHyperellipticModel> {
    let mut genera: Vec<u32> = cover.components.iter().map(|c| c.genus).collect();
    let mut alive = vec![true; genera.len()];
    let mut nodes: Vec<(usize, usize)> = cover.nodes().collect();

    loop {
        let candidate = (0..genera.len()).find(|&c| {
            if !alive[c] || genera[c] != 0 {
                return false;
            }
            let incident: Vec<_> = nodes.iter().filter(|&&(a, b)| a == c || b == c).collect();
            incident.len() == 2 && incident.iter().all(|&&(a, b)| a != b)
        });
        let Some(c) = candidate else { break };
        let mut ends = Vec::with_capacity(2);
        nodes.retain(|&(a, b)| {
            if a == c {
                ends.push(b);
                false
            } else if b == c {
                ends.push(a);
                false
            } else {
                true
            }
        });
        alive[c] = false;
        nodes.push((ends[0], ends[1]));
    }

    let renumber: BTreeMap<usize, usize> =
        (0..genera.len()).filter(|&c| alive[c]).enumerate().map(|(new, old)| (old, new)).collect();
    genera = renumber.keys().map(|&old| genera[old]).collect();
    let nodes: Vec<(usize, usize)> = nodes
        .into_iter()
        .map(|(a, b)| {
            let (a, b) = (renumber[&a], renumber[&b]);
            (a.min(b), a.max(b))
        })
        .sorted()
        .collect();
    let components: Vec<StableComponent> = genera
        .iter()
        .enumerate()
        .map(|(id, &genus)| StableComponent {
            id,
            genus,
            special_points: nodes.iter().map(|&(a, b)| (a == id) as u32 + (b == id) as u32).sum(),
        })
        .collect();

    let code = ModelCode(multigraph_code(&genera, &nodes));
    let model = StableHyperellipticModel { components, nodes, genus: cover.genus, code };
    if model.arithmetic_genus() != cover.genus as i64 {
        return Err(Error::Internal(format!(
            "contraction changed the arithmetic genus from {} to {}",
            cover.genus,
            model.arithmetic_genus()
        )));
    }
    if cover.genus >= 2 && !model.is_stable() {
        return Err(Error::Internal("contracted model still has an unstable rational component".into()));
    }
    Ok(model)
}

pub(crate) fn arithmetic_genus(genera: impl Iterator<Item = u32>, nodes: usize, components: usize) -> i64 {
    genera.map(i64::from).sum::<i64>() + nodes as i64 - components as i64 + 1
}

fn is_connected(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    if n == 0 {
        return false;
    }
    let mut adjacency = vec![Vec::new(); n];
    for (a, b) in edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &adjacency[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Canonical code of a vertex-labeled multigraph with loops.
///
/// Colors are refined from `(genus, loops, degree)` by neighbor color
/// multisets until stable; the code is then the minimum, over all orderings
/// that respect the color classes, of `[n, genera..., upper-triangular
/// multiplicity matrix...]`. Stable curves of genus `g` have at most
/// `2g - 2` components, so the search stays small at the sizes used here.
pub(crate) fn multigraph_code(genera: &[u32], edges: &[(usize, usize)]) -> Vec<u32> {
    let n = genera.len();
    let mut mult = vec![vec![0u32; n]; n];
    for &(a, b) in edges {
        mult[a][b] += 1;
        if a != b {
            mult[b][a] += 1;
        }
    }

    let mut colors: Vec<usize> = {
        let keys: Vec<_> = (0..n)
            .map(|v| (genera[v], mult[v][v], (0..n).filter(|&u| u != v).map(|u| mult[v][u]).sum::<u32>()))
            .collect();
        rank(&keys)
    };
    loop {
        let keys: Vec<_> = (0..n)
            .map(|v| {
                let mut around: Vec<_> =
                    (0..n).filter(|&u| u != v && mult[v][u] > 0).map(|u| (colors[u], mult[v][u])).collect();
                around.sort();
                (colors[v], around)
            })
            .collect();
        let refined = rank(&keys);
        let before = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
        let after = refined.iter().collect::<std::collections::BTreeSet<_>>().len();
        colors = refined;
        if after == before {
            break;
        }
    }

    let classes: Vec<Vec<usize>> = (0..n)
        .sorted_by_key(|&v| colors[v])
        .chunk_by(|&v| colors[v])
        .into_iter()
        .map(|(_, group)| group.collect())
        .collect();

    let encode = |order: &[usize]| {
        let mut code = Vec::with_capacity(1 + n + n * (n + 1) / 2);
        code.push(n as u32);
        code.extend(order.iter().map(|&v| genera[v]));
        for i in 0..n {
            for j in i..n {
                code.push(mult[order[i]][order[j]]);
            }
        }
        code
    };

    classes
        .iter()
        .map(|class| class.iter().copied().permutations(class.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|parts| encode(&parts.concat()))
        .min()
        .unwrap_or_else(|| vec![0])
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let distinct: Vec<K> = keys.iter().cloned().sorted().dedup().collect();
    keys.iter().map(|k| distinct.binary_search(k).expect("key present")).collect()
}
