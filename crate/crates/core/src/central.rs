//! Central component of a stable tree and the contraction to a binary form.
//!
//! A vertex is central when every complementary subtree weighs less than
//! `m/2`. If no edge splits the weight as `(m/2, m/2)` there is exactly one
//! such vertex; contracting every branch onto it leaves a stable binary form
//! with one root of multiplicity `wt(T_i)` per branch and a simple root per
//! mark on the central component. Trees with a half-weight edge map to the
//! semistable point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::BinaryFormClass;
use crate::tree::{require_stable, VertexId, WeightedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CentralResult {
    CentralVertex { vertex: VertexId },
    SemistableEdge { edge: (VertexId, VertexId) },
}

impl fmt::Display for CentralResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralResult::CentralVertex { vertex } => write!(f, "central vertex {vertex}"),
            CentralResult::SemistableEdge { edge: (a, b) } => write!(f, "semistable edge {a}-{b}"),
        }
    }
}

/// The edge splitting the weight evenly, if any. At most one exists: two such
/// edges would enclose a non-empty stretch of total weight 0, which stability
/// rules out (a weight-0 vertex needs degree 3 and so drags in more weight).
pub fn semistable_edge(t: &WeightedTree) -> Option<(VertexId, VertexId)> {
    let m = t.total_weight();
    if m % 2 == 1 {
        return None;
    }
    t.edges().iter().copied().find(|&(a, b)| {
        let (wa, _) = t.edge_split(a, b).expect("edge of the tree");
        2 * wa == m
    })
}

/// Walk towards the heavy side until every complementary subtree weighs less
/// than `m/2`. Returns the visited vertices; the last one is central.
///
/// Fails with [`Error::HalfWeightEdge`] when such an edge exists, since the
/// walk is only meaningful without one.
pub fn central_walk_from(t: &WeightedTree, start: VertexId) -> Result<Vec<VertexId>> {
    require_stable(t)?;
    if let Some((a, b)) = semistable_edge(t) {
        return Err(Error::HalfWeightEdge(a, b));
    }
    let m = t.total_weight();
    let mut current = t.index_of(start)?;
    let mut path = vec![start];
    loop {
        let heavy = t.neighbors_at(current).iter().copied().find(|&j| 2 * t.branch_weight_at(current, j) > m);
        match heavy {
            None => return Ok(path),
            Some(next) => {
                current = next;
                path.push(t.id_at(next));
                if path.len() > t.vertex_count() {
                    return Err(Error::Internal(format!(
                        "central walk from {start} did not terminate within {} steps",
                        t.vertex_count()
                    )));
                }
            }
        }
    }
}

pub fn find_central(t: &WeightedTree) -> Result<CentralResult> {
    require_stable(t)?;
    if let Some(edge) = semistable_edge(t) {
        return Ok(CentralResult::SemistableEdge { edge });
    }
    let start = t.vertices()[0].id;
    let path = central_walk_from(t, start)?;
    Ok(CentralResult::CentralVertex { vertex: *path.last().expect("walk is non-empty") })
}

/// The form obtained by contracting all branches onto the central component.
///
/// Branch roots come first in neighbor-id order, followed by one simple root
/// per mark on the central component; labels are `0, 1, ...`.
pub fn contract_to_form(t: &WeightedTree) -> Result<BinaryFormClass> {
    match find_central(t)? {
        CentralResult::SemistableEdge { .. } => BinaryFormClass::semistable_point(t.total_weight()),
        CentralResult::CentralVertex { vertex } => {
            let mut multiplicities = t.complementary_subtree_weights(vertex)?;
            multiplicities.extend(std::iter::repeat_n(1, t.weight(vertex)? as usize));
            BinaryFormClass::from_multiplicities(&multiplicities)
        }
    }
}
