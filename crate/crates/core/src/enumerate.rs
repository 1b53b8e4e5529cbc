//! Census of stable weighted trees of small total weight.
//!
//! Trees are grown from rooted pieces: a piece of weight `k` hangs from a
//! parent edge, so its root needs `weight + children >= 2` and every vertex
//! inside it is stable counting the edge to its parent. A full tree is a root
//! with `weight + children >= 3` and a multiset of pieces. Every stable tree
//! arises this way once per choice of root; duplicates are removed by
//! canonical code.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moduli::classify_stratum;
use crate::tree::{canonical_code, CanonicalCode, WeightedTree};

pub const DEFAULT_BOUND: u32 = 10;

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub code: CanonicalCode,
    pub tree: WeightedTree,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub m: u32,
    /// Sorted by canonical code.
    pub classes: Vec<CensusEntry>,
    /// Number of classes per edge count.
    pub by_codimension: BTreeMap<usize, usize>,
    /// Number of classes per stratum label; empty for odd `m`.
    pub by_stratum: BTreeMap<String, usize>,
}

impl Census {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn trees(&self) -> impl Iterator<Item = &WeightedTree> {
        self.classes.iter().map(|c| &c.tree)
    }
}

pub fn enumerate(m: u32) -> Result<Census> {
    enumerate_with_bound(m, DEFAULT_BOUND)
}

pub fn enumerate_with_bound(m: u32, bound: u32) -> Result<Census> {
    if m < 3 || m > bound {
        return Err(Error::OutOfBounds { m, bound });
    }
    let mut generator = Generator::default();
    let mut classes = BTreeMap::new();
    for (root_weight, children) in generator.full_trees(m) {
        let tree = generator.materialize(root_weight, &children)?;
        classes.entry(canonical_code(&tree)).or_insert(tree);
    }

    let mut by_codimension = BTreeMap::new();
    let mut by_stratum = BTreeMap::new();
    for tree in classes.values() {
        *by_codimension.entry(tree.edge_count()).or_insert(0) += 1;
        if m.is_multiple_of(2) {
            *by_stratum.entry(classify_stratum(tree)?.to_string()).or_insert(0) += 1;
        }
    }
    Ok(Census {
        m,
        classes: classes.into_iter().map(|(code, tree)| CensusEntry { code, tree }).collect(),
        by_codimension,
        by_stratum,
    })
}

/// A piece is identified by `(weight, index into the pool of that weight)`.
type PieceRef = (u32, usize);

#[derive(Clone, Debug)]
struct Piece {
    root_weight: u32,
    children: Vec<PieceRef>,
}

#[derive(Default)]
struct Generator {
    pools: BTreeMap<u32, Vec<Piece>>,
}

impl Generator {
    /// Rooted pieces of total weight `k`, each rooted-isomorphism class once.
    fn pool(&mut self, k: u32) -> &[Piece] {
        if !self.pools.contains_key(&k) {
            let mut pieces = Vec::new();
            for root_weight in 0..=k {
                let min_children = 2u32.saturating_sub(root_weight) as usize;
                for children in self.multisets(k - root_weight, k) {
                    if children.len() >= min_children {
                        pieces.push(Piece { root_weight, children });
                    }
                }
            }
            self.pools.insert(k, pieces);
        }
        &self.pools[&k]
    }

    /// `(root weight, children)` for every rooted full tree of weight `m`.
    fn full_trees(&mut self, m: u32) -> Vec<(u32, Vec<PieceRef>)> {
        let mut out = Vec::new();
        for root_weight in 0..=m {
            let min_children = 3u32.saturating_sub(root_weight) as usize;
            for children in self.multisets(m - root_weight, m + 1) {
                if children.len() >= min_children {
                    out.push((root_weight, children));
                }
            }
        }
        out
    }

    /// Non-increasing sequences of pieces with weights summing to `total`,
    /// each piece weighing less than `cap`. Pieces weigh at least 2.
    fn multisets(&mut self, total: u32, cap: u32) -> Vec<Vec<PieceRef>> {
        let mut candidates: Vec<PieceRef> = Vec::new();
        for w in (2..cap.min(total + 1)).rev() {
            let n = self.pool(w).len();
            candidates.extend((0..n).rev().map(|i| (w, i)));
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        extend_multiset(&candidates, 0, total, &mut current, &mut out);
        out
    }

    fn materialize(&self, root_weight: u32, children: &[PieceRef]) -> Result<WeightedTree> {
        let mut weights = vec![root_weight];
        let mut edges = Vec::new();
        let mut stack: Vec<(usize, PieceRef)> = children.iter().map(|&c| (0, c)).collect();
        while let Some((parent, (w, i))) = stack.pop() {
            let piece = &self.pools[&w][i];
            let id = weights.len();
            weights.push(piece.root_weight);
            edges.push((parent, id));
            stack.extend(piece.children.iter().map(|&c| (id, c)));
        }
        WeightedTree::from_weights(&weights, &edges)
    }
}

fn extend_multiset(
    candidates: &[PieceRef],
    from: usize,
    remaining: u32,
    current: &mut Vec<PieceRef>,
    out: &mut Vec<Vec<PieceRef>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (offset, &piece) in candidates[from..].iter().enumerate() {
        if piece.0 <= remaining {
            current.push(piece);
            extend_multiset(candidates, from + offset, remaining - piece.0, current, out);
            current.pop();
        }
    }
}
