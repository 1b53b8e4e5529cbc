//! Boundary strata of stable hyperelliptic curves and their images in the
//! moduli space of semistable binary forms of degree `2g + 2`.
//!
//! A tree with two vertices lies on the divisor `D_j`, `j` the smaller
//! weight. Odd `j = 2i + 1` gives `Delta(i)`, even `j = 2i + 2` gives `Xi(i)`.

use std::fmt;

use crate::central::{find_central, CentralResult};
use crate::cover::{build_cover, CoverModel, FiberKind};
use crate::error::{Error, Result};
use crate::forms::BinaryFormClass;
use crate::tree::{require_stable, VertexId, WeightedTree};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StratumLabel {
    Interior,
    Delta(u32),
    Xi(u32),
    /// Three or more components; codimension is the number of nodes.
    Deeper {
        codimension: u32,
    },
    /// A divisor whose general member maps to the semistable point.
    SemistableImage(Box<StratumLabel>),
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumLabel::Interior => f.write_str("Interior"),
            StratumLabel::Delta(i) => write!(f, "Delta({i})"),
            StratumLabel::Xi(i) => write!(f, "Xi({i})"),
            StratumLabel::Deeper { codimension } => write!(f, "Deeper(codim={codimension})"),
            StratumLabel::SemistableImage(inner) => write!(f, "SemistableImage({inner})"),
        }
    }
}

impl StratumLabel {
    /// Number of marks `j` on the smaller side of the divisor `D_j`.
    pub fn divisor_index(&self) -> Option<u32> {
        match self {
            StratumLabel::Delta(i) => Some(2 * i + 1),
            StratumLabel::Xi(i) => Some(2 * i + 2),
            StratumLabel::SemistableImage(inner) => inner.divisor_index(),
            _ => None,
        }
    }

    /// All divisorial labels in genus `g`, semistable ones wrapped.
    pub fn divisors(g: u32) -> Vec<StratumLabel> {
        let wrap = |label: StratumLabel, j: u32| {
            if j == g + 1 {
                StratumLabel::SemistableImage(Box::new(label))
            } else {
                label
            }
        };
        let deltas = (1..=g / 2).map(|i| wrap(StratumLabel::Delta(i), 2 * i + 1));
        let xis = (0..=(g.saturating_sub(1)) / 2).map(|i| wrap(StratumLabel::Xi(i), 2 * i + 2));
        deltas.chain(xis).collect()
    }
}

fn genus_of_marks(m: u32) -> Result<u32> {
    if m % 2 == 1 {
        return Err(Error::OddTotalWeight(m));
    }
    Ok((m - 2) / 2)
}

pub fn classify_stratum(t: &WeightedTree) -> Result<StratumLabel> {
    let g = genus_of_marks(t.total_weight())?;
    require_stable(t)?;
    Ok(match t.vertex_count() {
        1 => StratumLabel::Interior,
        2 => {
            let j = t.vertices().iter().map(|v| v.weight).min().expect("two vertices");
            let label = if j % 2 == 1 { StratumLabel::Delta((j - 1) / 2) } else { StratumLabel::Xi((j - 2) / 2) };
            if j == g + 1 {
                StratumLabel::SemistableImage(Box::new(label))
            } else {
                label
            }
        }
        _ => StratumLabel::Deeper { codimension: t.edge_count() as u32 },
    })
}

/// Exponent contributed by a tail of arithmetic genus `h` meeting the central
/// component in `attachments` points.
pub fn tail_exponent(h: u32, attachments: u32) -> u32 {
    if attachments == 1 {
        2 * h + 1
    } else {
        2 * h + 2
    }
}

/// The binary form attached to the stable hyperelliptic curve over `t`.
///
/// Computed on the cover side: every branch at the central vertex carries a
/// sub-cover of arithmetic genus `h` glued to the central component in one
/// point (ramified node) or two (split node), contributing the exponent
/// [`tail_exponent`]; the marks on the central vertex are simple roots.
pub fn f_g_exponents(t: &WeightedTree) -> Result<BinaryFormClass> {
    genus_of_marks(t.total_weight())?;
    require_stable(t)?;
    let central = match find_central(t)? {
        CentralResult::SemistableEdge { .. } => return BinaryFormClass::semistable_point(t.total_weight()),
        CentralResult::CentralVertex { vertex } => vertex,
    };
    let cover = build_cover(t)?;
    let mut exponents = Vec::new();
    for neighbor in t.neighbors(central)? {
        let branch = t.branch(central, neighbor)?;
        let attachments = match cover.fiber_over(central, neighbor).map(|f| f.kind) {
            Some(FiberKind::Ramified) => 1,
            Some(FiberKind::Split) => 2,
            None => return Err(Error::Internal(format!("no fiber over edge {central}-{neighbor}"))),
        };
        let h = subcover_genus(&cover, &branch)?;
        exponents.push(tail_exponent(h, attachments));
    }
    let marks = cover
        .components_over(central)
        .first()
        .map(|c| c.marked_points)
        .ok_or_else(|| Error::Internal(format!("no component over central vertex {central}")))?;
    exponents.extend(std::iter::repeat_n(1, marks as usize));
    BinaryFormClass::from_multiplicities(&exponents)
}

/// Arithmetic genus of the part of the cover lying over `vertices`.
fn subcover_genus(cover: &CoverModel, vertices: &[VertexId]) -> Result<u32> {
    let inside: Vec<usize> =
        cover.components.iter().filter(|c| vertices.contains(&c.base_vertex)).map(|c| c.id).collect();
    let nodes = cover.nodes().filter(|(a, b)| inside.contains(a) && inside.contains(b)).count();
    let genera = inside.iter().map(|&c| cover.components[c].genus);
    let pa = crate::cover::arithmetic_genus(genera, nodes, inside.len());
    u32::try_from(pa).map_err(|_| Error::Internal(format!("sub-cover has negative arithmetic genus {pa}")))
}

/// Two-vertex tree representing the general member of a divisor, or the
/// single-vertex tree for the interior.
pub fn generic_tree(label: &StratumLabel, g: u32) -> Result<WeightedTree> {
    check_label(label, g)?;
    let m = 2 * g + 2;
    match label.divisor_index() {
        None => WeightedTree::single(m),
        Some(j) => WeightedTree::path(&[j, m - j]),
    }
}

fn check_label(label: &StratumLabel, g: u32) -> Result<()> {
    let invalid = || Error::InvalidStratum { label: label.to_string(), genus: g };
    if g < 1 {
        return Err(invalid());
    }
    match label {
        StratumLabel::Interior => Ok(()),
        StratumLabel::Delta(i) if (1..=g / 2).contains(i) => Ok(()),
        StratumLabel::Xi(i) if *i <= (g - 1) / 2 => Ok(()),
        StratumLabel::Deeper { .. } => Err(Error::UnsupportedStratum(label.to_string())),
        StratumLabel::SemistableImage(inner) if inner.divisor_index() == Some(g + 1) => check_label(inner, g),
        _ => Err(invalid()),
    }
}

/// Dimension of the image of a stratum under the map to binary forms.
///
/// Interior: `2g - 1`; `Delta(i)`: `2g - 2i - 1`; `Xi(i)`: `2g - 2i - 2`; a
/// divisor with `j = g + 1` (wrapped or not) collapses to the semistable
/// point. The value is cross-checked against `#distinct roots - 3` of the
/// form of the generic member.
pub fn image_dimension(label: &StratumLabel, g: u32) -> Result<u32> {
    check_label(label, g)?;
    if label.divisor_index() == Some(g + 1) {
        let form = f_g_exponents(&generic_tree(label, g)?)?;
        if !form.is_semistable_point() {
            return Err(Error::Internal(format!("{label} in genus {g} does not reach the semistable point")));
        }
        return Ok(0);
    }
    let by_formula = match label {
        StratumLabel::Interior => 2 * g - 1,
        StratumLabel::Delta(i) => 2 * g - 2 * i - 1,
        StratumLabel::Xi(i) => 2 * g - 2 * i - 2,
        _ => return Err(Error::UnsupportedStratum(label.to_string())),
    };
    let form = f_g_exponents(&generic_tree(label, g)?)?;
    let by_roots = form.distinct_roots().map(|r| r as i64 - 3);
    if by_roots != Some(by_formula as i64) {
        return Err(Error::Internal(format!(
            "image dimension of {label} in genus {g}: formula {by_formula}, roots give {by_roots:?}"
        )));
    }
    Ok(by_formula)
}
