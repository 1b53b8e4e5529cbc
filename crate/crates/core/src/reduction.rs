//! Closed-form local stable reduction of `y^2 = (x - x_1)^{n_1} ... (x - x_r)^{n_r}`.
//!
//! At a root of multiplicity `n` the stable model grows a tail `y^2 = z^n - 1`:
//! genus `n/2 - 1` meeting the central component in two conjugate points when
//! `n` is even, genus `(n-1)/2` meeting it in one point when `n` is odd. The
//! central component is the double cover branched over the odd-multiplicity
//! roots. For `n = 2` the tail is a rational bridge and is contracted to a node.

use serde::{Deserialize, Serialize};

use crate::cover::arithmetic_genus;
use crate::error::{Error, Result};

/// Multiplicities of the roots of a hyperelliptic equation.
///
/// The point at infinity is an ordinary root of multiplicity `at_infinity`
/// (absent when 0); finite roots are `exponents`, all distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExponentDocument", into = "ExponentDocument")]
pub struct ExponentVector {
    at_infinity: u32,
    exponents: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentDocument {
    #[serde(default)]
    pub at_infinity: u32,
    pub exponents: Vec<u32>,
}

impl TryFrom<ExponentDocument> for ExponentVector {
    type Error = Error;

    fn try_from(doc: ExponentDocument) -> Result<Self> {
        ExponentVector::new(doc.at_infinity, doc.exponents)
    }
}

impl From<ExponentVector> for ExponentDocument {
    fn from(e: ExponentVector) -> Self {
        ExponentDocument { at_infinity: e.at_infinity, exponents: e.exponents }
    }
}

impl ExponentVector {
    pub fn new(at_infinity: u32, exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidExponents("at least one finite root is required".into()));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidExponents("finite root multiplicities must be positive".into()));
        }
        let total: u32 = at_infinity + exponents.iter().sum::<u32>();
        if total % 2 == 1 || total < 6 {
            return Err(Error::InvalidExponents(format!(
                "multiplicities sum to {total}; need an even total 2g+2 with g >= 2"
            )));
        }
        Ok(ExponentVector { at_infinity, exponents })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ExponentDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.try_into()
    }

    pub fn at_infinity(&self) -> u32 {
        self.at_infinity
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn genus(&self) -> u32 {
        (self.at_infinity + self.exponents.iter().sum::<u32>() - 2) / 2
    }

    /// `(root index, multiplicity)`, index 0 being infinity, present only when `n_0 > 0`.
    pub fn roots(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        std::iter::once((0, self.at_infinity))
            .filter(|&(_, n)| n > 0)
            .chain(self.exponents.iter().enumerate().map(|(i, &n)| (i + 1, n)))
    }

    pub fn max_exponent(&self) -> u32 {
        self.roots().map(|(_, n)| n).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tail {
    pub root: usize,
    pub exponent: u32,
    pub genus: u32,
    pub attachments: u32,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralComponent {
    /// Odd-multiplicity roots, which stay branch points of the central cover.
    pub branch_points: u32,
    /// 1, or 2 when nothing is branched and the cover splits into two rational sheets.
    pub sheets: u32,
    /// Genus of each sheet.
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutput {
    pub genus: u32,
    pub central: CentralComponent,
    pub tails: Vec<Tail>,
    /// Nodes left behind by contracted rational bridges (`n = 2`).
    pub extra_nodes: u32,
    pub arithmetic_genus: u32,
    /// Some multiplicity exceeds `g + 1`: the homogenized form is GIT-unstable.
    pub unstable_input: bool,
}

impl ReductionOutput {
    pub fn component_count(&self) -> usize {
        self.central.sheets as usize + self.tails.len()
    }

    pub fn node_count(&self) -> u32 {
        self.tails.iter().map(|t| t.attachments).sum::<u32>() + self.extra_nodes
    }
}

pub fn tail_genus(n: u32) -> u32 {
    (n - 1) / 2
}

pub fn tail_attachments(n: u32) -> u32 {
    2 - n % 2
}

pub fn reduce(e: &ExponentVector) -> Result<ReductionOutput> {
    let g = e.genus();
    let max = e.max_exponent();
    if max > 2 * g {
        return Err(Error::ExponentTooLarge { exponent: max, bound: 2 * g });
    }

    let mut tails = Vec::new();
    let mut extra_nodes = 0;
    let mut branch_points = 0;
    for (root, n) in e.roots() {
        if n % 2 == 1 {
            branch_points += 1;
        }
        match n {
            1 => {}
            2 => extra_nodes += 1,
            _ => tails.push(Tail {
                root,
                exponent: n,
                genus: tail_genus(n),
                attachments: tail_attachments(n),
                equation: format!("y^2 = z^{n} - 1"),
            }),
        }
    }
    if branch_points % 2 == 1 {
        return Err(Error::Internal(format!("odd number {branch_points} of central branch points")));
    }
    let central = if branch_points == 0 {
        CentralComponent { branch_points, sheets: 2, genus: 0 }
    } else {
        CentralComponent { branch_points, sheets: 1, genus: branch_points / 2 - 1 }
    };

    let mut out =
        ReductionOutput { genus: g, central, tails, extra_nodes, arithmetic_genus: 0, unstable_input: max > g + 1 };
    let genera =
        std::iter::repeat_n(out.central.genus, out.central.sheets as usize).chain(out.tails.iter().map(|t| t.genus));
    let pa = arithmetic_genus(genera, out.node_count() as usize, out.component_count());
    if pa != g as i64 {
        return Err(Error::Internal(format!("reduced model has arithmetic genus {pa} instead of {g}")));
    }
    out.arithmetic_genus = g;
    Ok(out)
}

/// Multiplicities of the exceptional curves met while blowing up a root of
/// multiplicity `n` until the fibre has normal crossings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupChain {
    pub exponent: u32,
    pub multiplicities: Vec<u32>,
}

/// `n = 2i` gives `2, 4, ..., 2i`; `n = 2i + 1` gives `2, 4, ..., 2i, 2i + 1, 4i + 2`.
pub fn blowup_chain(n: u32) -> Result<BlowupChain> {
    if n < 2 {
        return Err(Error::ChainExponent(n));
    }
    let i = n / 2;
    let mut multiplicities: Vec<u32> = (1..=i).map(|j| 2 * j).collect();
    if n % 2 == 1 {
        multiplicities.extend([2 * i + 1, 4 * i + 2]);
    }
    Ok(BlowupChain { exponent: n, multiplicities })
}
