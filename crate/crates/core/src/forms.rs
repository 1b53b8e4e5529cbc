//! Binary forms recorded by root multiplicities, and their GIT stability.
//!
//! Without coordinates the cross-ratios of the roots are not represented, so
//! two forms are identified when their multiplicity multisets agree. All
//! strictly semistable forms of a given even degree collapse to the single
//! semistable point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootLabel(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub label: RootLabel,
    pub multiplicity: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GitClass {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl fmt::Display for GitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GitClass::Stable => "stable",
            GitClass::StrictlySemistable => "strictly_semistable",
            GitClass::Unstable => "unstable",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "FormDocument", into = "FormDocument")]
pub enum BinaryFormClass {
    Roots(Vec<Root>),
    /// The point of the moduli space carrying every strictly semistable form.
    SemistablePoint {
        degree: u32,
    },
}

/// Key for equality on the moduli level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuliPoint {
    SemistablePoint {
        degree: u32,
    },
    /// Multiplicities sorted in decreasing order.
    Multiplicities(Vec<u32>),
}

impl BinaryFormClass {
    /// Labels roots `0, 1, ...` in the order given.
    pub fn from_multiplicities(multiplicities: &[u32]) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::InvalidForm("a form needs at least one root".into()));
        }
        if multiplicities.contains(&0) {
            return Err(Error::InvalidForm("root multiplicities must be positive".into()));
        }
        Ok(BinaryFormClass::Roots(
            multiplicities
                .iter()
                .enumerate()
                .map(|(i, &multiplicity)| Root { label: RootLabel(i as u32), multiplicity })
                .collect(),
        ))
    }

    pub fn from_roots(roots: Vec<Root>) -> Result<Self> {
        let mut labels: Vec<_> = roots.iter().map(|r| r.label).collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidForm("root labels must be distinct".into()));
        }
        if roots.is_empty() || roots.iter().any(|r| r.multiplicity == 0) {
            return Err(Error::InvalidForm("roots must be non-empty with positive multiplicities".into()));
        }
        Ok(BinaryFormClass::Roots(roots))
    }

    pub fn semistable_point(degree: u32) -> Result<Self> {
        if degree % 2 == 1 || degree < 4 {
            return Err(Error::InvalidForm(format!("no semistable point in degree {degree}")));
        }
        Ok(BinaryFormClass::SemistablePoint { degree })
    }

    pub fn degree(&self) -> u32 {
        match self {
            BinaryFormClass::Roots(roots) => roots.iter().map(|r| r.multiplicity).sum(),
            BinaryFormClass::SemistablePoint { degree } => *degree,
        }
    }

    pub fn is_semistable_point(&self) -> bool {
        matches!(self, BinaryFormClass::SemistablePoint { .. })
    }

    /// Multiplicities in root order, `None` for the semistable point.
    pub fn multiplicities(&self) -> Option<Vec<u32>> {
        match self {
            BinaryFormClass::Roots(roots) => Some(roots.iter().map(|r| r.multiplicity).collect()),
            BinaryFormClass::SemistablePoint { .. } => None,
        }
    }

    pub fn sorted_multiplicities(&self) -> Option<Vec<u32>> {
        self.multiplicities().map(|mut m| {
            m.sort_unstable_by(|a, b| b.cmp(a));
            m
        })
    }

    pub fn distinct_roots(&self) -> Option<usize> {
        match self {
            BinaryFormClass::Roots(roots) => Some(roots.len()),
            BinaryFormClass::SemistablePoint { .. } => None,
        }
    }

    /// Stable iff every multiplicity is `< m/2`, strictly semistable iff the
    /// largest is exactly `m/2`, unstable otherwise. The semistable point is
    /// classified strictly semistable.
    pub fn classify(&self) -> GitClass {
        match self {
            BinaryFormClass::SemistablePoint { .. } => GitClass::StrictlySemistable,
            BinaryFormClass::Roots(roots) => {
                let degree = self.degree();
                let max = roots.iter().map(|r| r.multiplicity).max().unwrap_or(0);
                match (2 * max).cmp(&degree) {
                    std::cmp::Ordering::Less => GitClass::Stable,
                    std::cmp::Ordering::Equal => GitClass::StrictlySemistable,
                    std::cmp::Ordering::Greater => GitClass::Unstable,
                }
            }
        }
    }

    pub fn moduli_point(&self) -> ModuliPoint {
        match self.classify() {
            GitClass::StrictlySemistable => ModuliPoint::SemistablePoint { degree: self.degree() },
            _ => ModuliPoint::Multiplicities(self.sorted_multiplicities().unwrap_or_default()),
        }
    }
}

/// Moduli-level equality, see [`ModuliPoint`].
impl PartialEq for BinaryFormClass {
    fn eq(&self, other: &Self) -> bool {
        self.moduli_point() == other.moduli_point()
    }
}

impl Eq for BinaryFormClass {}

impl fmt::Display for BinaryFormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryFormClass::SemistablePoint { degree } => write!(f, "semistable point (degree {degree})"),
            BinaryFormClass::Roots(roots) => {
                let parts: Vec<_> = roots.iter().map(|r| r.multiplicity.to_string()).collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

pub fn classify(f: &BinaryFormClass) -> GitClass {
    f.classify()
}

/// Dimension `m - 3` of the moduli space of semistable forms of degree `m`.
pub fn moduli_dimension(m: u32) -> Result<u32> {
    if m < 3 {
        return Err(Error::DegreeTooSmall(m));
    }
    Ok(m - 3)
}

/// `{"multiplicities": [...]}` or `{"semistable_point": true, "degree": m}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormDocument {
    Roots {
        multiplicities: Vec<u32>,
    },
    SemistablePoint {
        semistable_point: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<u32>,
    },
}

impl From<BinaryFormClass> for FormDocument {
    fn from(f: BinaryFormClass) -> Self {
        match f {
            BinaryFormClass::Roots(roots) => {
                FormDocument::Roots { multiplicities: roots.iter().map(|r| r.multiplicity).collect() }
            }
            BinaryFormClass::SemistablePoint { degree } => {
                FormDocument::SemistablePoint { semistable_point: true, degree: Some(degree) }
            }
        }
    }
}

impl TryFrom<FormDocument> for BinaryFormClass {
    type Error = Error;

    fn try_from(doc: FormDocument) -> Result<Self> {
        match doc {
            FormDocument::Roots { multiplicities } => BinaryFormClass::from_multiplicities(&multiplicities),
            FormDocument::SemistablePoint { semistable_point: true, degree } => {
                let degree = degree.ok_or_else(|| Error::InvalidForm("semistable_point needs a degree".into()))?;
                BinaryFormClass::semistable_point(degree)
            }
            FormDocument::SemistablePoint { semistable_point: false, .. } => {
                Err(Error::InvalidForm("semistable_point must be true".into()))
            }
        }
    }
}
