//! Secondary structures as validated contact sets over `1..=n`.
//!
//! A structure is an undirected graph on the bases `1..=n` with no self-loops
//! and no multiple edges. Two rules apply to its contacts: consecutive bases
//! never pair, and every base takes part in at most one contact. Crossing
//! contacts (pseudoknots) are allowed.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Reasons a list of base pairs does not describe a valid secondary structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("structure length must be at least 1")]
    ZeroLength,
    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("contact {i}·{j} joins consecutive bases")]
    AdjacentContact { i: usize, j: usize },
    #[error("base {index} is paired with itself")]
    SelfLoop { index: usize },
    #[error("base {index} takes part in both {first} and {second}")]
    DuplicateBond {
        index: usize,
        first: Contact,
        second: Contact,
    },
}

impl StructureError {
    /// Stable name of the violated rule, used in user-facing reports.
    pub fn kind(&self) -> &'static str {
        match self {
            StructureError::ZeroLength => "ZeroLength",
            StructureError::IndexOutOfRange { .. } => "IndexOutOfRange",
            StructureError::AdjacentContact { .. } => "AdjacentContact",
            StructureError::SelfLoop { .. } => "SelfLoop",
            StructureError::DuplicateBond { .. } => "DuplicateBond",
        }
    }
}

/// Two structures of different lengths were compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("structures have different lengths ({left} vs {right})")]
pub struct LengthMismatch {
    pub left: usize,
    pub right: usize,
}

/// Fails unless both structures have the same length.
pub fn check_lengths(a: &SecondaryStructure, b: &SecondaryStructure) -> Result<usize, LengthMismatch> {
    if a.len() == b.len() {
        Ok(a.len())
    } else {
        Err(LengthMismatch {
            left: a.len(),
            right: b.len(),
        })
    }
}

/// An unordered base pair, stored with `i < j`.
///
/// Ordering is lexicographic on `(i, j)`, i.e. by left endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Contact {
    i: usize,
    j: usize,
}

impl Contact {
    /// Builds a contact from two bases in either order.
    ///
    /// Rejects self-pairs and pairs of consecutive bases. Range checks
    /// against a structure length happen in [`SecondaryStructure::new`].
    pub fn new(a: usize, b: usize) -> Result<Self, StructureError> {
        let (i, j) = match a.cmp(&b) {
            Ordering::Less => (a, b),
            Ordering::Greater => (b, a),
            Ordering::Equal => return Err(StructureError::SelfLoop { index: a }),
        };
        if j - i == 1 {
            return Err(StructureError::AdjacentContact { i, j });
        }
        Ok(Contact { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// The other endpoint, if `k` is one of them.
    pub fn other(&self, k: usize) -> Option<usize> {
        if k == self.i {
            Some(self.j)
        } else if k == self.j {
            Some(self.i)
        } else {
            None
        }
    }

    /// True when the two contacts form a pseudoknot (`i < k < j < l`).
    pub fn crosses(&self, other: &Contact) -> bool {
        let (a, b) = if self.i < other.i {
            (self, other)
        } else {
            (other, self)
        };
        a.i < b.i && b.i < a.j && a.j < b.j
    }
}

impl fmt::Display for Contact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}", self.i, self.j)
    }
}

/// A validated secondary structure of length `n`.
///
/// Immutable after construction. Contacts are kept sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SecondaryStructure {
    contacts: Vec<Contact>,
    // partners[k - 1] is the partner of base k
    partners: Vec<Option<usize>>,
}

impl SecondaryStructure {
    /// Validates `pairs` (1-based, either orientation) against length `n`.
    ///
    /// Identical pairs given more than once are collapsed. Any base that ends
    /// up in two distinct contacts is a [`StructureError::DuplicateBond`].
    pub fn new<I>(n: usize, pairs: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(StructureError::ZeroLength);
        }
        let mut partners: Vec<Option<usize>> = vec![None; n];
        let mut contacts = Vec::new();
        for (a, b) in pairs {
            for index in [a, b] {
                if index == 0 || index > n {
                    return Err(StructureError::IndexOutOfRange { index, n });
                }
            }
            let contact = Contact::new(a, b)?;
            match (partners[contact.i - 1], partners[contact.j - 1]) {
                (Some(p), _) if p == contact.j => continue,
                (Some(p), _) => {
                    return Err(StructureError::DuplicateBond {
                        index: contact.i,
                        first: Contact::new(contact.i, p)?,
                        second: contact,
                    })
                }
                (None, Some(p)) => {
                    return Err(StructureError::DuplicateBond {
                        index: contact.j,
                        first: Contact::new(contact.j, p)?,
                        second: contact,
                    })
                }
                (None, None) => {}
            }
            partners[contact.i - 1] = Some(contact.j);
            partners[contact.j - 1] = Some(contact.i);
            contacts.push(contact);
        }
        contacts.sort_unstable();
        Ok(SecondaryStructure { contacts, partners })
    }

    /// The structure of length `n` with no contacts.
    pub fn empty(n: usize) -> Result<Self, StructureError> {
        Self::new(n, std::iter::empty())
    }

    /// Number of bases.
    pub fn len(&self) -> usize {
        self.partners.len()
    }

    /// Always false; a structure has at least one base.
    pub fn is_empty(&self) -> bool {
        self.partners.is_empty()
    }

    /// Contacts sorted by left endpoint.
    pub fn contacts(&self) -> &[Contact] {
        &self.contacts
    }

    pub fn num_contacts(&self) -> usize {
        self.contacts.len()
    }

    /// Partner of base `j`, or `None` when `j` is isolated.
    pub fn partner(&self, j: usize) -> Result<Option<usize>, StructureError> {
        if j == 0 || j > self.len() {
            return Err(StructureError::IndexOutOfRange { index: j, n: self.len() });
        }
        Ok(self.partners[j - 1])
    }

    /// Partner table indexed from zero: entry `k - 1` holds the partner of base `k`.
    pub fn partner_table(&self) -> &[Option<usize>] {
        &self.partners
    }

    pub fn contains(&self, contact: &Contact) -> bool {
        self.partners
            .get(contact.i.wrapping_sub(1))
            .is_some_and(|p| *p == Some(contact.j))
    }
}

/// Contacts in exactly one of the two structures, sorted.
pub fn symmetric_difference(
    a: &SecondaryStructure,
    b: &SecondaryStructure,
) -> Result<Vec<Contact>, LengthMismatch> {
    check_lengths(a, b)?;
    let (x, y) = (a.contacts(), b.contacts());
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut p, mut q) = (0, 0);
    while p < x.len() && q < y.len() {
        match x[p].cmp(&y[q]) {
            Ordering::Less => {
                out.push(x[p]);
                p += 1;
            }
            Ordering::Greater => {
                out.push(y[q]);
                q += 1;
            }
            Ordering::Equal => {
                p += 1;
                q += 1;
            }
        }
    }
    out.extend_from_slice(&x[p..]);
    out.extend_from_slice(&y[q..]);
    Ok(out)
}

/// Number of contacts shared by both structures.
pub fn common_contacts(a: &SecondaryStructure, b: &SecondaryStructure) -> Result<usize, LengthMismatch> {
    check_lengths(a, b)?;
    Ok(a.contacts().iter().filter(|c| b.contains(c)).count())
}
