//! Involutions of structures and the orbits of the group they generate.
//!
//! Every structure acts on `1..=n` as the involution swapping the two ends of
//! each contact. The orbits of the group generated by two such involutions
//! are the connected components of the graph whose edges are the contacts of
//! both structures. Each base has at most one edge from each structure, so a
//! component is either a path (linear orbit) or a cycle whose edges
//! alternate between the structures (cyclic orbit).

use std::fmt;

use crate::structure::{check_lengths, Contact, LengthMismatch, SecondaryStructure};

/// The involution of a structure, in one-line notation over `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Involution {
    // map[k - 1] is the image of k
    map: Vec<usize>,
}

impl Involution {
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Image of `j` (1-based).
    ///
    /// # Panics
    ///
    /// Panics if `j` is not in `1..=n`.
    pub fn apply(&self, j: usize) -> usize {
        self.map[j - 1]
    }

    /// Images of `1..=n` in order.
    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }
}

/// Swaps the two ends of every contact; isolated bases are fixed.
pub fn involution_of(s: &SecondaryStructure) -> Involution {
    let map = s
        .partner_table()
        .iter()
        .enumerate()
        .map(|(k, p)| p.unwrap_or(k + 1))
        .collect();
    Involution { map }
}

/// Which structure an orbit edge comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    First,
    Second,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    Linear,
    Cyclic,
}

impl fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitKind::Linear => "linear",
            OrbitKind::Cyclic => "cyclic",
        })
    }
}

/// One orbit, with its members listed along the contact path.
///
/// Linear orbits start at their smaller endpoint. Cyclic orbits start at
/// their smallest member and step first along its edge from the first
/// structure; their edge list ends with the closing contact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orbit {
    pub members: Vec<usize>,
    pub kind: OrbitKind,
    pub edges: Vec<(Contact, Origin)>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Contacts of this orbit that belong to exactly one structure.
    pub fn unshared_contacts(&self) -> usize {
        self.edges.iter().filter(|(_, o)| *o != Origin::Both).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    /// Sorted by smallest member.
    pub orbits: Vec<Orbit>,
    /// Number of cyclic orbits with more than two members.
    pub omega: usize,
}

impl OrbitDecomposition {
    /// Total number of contacts belonging to exactly one structure.
    pub fn symmetric_difference_size(&self) -> usize {
        self.orbits.iter().map(Orbit::unshared_contacts).sum()
    }
}

/// Per-base neighbours in the union graph.
struct Neighbours<'a> {
    first: &'a [Option<usize>],
    second: &'a [Option<usize>],
}

impl Neighbours<'_> {
    fn step(&self, k: usize, along: Origin) -> Option<usize> {
        match along {
            Origin::First => self.first[k - 1],
            Origin::Second => self.second[k - 1],
            Origin::Both => unreachable!("paths never step along a shared edge"),
        }
    }

    fn is_shared(&self, k: usize) -> bool {
        self.first[k - 1].is_some() && self.first[k - 1] == self.second[k - 1]
    }

    fn degree(&self, k: usize) -> usize {
        if self.is_shared(k) {
            1
        } else {
            usize::from(self.first[k - 1].is_some()) + usize::from(self.second[k - 1].is_some())
        }
    }
}

fn flip(o: Origin) -> Origin {
    match o {
        Origin::First => Origin::Second,
        Origin::Second => Origin::First,
        Origin::Both => Origin::Both,
    }
}

fn edge(a: usize, b: usize, origin: Origin) -> (Contact, Origin) {
    (Contact::new(a, b).expect("contacts come from validated structures"), origin)
}

/// Splits `1..=n` into the orbits of the group generated by both involutions.
pub fn decompose_orbits(
    a: &SecondaryStructure,
    b: &SecondaryStructure,
) -> Result<OrbitDecomposition, LengthMismatch> {
    let n = check_lengths(a, b)?;
    let nb = Neighbours {
        first: a.partner_table(),
        second: b.partner_table(),
    };
    let mut visited = vec![false; n];
    let mut orbits = Vec::new();

    // Paths first: scanning upward, the first endpoint met is the smaller one.
    for start in 1..=n {
        if visited[start - 1] || nb.degree(start) > 1 {
            continue;
        }
        visited[start - 1] = true;
        if nb.is_shared(start) {
            let other = nb.first[start - 1].unwrap();
            visited[other - 1] = true;
            orbits.push(Orbit {
                members: vec![start, other],
                kind: OrbitKind::Cyclic,
                edges: vec![edge(start, other, Origin::Both)],
            });
            continue;
        }
        let mut members = vec![start];
        let mut edges = Vec::new();
        let mut along = if nb.first[start - 1].is_some() {
            Origin::First
        } else {
            Origin::Second
        };
        let mut here = start;
        while let Some(next) = nb.step(here, along) {
            debug_assert!(!visited[next - 1], "union graph has a node of degree > 2");
            visited[next - 1] = true;
            edges.push(edge(here, next, along));
            members.push(next);
            here = next;
            along = flip(along);
        }
        orbits.push(Orbit {
            members,
            kind: OrbitKind::Linear,
            edges,
        });
    }

    // Everything left has one edge from each structure and lies on a cycle.
    for start in 1..=n {
        if visited[start - 1] {
            continue;
        }
        let mut members = Vec::new();
        let mut edges = Vec::new();
        let mut along = Origin::First;
        let mut here = start;
        loop {
            visited[here - 1] = true;
            members.push(here);
            let next = nb
                .step(here, along)
                .expect("unvisited bases have degree two");
            edges.push(edge(here, next, along));
            if next == start {
                break;
            }
            here = next;
            along = flip(along);
        }
        debug_assert!(members.len() % 2 == 0);
        orbits.push(Orbit {
            members,
            kind: OrbitKind::Cyclic,
            edges,
        });
    }

    orbits.sort_unstable_by_key(|o| o.members.iter().copied().min());
    let omega = orbits
        .iter()
        .filter(|o| o.kind == OrbitKind::Cyclic && o.size() > 2)
        .count();
    Ok(OrbitDecomposition { orbits, omega })
}
