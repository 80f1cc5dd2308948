//! Group elements as signed permutations of the positive roots.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::roots::RootSystem;
use super::rootset::RootSet;
use crate::arith::{FieldMatrix, FieldVector};
use crate::error::{Error, Result};

/// `w(beta_i) = +-beta_j`, encoded as `j << 1 | negative`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    images: Vec<u32>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.images.len())
            .map(|i| {
                let (j, neg) = self.apply(i);
                format!("{}{j}", if neg { "-" } else { "" })
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl GroupElement {
    pub fn identity(num_roots: usize) -> Self {
        Self {
            images: (0..num_roots as u32).map(|i| i << 1).collect(),
        }
    }

    pub(crate) fn from_images(images: Vec<(usize, bool)>) -> Self {
        Self {
            images: images
                .into_iter()
                .map(|(j, neg)| (j as u32) << 1 | u32::from(neg))
                .collect(),
        }
    }

    pub fn num_roots(&self) -> usize {
        self.images.len()
    }

    /// Image of positive root `i`: index of the positive representative and
    /// whether the image is negative.
    pub fn apply(&self, i: usize) -> (usize, bool) {
        let v = self.images[i];
        ((v >> 1) as usize, v & 1 == 1)
    }

    /// The composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other
                .images
                .iter()
                .map(|&v| {
                    let inner = self.images[(v >> 1) as usize];
                    inner ^ (v & 1)
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v >> 1) as usize] = (i as u32) << 1 | (v & 1);
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v == (i as u32) << 1)
    }

    pub fn order(&self) -> usize {
        let mut cur = self.clone();
        let mut k = 1;
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    /// Number of positive roots sent to negative roots (the Coxeter length).
    pub fn length(&self) -> usize {
        self.images.iter().filter(|&&v| v & 1 == 1).count()
    }

    /// Image of a set of positive roots, as positive representatives.
    pub fn map_set(&self, set: &RootSet) -> RootSet {
        set.iter().map(|i| self.apply(i).0).collect()
    }

    /// The linear map in the simple-root basis (columns are images of the
    /// simple roots).
    pub fn matrix(&self, system: &RootSystem) -> FieldMatrix {
        let n = system.rank();
        let field = system.field();
        let mut m = FieldMatrix::zeros(field, n, n);
        for s in 0..n {
            let (j, neg) = self.apply(s);
            let col: FieldVector = system.root(j).to_vec();
            for (r, x) in col.into_iter().enumerate() {
                m.set(r, s, if neg { -x } else { x });
            }
        }
        m
    }
}

/// All elements of `W`, breadth first by length with ties broken by the
/// lexicographically smallest word in the simple generators.
pub fn enumerate_group(system: &RootSystem, limit: u128) -> Result<Vec<GroupElement>> {
    let order = system.coxeter_type().order();
    if order > limit {
        return Err(Error::LimitExceeded {
            what: format!("enumerating {}", system.coxeter_type()),
            needed: order,
            limit,
        });
    }
    Ok(closure(
        &GroupElement::identity(system.num_roots()),
        system.simple_reflections(),
    ))
}

fn closure(identity: &GroupElement, generators: &[GroupElement]) -> Vec<GroupElement> {
    let mut seen: HashMap<GroupElement, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone(), ());
    queue.push_back(identity.clone());
    while let Some(w) = queue.pop_front() {
        for g in generators {
            let next = w.compose(g);
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), ());
                queue.push_back(next);
            }
        }
        out.push(w);
    }
    out
}

/// Result of closing a set of roots under their mutual reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionSubgroup {
    pub roots: RootSet,
    pub order: u128,
    pub rank: usize,
}

/// The reflection subgroup generated by the reflections in `roots`: its
/// closed root subsystem, its order (by enumeration) and its rank.
pub fn reflection_subgroup(system: &RootSystem, roots: &RootSet) -> Result<ReflectionSubgroup> {
    for i in roots.iter() {
        if i >= system.num_roots() {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: system.num_roots(),
            });
        }
    }
    let mut closed = *roots;
    loop {
        let mut next = closed;
        for b in closed.iter() {
            let s = system.reflection(b);
            for c in closed.iter() {
                next.insert(s.apply(c).0);
            }
        }
        if next == closed {
            break;
        }
        closed = next;
    }
    let gens: Vec<GroupElement> = closed
        .iter()
        .map(|b| system.reflection(b).clone())
        .collect();
    let order = closure(&GroupElement::identity(system.num_roots()), &gens).len() as u128;
    let rank = system.rank_of(&closed);
    Ok(ReflectionSubgroup {
        roots: closed,
        order,
        rank,
    })
}
