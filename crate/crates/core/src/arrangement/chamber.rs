use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use crate::arith::matrix::dot;
use crate::arith::{is_feasible, AlgebraicNumber, Constraint, FieldVector};
use crate::coxeter::{GroupElement, RootSet, RootSystem};

/// The chamber `w C0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chamber {
    element: GroupElement,
}

impl Chamber {
    pub fn new(element: GroupElement) -> Self {
        Self { element }
    }

    pub fn fundamental(system: &RootSystem) -> Self {
        Self::new(GroupElement::identity(system.num_roots()))
    }

    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    /// Sign of each positive root on the interior of the chamber.
    pub fn sign_vector(&self) -> Vec<i8> {
        let inv = self.element.inverse();
        (0..inv.num_roots())
            .map(|b| if inv.apply(b).1 { -1 } else { 1 })
            .collect()
    }
}

/// The face `w C0^J`, with `J` a bitmask of simple indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub chamber: Chamber,
    pub walls: u64,
}

impl Face {
    pub fn new(chamber: Chamber, walls: u64) -> Self {
        Self { chamber, walls }
    }

    pub fn dim(&self, system: &RootSystem) -> usize {
        system.rank() - self.walls.count_ones() as usize
    }

    /// Root set of the linear span of the face.
    pub fn span_roots(&self, system: &RootSystem) -> RootSet {
        self.chamber
            .element
            .map_set(&system.standard_parabolic(self.walls))
    }

    /// Sign of each positive root on the relative interior (0 on roots
    /// vanishing on the span).
    pub fn sign_vector(&self, system: &RootSystem) -> Vec<i8> {
        let inv = self.chamber.element.inverse();
        (0..system.num_roots())
            .map(|b| {
                let (g, neg) = inv.apply(b);
                if system.support(g) & !self.walls == 0 {
                    0
                } else if neg {
                    -1
                } else {
                    1
                }
            })
            .collect()
    }
}

/// `A[t][j] = <alpha_t, x_j>` for a basis `x` of a flat.
fn wall_values(system: &RootSystem, basis: &[FieldVector]) -> Vec<Vec<AlgebraicNumber>> {
    let gram = system.gram();
    (0..system.rank())
        .map(|t| {
            let row = gram.row(t);
            basis.iter().map(|x| dot(&row, x)).collect()
        })
        .collect()
}

/// Whether the flat with this basis has a point `v` in the closed
/// fundamental chamber with `<alpha_s, v> = 1` (for `normal = Some(s)`) or
/// with `sum_s <alpha_s, v> = 1` (for `None`).
pub fn fundamental_cone_point(
    system: &RootSystem,
    basis: &[FieldVector],
    normal: Option<usize>,
) -> bool {
    if basis.is_empty() {
        return false;
    }
    let field = system.field();
    let a = wall_values(system, basis);
    let inequalities: Vec<Constraint> = a
        .iter()
        .map(|row| Constraint::new(row.clone(), AlgebraicNumber::zero(field)))
        .collect();
    let eq_coeffs: Vec<AlgebraicNumber> = match normal {
        Some(s) => a[s].clone(),
        None => (0..basis.len())
            .map(|j| {
                a.iter()
                    .fold(AlgebraicNumber::zero(field), |acc, row| &acc + &row[j])
            })
            .collect(),
    };
    let equality = Constraint::new(eq_coeffs, AlgebraicNumber::from_int(field, -1));
    is_feasible(vec![equality], inequalities)
}

/// Decides `X ∩ C0 = {0}` for the flat with the given root set.
pub fn cone_trivial_fundamental(system: &RootSystem, roots: &RootSet) -> bool {
    !fundamental_cone_point(system, &system.flat_basis(roots), None)
}

/// Decides `X ∩ C = {0}` by moving `X` back to the fundamental chamber.
pub fn cone_trivial(system: &RootSystem, roots: &RootSet, chamber: &Chamber) -> bool {
    let back = chamber.element.inverse().map_set(roots);
    cone_trivial_fundamental(system, &back)
}

/// [`cone_trivial`] with memoization on the flat moved back to `C0`.
#[derive(Debug)]
pub struct ConeTester<'a> {
    system: &'a RootSystem,
    cache: Mutex<HashMap<RootSet, bool>>,
}

impl<'a> ConeTester<'a> {
    pub fn new(system: &'a RootSystem) -> Self {
        Self {
            system,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &RootSystem {
        self.system
    }

    pub fn trivial_at_fundamental(&self, roots: &RootSet) -> bool {
        if let Some(&v) = self.cache.lock().unwrap().get(roots) {
            return v;
        }
        let v = cone_trivial_fundamental(self.system, roots);
        self.cache.lock().unwrap().insert(*roots, v);
        v
    }

    pub fn trivial(&self, roots: &RootSet, chamber: &Chamber) -> bool {
        self.trivial_at_fundamental(&chamber.element.inverse().map_set(roots))
    }

    /// As [`Self::trivial`] with `w^-1` already computed.
    pub fn trivial_with_inverse(&self, roots: &RootSet, inverse: &GroupElement) -> bool {
        self.trivial_at_fundamental(&inverse.map_set(roots))
    }
}

/// The chambers of the restriction `A^X`, as faces `w C0^J` spanning `X`,
/// one per chamber (first element in the given order wins).
pub fn restricted_chambers(
    system: &RootSystem,
    roots: &RootSet,
    elements: &[GroupElement],
) -> Vec<Face> {
    let n = system.rank();
    let mut seen: HashSet<RootSet> = HashSet::new();
    let mut out = Vec::new();
    for w in elements {
        let inv = w.inverse();
        let back = inv.map_set(roots);
        let walls = (0..n)
            .filter(|&s| back.contains(s))
            .fold(0u64, |m, s| m | 1 << s);
        if system.standard_parabolic(walls) != back {
            continue;
        }
        let negative: RootSet = (0..system.num_roots())
            .filter(|&b| !roots.contains(b) && inv.apply(b).1)
            .collect();
        if seen.insert(negative) {
            out.push(Face::new(Chamber::new(w.clone()), walls));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{enumerate_group, parse_type};

    fn sys(t: &str) -> RootSystem {
        RootSystem::generate(&parse_type(t).unwrap()).unwrap()
    }

    #[test]
    fn basic_cone_tests() {
        let a2 = sys("A2");
        let c0 = Chamber::fundamental(&a2);
        assert!(!cone_trivial(&a2, &RootSet::singleton(0), &c0));
        assert!(cone_trivial(&a2, &RootSet::singleton(2), &c0));
        assert!(cone_trivial(&a2, &RootSet::full(3), &c0));
        assert!(!cone_trivial(&a2, &RootSet::empty(), &c0));
    }

    #[test]
    fn faces_and_signs() {
        let h3 = sys("H3");
        let c0 = Chamber::fundamental(&h3);
        assert!(c0.sign_vector().iter().all(|&s| s == 1));
        let f = Face::new(c0.clone(), 0b001);
        assert_eq!(f.dim(&h3), 2);
        assert_eq!(f.span_roots(&h3), RootSet::singleton(0));
        assert_eq!(Face::new(c0, 0b111).dim(&h3), 0);
    }

    #[test]
    fn restricted_chamber_counts() {
        let a3 = sys("A3");
        let els = enumerate_group(&a3, 100).unwrap();
        assert_eq!(restricted_chambers(&a3, &RootSet::empty(), &els).len(), 24);
        // a hyperplane of A3 carries 3 lines, hence 6 regions
        let h = RootSet::singleton(0);
        assert_eq!(restricted_chambers(&a3, &h, &els).len(), 6);
        let line = a3.saturate(&[0, 1].into_iter().collect());
        assert_eq!(restricted_chambers(&a3, &line, &els).len(), 2);
    }
}
