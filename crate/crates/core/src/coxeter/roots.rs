//! Positive root systems in the simple-root basis.

use std::collections::HashMap;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::group::GroupElement;
use super::rootset::{RootSet, MAX_ROOTS};
use super::types::{field_label, CoxeterMatrix, CoxeterType};
use crate::arith::matrix::{dot, kernel_basis, rank_of};
use crate::arith::{AlgebraicNumber, FieldMatrix, FieldVector, NumberField, Rational};
use crate::error::{Error, Result};

/// The positive roots of a finite Coxeter group with the invariant form
/// `B(a_s, a_s) = 1`, `B(a_s, a_t) = -cos(pi/m_st)`.
///
/// Roots are ordered breadth first from the simple roots (indices
/// `0..rank`), each layer sorted lexicographically by coordinates.
#[derive(Debug, Clone)]
pub struct RootSystem {
    ctype: CoxeterType,
    matrix: CoxeterMatrix,
    field: Arc<NumberField>,
    gram: FieldMatrix,
    roots: Vec<FieldVector>,
    /// `G beta`, so that `B(beta, v) = functional . v`.
    functionals: Vec<FieldVector>,
    supports: Vec<u64>,
    index: HashMap<FieldVector, usize>,
    simple: Vec<GroupElement>,
    reflections: Vec<GroupElement>,
}

fn cmp_lex(a: &[AlgebraicNumber], b: &[AlgebraicNumber]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.cmp_real(y);
        if o.is_ne() {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

impl RootSystem {
    pub fn generate(ctype: &CoxeterType) -> Result<Self> {
        let matrix = ctype.coxeter_matrix();
        let n = matrix.rank();
        let field = NumberField::new(field_label(&matrix))?;
        let half = Rational::new(1.into(), 2.into());
        let mut gram = FieldMatrix::identity(&field, n);
        for s in 0..n {
            for t in 0..n {
                if s != t {
                    let c = AlgebraicNumber::two_cos_pi_over(&field, matrix.get(s, t))?;
                    gram.set(s, t, -c.scale(&half));
                }
            }
        }
        let expected = ctype.reflections();
        if expected > MAX_ROOTS {
            return Err(Error::LimitExceeded {
                what: format!("positive roots of {ctype}"),
                needed: expected as u128,
                limit: MAX_ROOTS as u128,
            });
        }

        let two = AlgebraicNumber::from_int(&field, 2);
        let reflect = |beta: &FieldVector, t: usize| -> FieldVector {
            let bt = dot(&gram.row(t), beta);
            let mut out = beta.clone();
            out[t] = &out[t] - &(&two * &bt);
            out
        };
        let is_positive = |v: &FieldVector| {
            v.iter()
                .find(|c| !c.is_zero())
                .map(|c| c.sign() > 0)
                .unwrap_or(false)
        };

        let mut roots: Vec<FieldVector> = (0..n)
            .map(|s| {
                let mut e = vec![AlgebraicNumber::zero(&field); n];
                e[s] = AlgebraicNumber::one(&field);
                e
            })
            .collect();
        let mut index: HashMap<FieldVector, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let mut layer_start = 0;
        while layer_start < roots.len() {
            let layer_end = roots.len();
            let mut fresh: Vec<FieldVector> = Vec::new();
            for i in layer_start..layer_end {
                for t in 0..n {
                    let img = reflect(&roots[i], t);
                    if is_positive(&img) && !index.contains_key(&img) && !fresh.contains(&img) {
                        fresh.push(img);
                    }
                }
            }
            fresh.sort_by(|a, b| cmp_lex(a, b));
            for r in fresh {
                index.insert(r.clone(), roots.len());
                roots.push(r);
                if roots.len() > expected {
                    return Err(Error::InvariantViolation(format!(
                        "root generation for {ctype} exceeded the expected {expected} roots"
                    )));
                }
            }
            layer_start = layer_end;
        }
        if roots.len() != expected {
            return Err(Error::InvariantViolation(format!(
                "{ctype}: generated {} positive roots, expected {expected}",
                roots.len()
            )));
        }

        let functionals: Vec<FieldVector> = roots.iter().map(|r| gram.mul_vec(r)).collect();
        let supports = roots
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(0u64, |m, (s, _)| m | 1 << s)
            })
            .collect();

        let mut system = Self {
            ctype: ctype.clone(),
            matrix,
            field,
            gram,
            roots,
            functionals,
            supports,
            index,
            simple: Vec::new(),
            reflections: Vec::new(),
        };
        system.reflections = (0..system.roots.len())
            .map(|r| system.build_reflection(r))
            .collect::<Result<_>>()?;
        system.simple = system.reflections[..n].to_vec();
        Ok(system)
    }

    fn build_reflection(&self, r: usize) -> Result<GroupElement> {
        let two = AlgebraicNumber::from_int(&self.field, 2);
        let root = &self.roots[r];
        let images = self
            .roots
            .iter()
            .enumerate()
            .map(|(b, beta)| {
                let c = &two * &dot(&self.functionals[b], root);
                let img: FieldVector = beta.iter().zip(root).map(|(x, y)| x - &(&c * y)).collect();
                self.locate(&img).ok_or_else(|| {
                    Error::InvariantViolation(format!("reflection image of root {b} is not a root"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement::from_images(images))
    }

    /// Index and sign of a vector that is plus or minus a positive root.
    pub fn locate(&self, v: &FieldVector) -> Option<(usize, bool)> {
        if let Some(&i) = self.index.get(v) {
            return Some((i, false));
        }
        let neg: FieldVector = v.iter().map(|x| -x).collect();
        self.index.get(&neg).map(|&i| (i, true))
    }

    pub fn coxeter_type(&self) -> &CoxeterType {
        &self.ctype
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &[AlgebraicNumber] {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[FieldVector] {
        &self.roots
    }

    pub fn functional(&self, i: usize) -> &[AlgebraicNumber] {
        &self.functionals[i]
    }

    /// Bitmask of the simple roots with nonzero coefficient in root `i`.
    pub fn support(&self, i: usize) -> u64 {
        self.supports[i]
    }

    /// Mask with one bit per simple root.
    pub fn full_mask(&self) -> u64 {
        (1u64 << self.rank()) - 1
    }

    /// `B(beta_i, beta_j)`.
    pub fn inner(&self, i: usize, j: usize) -> AlgebraicNumber {
        dot(&self.functionals[i], &self.roots[j])
    }

    pub fn simple_reflections(&self) -> &[GroupElement] {
        &self.simple
    }

    /// The reflection in root `i`.
    pub fn reflection(&self, i: usize) -> &GroupElement {
        &self.reflections[i]
    }

    /// The reflection in root `i`, with a range check.
    pub fn reflection_element(&self, i: usize) -> Result<GroupElement> {
        self.reflections
            .get(i)
            .cloned()
            .ok_or(Error::IndexOutOfRange {
                index: i,
                size: self.roots.len(),
            })
    }

    /// Dimension of the span of a set of roots.
    pub fn rank_of(&self, set: &RootSet) -> usize {
        let rows: Vec<FieldVector> = set.iter().map(|i| self.roots[i].clone()).collect();
        rank_of(&rows, self.rank())
    }

    /// A basis of the flat `{v : B(beta, v) = 0 for beta in set}`, in
    /// simple-root coordinates.
    pub fn flat_basis(&self, set: &RootSet) -> Vec<FieldVector> {
        let rows: Vec<FieldVector> = set.iter().map(|i| self.functionals[i].clone()).collect();
        kernel_basis(&rows, self.rank(), &self.field)
    }

    /// All positive roots vanishing on the given basis vectors.
    pub fn roots_vanishing_on(&self, basis: &[FieldVector]) -> RootSet {
        (0..self.roots.len())
            .filter(|&i| basis.iter().all(|x| dot(&self.functionals[i], x).is_zero()))
            .collect()
    }

    /// Every positive root in the linear span of `set`.
    pub fn saturate(&self, set: &RootSet) -> RootSet {
        let basis = self.flat_basis(set);
        self.roots_vanishing_on(&basis)
    }

    /// Roots whose simple-root support lies inside `mask`: the root
    /// subsystem of the standard parabolic subgroup.
    pub fn standard_parabolic(&self, mask: u64) -> RootSet {
        (0..self.roots.len())
            .filter(|&i| self.supports[i] & !mask == 0)
            .collect()
    }

    /// Hex SHA-256 over the ordered root coordinates.
    pub fn root_order_digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.ctype.to_string().as_bytes());
        for r in &self.roots {
            for c in r {
                for q in c.coefficients() {
                    h.update(q.to_string().as_bytes());
                    h.update(b",");
                }
                h.update(b";");
            }
            h.update(b"|");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}
