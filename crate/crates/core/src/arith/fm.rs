//! Exact feasibility of small linear systems by Fourier-Motzkin elimination.

use super::field::AlgebraicNumber;
use std::collections::HashMap;

/// `coeffs . y + constant`, compared against zero.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<AlgebraicNumber>,
    pub constant: AlgebraicNumber,
}

impl Constraint {
    pub fn new(coeffs: Vec<AlgebraicNumber>, constant: AlgebraicNumber) -> Self {
        Self { coeffs, constant }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Decides whether `{y : e(y) = 0 for e in equalities, g(y) >= 0 for g in
/// inequalities}` is nonempty.
pub fn is_feasible(mut equalities: Vec<Constraint>, mut inequalities: Vec<Constraint>) -> bool {
    // substitute away every equality with a nonzero coefficient
    while let Some(pos) = equalities.iter().position(|e| !e.is_trivial()) {
        let eq = equalities.swap_remove(pos);
        let j = eq.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let inv = eq.coeffs[j].inverse().expect("nonzero");
        let substitute = |row: &mut Constraint| {
            if row.coeffs[j].is_zero() {
                return;
            }
            let f = &row.coeffs[j] * &inv;
            for (x, e) in row.coeffs.iter_mut().zip(&eq.coeffs) {
                if !e.is_zero() {
                    *x = &*x - &(&f * e);
                }
            }
            row.constant = &row.constant - &(&f * &eq.constant);
        };
        equalities.iter_mut().for_each(substitute);
        inequalities.iter_mut().for_each(substitute);
    }
    if equalities.iter().any(|e| !e.constant.is_zero()) {
        return false;
    }

    let nvars = inequalities.first().map_or(0, |c| c.coeffs.len());
    let mut rows = match normalize(inequalities) {
        Some(r) => r,
        None => return false,
    };
    let mut remaining: Vec<usize> = (0..nvars).collect();
    while !remaining.is_empty() && !rows.is_empty() {
        // eliminate the variable producing the fewest new rows
        let (slot, var) = remaining
            .iter()
            .enumerate()
            .map(|(slot, &v)| {
                let pos = rows.iter().filter(|r| r.coeffs[v].sign() > 0).count();
                let neg = rows.iter().filter(|r| r.coeffs[v].sign() < 0).count();
                (pos * neg, slot, v)
            })
            .min()
            .map(|(_, slot, v)| (slot, v))
            .unwrap();
        remaining.swap_remove(slot);

        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for r in rows {
            match r.coeffs[var].sign() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => next.push(r),
            }
        }
        // normalized rows have coefficient +-1 at their first nonzero entry,
        // so scale before combining
        for p in &pos {
            let sp = p.coeffs[var].inverse().unwrap();
            for n in &neg {
                let sn = (-&n.coeffs[var]).inverse().unwrap();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(a, b)| &(a * &sp) + &(b * &sn))
                    .collect();
                let constant = &(&p.constant * &sp) + &(&n.constant * &sn);
                next.push(Constraint { coeffs, constant });
            }
        }
        rows = match normalize(next) {
            Some(r) => r,
            None => return false,
        };
    }
    rows.iter()
        .all(|r| !r.is_trivial() || r.constant.sign() >= 0)
}

/// Scales rows so the first nonzero coefficient is +-1, drops satisfied
/// constant rows and keeps only the tightest copy of parallel rows. Returns
/// `None` when a constant row is violated.
fn normalize(rows: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut best: HashMap<Vec<AlgebraicNumber>, AlgebraicNumber> = HashMap::new();
    let mut order = Vec::new();
    for row in rows {
        let Some(lead) = row.coeffs.iter().find(|c| !c.is_zero()) else {
            if row.constant.sign() < 0 {
                return None;
            }
            continue;
        };
        let scale = lead.abs().inverse().unwrap();
        let coeffs: Vec<AlgebraicNumber> = row.coeffs.iter().map(|c| c * &scale).collect();
        let constant = &row.constant * &scale;
        match best.get_mut(&coeffs) {
            Some(existing) => {
                if constant.cmp_real(existing).is_lt() {
                    *existing = constant;
                }
            }
            None => {
                order.push(coeffs.clone());
                best.insert(coeffs, constant);
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|coeffs| {
                let constant = best.remove(&coeffs).unwrap();
                Constraint { coeffs, constant }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::NumberField;

    fn c(field: &Arc<NumberField>, coeffs: &[i64], k: i64) -> Constraint {
        Constraint::new(
            coeffs
                .iter()
                .map(|&x| AlgebraicNumber::from_int(field, x))
                .collect(),
            AlgebraicNumber::from_int(field, k),
        )
    }

    #[test]
    fn simple_boxes() {
        let f = NumberField::rational();
        // 0 <= x <= 1, 0 <= y <= 1, x + y = 1
        let ineq = vec![
            c(&f, &[1, 0], 0),
            c(&f, &[-1, 0], 1),
            c(&f, &[0, 1], 0),
            c(&f, &[0, -1], 1),
        ];
        assert!(is_feasible(vec![c(&f, &[1, 1], -1)], ineq.clone()));
        // x + y = 3 is outside the box
        assert!(!is_feasible(vec![c(&f, &[1, 1], -3)], ineq));
        // x >= 1 and x <= 0
        assert!(!is_feasible(vec![], vec![c(&f, &[1], -1), c(&f, &[-1], 0)]));
    }

    #[test]
    fn irrational_bounds() {
        let f = NumberField::new(4).unwrap();
        let t = AlgebraicNumber::theta(&f);
        let one = AlgebraicNumber::one(&f);
        // x >= sqrt2 and x <= 3/2 feasible; x <= 7/5 infeasible
        let lower = Constraint::new(vec![one.clone()], -&t);
        let upper = |num: i64, den: i64| {
            Constraint::new(
                vec![-&one],
                AlgebraicNumber::from_rational(
                    &f,
                    crate::arith::Rational::new(num.into(), den.into()),
                ),
            )
        };
        assert!(is_feasible(vec![], vec![lower.clone(), upper(3, 2)]));
        assert!(!is_feasible(vec![], vec![lower, upper(7, 5)]));
    }
}
