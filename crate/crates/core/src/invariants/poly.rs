use std::fmt;

use crate::error::{Error, Result};

/// A polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Self { coeffs }
    }

    /// `prod (t - r)`.
    pub fn from_roots(roots: &[i128]) -> Self {
        let mut c = vec![1i128];
        for &r in roots {
            let mut next = vec![0i128; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= r * a;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i128)
                .collect(),
        )
    }

    /// Divides by `t - r` if `r` is a root.
    fn deflate(&self, r: i128) -> Option<Self> {
        if self.eval(r) != 0 {
            return None;
        }
        let d = self.degree();
        let mut q = vec![0i128; d];
        let mut carry = 0i128;
        for i in (1..=d).rev() {
            carry = carry * r + self.coeffs[i];
            q[i - 1] = carry;
        }
        Some(Self::new(q))
    }

    /// Factors a monic polynomial as `prod (t - b_i)` with positive
    /// integers `b_i`, ascending. Anything else is an error.
    pub fn positive_integer_roots(&self) -> Result<Vec<u64>> {
        if *self.coeffs.last().unwrap() != 1 {
            return Err(Error::Factorization(format!("{self} is not monic")));
        }
        let bound = 1 + self.coeffs.iter().map(|c| c.abs()).max().unwrap_or(0);
        let mut rest = self.clone();
        let mut roots = Vec::new();
        let mut r = 1;
        while rest.degree() > 0 && r <= bound {
            match rest.deflate(r) {
                Some(q) => {
                    roots.push(r as u64);
                    rest = q;
                }
                None => r += 1,
            }
        }
        if rest.degree() > 0 {
            return Err(Error::Factorization(format!(
                "{self} does not split over the positive integers (leftover {rest})"
            )));
        }
        Ok(roots)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 && !(first && i == 0) {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Crapo's beta invariant `(-1)^(r-1) chi'(1)` of a rank-`r` arrangement.
pub fn beta_from_polynomial(chi: &IntPolynomial) -> i128 {
    let r = chi.degree();
    let d = chi.derivative().eval(1);
    if r % 2 == 1 {
        d
    } else {
        -d
    }
}

/// Number of regions `(-1)^r chi(-1)`.
pub fn region_count(chi: &IntPolynomial) -> i128 {
    let v = chi.eval(-1);
    if chi.degree().is_multiple_of(2) {
        v
    } else {
        -v
    }
}
