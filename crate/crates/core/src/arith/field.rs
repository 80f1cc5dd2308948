//! Real number fields `Q(2cos(pi/m))` with exact arithmetic and sign.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Half-width of the initial isolating interval, as a power of two.
const ISOLATION_BITS: u32 = 48;

/// The field `Q(theta)` with `theta = 2cos(pi/m)`, realised through its
/// minimal polynomial and a rational isolating interval for the chosen root.
#[derive(Debug, Clone)]
pub struct NumberField {
    m: u32,
    /// Monic, lowest degree first.
    minimal_polynomial: Vec<Rational>,
    lo: Rational,
    hi: Rational,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}
impl Eq for NumberField {}

/// Integer polynomials, lowest degree first.
type IntPoly = Vec<BigInt>;

fn int_poly_trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn int_poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn int_poly_div_monic(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut rem = a.clone();
    let db = b.len() - 1;
    if rem.len() <= db {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - db] = c.clone();
        for (i, bi) in b.iter().enumerate() {
            rem[k - db + i] -= &c * bi;
        }
    }
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "inexact cyclotomic division"
    );
    quot
}

/// The cyclotomic polynomial `Phi_n`.
pub(crate) fn cyclotomic(n: u32) -> Vec<BigInt> {
    let mut p: IntPoly = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = int_poly_div_monic(&p, &cyclotomic(d));
        }
    }
    int_poly_trim(&mut p);
    p
}

/// `D_k(y)` with `D_k(2cos x) = 2cos(kx)`; `D_0 = 2`.
pub(crate) fn chebyshev_double_cos(k: u32) -> IntPoly {
    let mut prev: IntPoly = vec![BigInt::from(2)];
    let mut cur: IntPoly = vec![BigInt::zero(), BigInt::one()];
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let mut next = int_poly_mul(&cur, &vec![BigInt::zero(), BigInt::one()]);
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn eval_rational(poly: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in poly.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn sign_of(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Returns the field `Q(2cos(pi/m))` with its minimal polynomial and an
/// isolating interval for `2cos(pi/m)`.
///
/// The polynomial comes from halving the cyclotomic polynomial `Phi_{2m}`:
/// `Phi_{2m}(x) = x^k P(x + 1/x)`.
pub fn minimal_polynomial_2cos(m: u32) -> Result<NumberField> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "dihedral label must be >= 2, got {m}"
        )));
    }
    let phi = cyclotomic(2 * m);
    let k = (phi.len() - 1) / 2;
    let mut halved: IntPoly = vec![BigInt::zero(); k + 1];
    halved[0] += &phi[k];
    for j in 1..=k {
        let c = &phi[k + j];
        if c.is_zero() {
            continue;
        }
        for (i, d) in chebyshev_double_cos(j as u32).iter().enumerate() {
            halved[i] += c * d;
        }
    }
    int_poly_trim(&mut halved);
    let minimal_polynomial: Vec<Rational> =
        halved.into_iter().map(Rational::from_integer).collect();
    debug_assert!(minimal_polynomial.last().is_some_and(|c| c.is_one()));

    let (lo, hi) = if minimal_polynomial.len() == 2 {
        let root = -minimal_polynomial[0].clone();
        (root.clone(), root)
    } else {
        let approx = 2.0 * (std::f64::consts::PI / f64::from(m)).cos();
        let centre = Rational::from_float(approx).expect("finite");
        let half = Rational::new(BigInt::one(), BigInt::one() << ISOLATION_BITS);
        let lo = &centre - &half;
        let hi = &centre + &half;
        let slo = sign_of(&eval_rational(&minimal_polynomial, &lo));
        let shi = sign_of(&eval_rational(&minimal_polynomial, &hi));
        if slo * shi >= 0 {
            return Err(Error::InvariantViolation(format!(
                "no sign change isolating 2cos(pi/{m})"
            )));
        }
        (lo, hi)
    };
    Ok(NumberField {
        m,
        minimal_polynomial,
        lo,
        hi,
    })
}

impl NumberField {
    /// The rational field (`theta = 2cos(pi/2) = 0`).
    pub fn rational() -> Arc<Self> {
        Arc::new(minimal_polynomial_2cos(2).expect("m = 2 is valid"))
    }

    pub fn new(m: u32) -> Result<Arc<Self>> {
        minimal_polynomial_2cos(m).map(Arc::new)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.minimal_polynomial.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[Rational] {
        &self.minimal_polynomial
    }

    pub fn isolating_interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    /// Floating approximation of the generator.
    pub fn theta_f64(&self) -> f64 {
        2.0 * (std::f64::consts::PI / f64::from(self.m)).cos()
    }

    /// Number of real roots of the minimal polynomial inside the isolating
    /// interval, counted by a Sturm sequence. Used only for verification.
    pub fn roots_in_isolating_interval(&self) -> usize {
        if self.degree() == 1 {
            return 1;
        }
        let seq = sturm_sequence(&self.minimal_polynomial);
        let changes = |x: &Rational| {
            let signs: Vec<i8> = seq
                .iter()
                .map(|p| sign_of(&eval_rational(p, x)))
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(&self.lo) - changes(&self.hi)
    }
}

fn rat_poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let c = &r[k] / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k - db + i] = &r[k - db + i] - &c * bi;
        }
        r.pop();
    }
    while r.len() > 1 && r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

fn sturm_sequence(p: &[Rational]) -> Vec<Vec<Rational>> {
    let deriv: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect();
    let mut seq = vec![p.to_vec(), deriv];
    loop {
        let n = seq.len();
        if seq[n - 1].len() == 1 {
            break;
        }
        let r: Vec<Rational> = rat_poly_rem(&seq[n - 2], &seq[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        if r.iter().all(|c| c.is_zero()) {
            break;
        }
        seq.push(r);
    }
    seq
}

/// An element of `Q(theta)` in the power basis `1, theta, theta^2, ...`.
#[derive(Clone)]
pub struct AlgebraicNumber {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl AlgebraicNumber {
    pub fn from_coeffs(field: &Arc<NumberField>, mut coeffs: Vec<Rational>) -> Self {
        let d = field.degree();
        if coeffs.len() > d {
            coeffs = reduce(field, coeffs);
        }
        coeffs.resize(d, Rational::zero());
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        let mut out = Self::zero(field);
        out.coeffs[0] = q;
        out
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(n)))
    }

    /// The generator `theta = 2cos(pi/m)`.
    pub fn theta(field: &Arc<NumberField>) -> Self {
        Self::from_coeffs(field, vec![Rational::zero(), Rational::one()])
    }

    /// `2cos(pi/k)` inside `field`, which must be `Q(2cos(pi/M))` with `k | M`,
    /// or `k` in `{2, 3}` (values 0 and 1).
    pub fn two_cos_pi_over(field: &Arc<NumberField>, k: u32) -> Result<Self> {
        match k {
            2 => return Ok(Self::zero(field)),
            3 => return Ok(Self::one(field)),
            _ => {}
        }
        let big_m = field.m();
        if k == 0 || !big_m.is_multiple_of(k) {
            return Err(Error::InvalidArgument(format!(
                "2cos(pi/{k}) is not expressible in Q(2cos(pi/{big_m}))"
            )));
        }
        let cheb = chebyshev_double_cos(big_m / k);
        let coeffs = cheb.into_iter().map(Rational::from_integer).collect();
        Ok(Self::from_coeffs(field, coeffs))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let t = self.field.theta_f64();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, by solving `self * x = 1` over `Q`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.field.degree();
        if d == 1 {
            return Ok(Self::from_rational(&self.field, self.coeffs[0].recip()));
        }
        // columns: self * theta^j
        let mut cols = Vec::with_capacity(d);
        let mut power = Self::one(&self.field);
        let theta = Self::theta(&self.field);
        for _ in 0..d {
            cols.push((self * &power).coeffs);
            power = &power * &theta;
        }
        let mut aug: Vec<Vec<Rational>> = (0..d)
            .map(|r| {
                let mut row: Vec<Rational> = (0..d).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..d {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=d {
                        let v = &aug[col][c] * &f;
                        aug[r][c] -= v;
                    }
                }
            }
        }
        Ok(Self::from_coeffs(
            &self.field,
            aug.into_iter().map(|mut row| row.pop().unwrap()).collect(),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Exact sign under the real embedding `theta = 2cos(pi/m)`.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.field.degree() == 1 {
            return sign_of(&self.coeffs[0]);
        }
        let poly = &self.field.minimal_polynomial;
        let mut lo = self.field.lo.clone();
        let mut hi = self.field.hi.clone();
        let mut sign_lo = sign_of(&eval_rational(poly, &lo));
        loop {
            let (a, b) = eval_interval(&self.coeffs, &lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            let s = sign_of(&eval_rational(poly, &mid));
            if s == 0 {
                // a rational root of an irreducible polynomial of degree > 1
                // cannot occur; treat defensively as exact evaluation
                return sign_of(&eval_rational(&self.coeffs, &mid));
            }
            if s == sign_lo {
                lo = mid;
                sign_lo = s;
            } else {
                hi = mid;
            }
        }
    }

    pub fn cmp_real(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

/// Range of `sum c_i x^i` for `x` in `[lo, hi]` with `lo >= 0`.
fn eval_interval(coeffs: &[Rational], lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut min = Rational::zero();
    let mut max = Rational::zero();
    let mut plo = Rational::one();
    let mut phi = Rational::one();
    for c in coeffs {
        if c.is_positive() {
            min += c * &plo;
            max += c * &phi;
        } else if c.is_negative() {
            min += c * &phi;
            max += c * &plo;
        }
        plo = &plo * lo;
        phi = &phi * hi;
    }
    (min, max)
}

fn reduce(field: &NumberField, mut prod: Vec<Rational>) -> Vec<Rational> {
    let d = field.degree();
    let poly = &field.minimal_polynomial;
    for k in (d..prod.len()).rev() {
        if prod[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut prod[k], Rational::zero());
        for i in 0..d {
            if !poly[i].is_zero() {
                let v = &c * &poly[i];
                prod[k - d + i] -= v;
            }
        }
    }
    prod.truncate(d);
    prod
}

impl<'a> Add<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        let d = self.coeffs.len();
        if d == 1 {
            return AlgebraicNumber {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        AlgebraicNumber {
            field: self.field.clone(),
            coeffs: reduce(&self.field, prod),
        }
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -&self
    }
}

/// Euler's totient, used to predict field degrees.
pub fn totient(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}
