//! Finite Coxeter type symbols, Coxeter matrices and degree tables.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An irreducible finite Coxeter type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Irreducible {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    /// Dihedral `I2(m)`, `m >= 5`; `m = 6` is spelled `G2`.
    I2(u32),
}

impl Irreducible {
    pub fn rank(&self) -> usize {
        match *self {
            Irreducible::A(n) | Irreducible::B(n) | Irreducible::D(n) => n,
            Irreducible::E(n) | Irreducible::H(n) => n,
            Irreducible::F4 => 4,
            Irreducible::I2(_) => 2,
        }
    }

    fn validate(self) -> Result<Self> {
        let bad = |family: &str, rank: usize| {
            Err(Error::RankOutOfRange {
                family: family.to_string(),
                rank,
            })
        };
        match self {
            Irreducible::A(n) if n < 1 => bad("A", n),
            Irreducible::B(n) if n < 2 => bad("B", n),
            Irreducible::D(n) if n < 4 => bad("D", n),
            Irreducible::E(n) if !(6..=8).contains(&n) => bad("E", n),
            Irreducible::H(n) if !(3..=4).contains(&n) => bad("H", n),
            Irreducible::I2(m) if m < 5 => bad("I2", m as usize),
            other => Ok(other),
        }
    }

    /// Coxeter labels in the standard (Bourbaki) numbering; only entries
    /// above 2 are listed, as `(i, j, m_ij)` with 0-based nodes.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let path = |n: usize| {
            (0..n.saturating_sub(1))
                .map(|i| (i, i + 1, 3))
                .collect::<Vec<_>>()
        };
        match *self {
            Irreducible::A(n) => path(n),
            Irreducible::B(n) => {
                let mut e = path(n);
                e.last_mut().unwrap().2 = 4;
                e
            }
            Irreducible::D(n) => {
                let mut e = path(n - 1);
                e.push((n - 3, n - 1, 3));
                e
            }
            Irreducible::E(n) => {
                let mut e = vec![(0, 2, 3), (1, 3, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1, 3)));
                e
            }
            Irreducible::F4 => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            Irreducible::H(n) => {
                let mut e = path(n);
                e[0].2 = 5;
                e
            }
            Irreducible::I2(m) => vec![(0, 1, m)],
        }
    }

    /// Degrees of the basic invariants, ascending.
    pub fn degrees(&self) -> Vec<u64> {
        match *self {
            Irreducible::A(n) => (2..=n as u64 + 1).collect(),
            Irreducible::B(n) => (1..=n as u64).map(|i| 2 * i).collect(),
            Irreducible::D(n) => {
                let mut d: Vec<u64> = (1..n as u64).map(|i| 2 * i).collect();
                d.push(n as u64);
                d.sort_unstable();
                d
            }
            Irreducible::E(6) => vec![2, 5, 6, 8, 9, 12],
            Irreducible::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
            Irreducible::E(_) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            Irreducible::F4 => vec![2, 6, 8, 12],
            Irreducible::H(3) => vec![2, 6, 10],
            Irreducible::H(_) => vec![2, 12, 20, 30],
            Irreducible::I2(m) => vec![2, u64::from(m)],
        }
    }

    /// Whether every restricted arrangement behaves uniformly (types
    /// `A_n`, `B_n`, `I2(m)`, `H3`).
    pub fn is_coincidental(&self) -> bool {
        matches!(
            self,
            Irreducible::A(_) | Irreducible::B(_) | Irreducible::I2(_) | Irreducible::H(3)
        )
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Irreducible::A(n) => write!(f, "A{n}"),
            Irreducible::B(n) => write!(f, "B{n}"),
            Irreducible::D(n) => write!(f, "D{n}"),
            Irreducible::E(n) => write!(f, "E{n}"),
            Irreducible::F4 => write!(f, "F4"),
            Irreducible::H(n) => write!(f, "H{n}"),
            Irreducible::I2(6) => write!(f, "G2"),
            Irreducible::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Degree data of an irreducible type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable {
    pub degrees: Vec<u64>,
    pub exponents: Vec<u64>,
    pub coxeter_number: u64,
    pub order: u128,
}

impl DegreeTable {
    pub fn of(t: &Irreducible) -> Self {
        let degrees = t.degrees();
        let exponents = degrees.iter().map(|d| d - 1).collect();
        let coxeter_number = *degrees.last().unwrap();
        let order = degrees.iter().map(|&d| u128::from(d)).product();
        Self {
            degrees,
            exponents,
            coxeter_number,
            order,
        }
    }

    /// Number of reflections `N = sum of exponents`.
    pub fn reflections(&self) -> u64 {
        self.exponents.iter().sum()
    }
}

/// A finite Coxeter type: a product of irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterType {
    factors: Vec<Irreducible>,
}

impl CoxeterType {
    pub fn new(factors: Vec<Irreducible>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("empty Coxeter type".into()));
        }
        let factors = factors
            .into_iter()
            .map(Irreducible::validate)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { factors })
    }

    pub fn irreducible(t: Irreducible) -> Result<Self> {
        Self::new(vec![t])
    }

    pub fn factors(&self) -> &[Irreducible] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(Irreducible::rank).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    /// Offsets of each factor's first node in the global numbering.
    pub fn factor_offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.factors
            .iter()
            .map(|f| {
                let o = off;
                off += f.rank();
                o
            })
            .collect()
    }

    pub fn coxeter_matrix(&self) -> CoxeterMatrix {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (f, off) in self.factors.iter().zip(self.factor_offsets()) {
            for (i, j, label) in f.edges() {
                m[off + i][off + j] = label;
                m[off + j][off + i] = label;
            }
        }
        CoxeterMatrix { entries: m }
    }

    /// Group order `|W|`, the product of all degrees.
    pub fn order(&self) -> u128 {
        self.factors
            .iter()
            .map(|f| DegreeTable::of(f).order)
            .product()
    }

    /// Number of reflections.
    pub fn reflections(&self) -> usize {
        self.factors
            .iter()
            .map(|f| DegreeTable::of(f).reflections() as usize)
            .sum()
    }

    /// All exponents, ascending.
    pub fn exponents(&self) -> Vec<u64> {
        let mut e: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|f| DegreeTable::of(f).exponents)
            .collect();
        e.sort_unstable();
        e
    }

    /// The degree table, for irreducible types only.
    pub fn degree_table(&self) -> Option<DegreeTable> {
        self.is_irreducible()
            .then(|| DegreeTable::of(&self.factors[0]))
    }

    /// Classifies a Coxeter matrix of finite type. Factors are returned sorted
    /// by rank, then family.
    pub fn classify(matrix: &CoxeterMatrix) -> Result<Self> {
        let n = matrix.rank();
        if n == 0 {
            return Ok(Self { factors: vec![] });
        }
        let mut seen = vec![false; n];
        let mut factors = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for w in 0..n {
                    if !seen[w] && matrix.get(v, w) > 2 {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            factors.push(classify_connected(matrix, &comp)?);
        }
        factors.sort_by_key(|f| (f.rank(), *f));
        Ok(Self { factors })
    }

    /// Label of a possibly empty product; `A0` for the trivial group and
    /// exponent notation for repeated factors (`A1^2xA2`).
    pub fn label_of(factors: &[Irreducible]) -> String {
        if factors.is_empty() {
            return "A0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < factors.len() {
            let mut j = i;
            while j < factors.len() && factors[j] == factors[i] {
                j += 1;
            }
            if j - i > 1 {
                parts.push(format!("{}^{}", factors[i], j - i));
            } else {
                parts.push(factors[i].to_string());
            }
            i = j;
        }
        parts.join("x")
    }
}

fn classify_connected(matrix: &CoxeterMatrix, comp: &[usize]) -> Result<Irreducible> {
    let k = comp.len();
    let mut edges = Vec::new();
    for (a, &i) in comp.iter().enumerate() {
        for (b, &j) in comp.iter().enumerate().skip(a + 1) {
            let m = matrix.get(i, j);
            if m > 2 {
                edges.push((a, b, m));
            }
        }
    }
    let infinite = || Error::InvalidArgument("Coxeter matrix is not of finite type".into());
    if k == 1 {
        return Ok(Irreducible::A(1));
    }
    if k == 2 {
        return Ok(match edges[0].2 {
            3 => Irreducible::A(2),
            4 => Irreducible::B(2),
            m => Irreducible::I2(m),
        });
    }
    if edges.len() != k - 1 {
        return Err(infinite());
    }
    let mut degree = vec![0usize; k];
    for &(a, b, _) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let heavy: Vec<_> = edges.iter().filter(|e| e.2 > 3).collect();
    let branch: Vec<usize> = (0..k).filter(|&v| degree[v] >= 3).collect();
    match (heavy.len(), branch.len()) {
        (0, 0) => Ok(Irreducible::A(k)),
        (1, 0) => {
            let (a, b, m) = *heavy[0];
            let at_end = degree[a] == 1 || degree[b] == 1;
            match (m, k, at_end) {
                (4, _, true) => Ok(Irreducible::B(k)),
                (4, 4, false) => Ok(Irreducible::F4),
                (5, 3, true) => Ok(Irreducible::H(3)),
                (5, 4, true) => Ok(Irreducible::H(4)),
                _ => Err(infinite()),
            }
        }
        (0, 1) if degree[branch[0]] == 3 => {
            let centre = branch[0];
            let mut arms: Vec<usize> = Vec::new();
            for &(a, b, _) in edges.iter().filter(|e| e.0 == centre || e.1 == centre) {
                let mut prev = centre;
                let mut cur = if a == centre { b } else { a };
                let mut len = 1;
                loop {
                    let next = edges.iter().find_map(|&(x, y, _)| {
                        if x == cur && y != prev {
                            Some(y)
                        } else if y == cur && x != prev {
                            Some(x)
                        } else {
                            None
                        }
                    });
                    match next {
                        Some(nx) => {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(Irreducible::D(k)),
                [1, 2, 2] => Ok(Irreducible::E(6)),
                [1, 2, 3] => Ok(Irreducible::E(7)),
                [1, 2, 4] => Ok(Irreducible::E(8)),
                _ => Err(infinite()),
            }
        }
        _ => Err(infinite()),
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_type(s)
    }
}

/// Parses `FACTOR ('x' FACTOR)*` where a factor is one of `A<n>`, `B<n>`,
/// `D<n>`, `E6..E8`, `F4`, `G2`, `H3`, `H4` or `I2(<m>)`.
pub fn parse_type(symbol: &str) -> Result<CoxeterType> {
    let bytes = symbol.as_bytes();
    let mut pos = 0;
    let mut factors = Vec::new();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let number = |pos: &mut usize| -> Result<usize> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err(err(start, "expected a number"));
        }
        symbol[start..*pos]
            .parse()
            .map_err(|_| err(start, "number out of range"))
    };
    loop {
        let start = pos;
        let Some(&letter) = bytes.get(pos) else {
            return Err(err(pos, "expected a factor"));
        };
        pos += 1;
        let factor = match letter {
            b'A' => Irreducible::A(number(&mut pos)?),
            b'B' => Irreducible::B(number(&mut pos)?),
            b'D' => Irreducible::D(number(&mut pos)?),
            b'E' => Irreducible::E(number(&mut pos)?),
            b'H' => Irreducible::H(number(&mut pos)?),
            b'F' => match number(&mut pos)? {
                4 => Irreducible::F4,
                n => {
                    return Err(Error::RankOutOfRange {
                        family: "F".into(),
                        rank: n,
                    })
                }
            },
            b'G' => match number(&mut pos)? {
                2 => Irreducible::I2(6),
                n => {
                    return Err(Error::RankOutOfRange {
                        family: "G".into(),
                        rank: n,
                    })
                }
            },
            b'I' => {
                if number(&mut pos)? != 2 || bytes.get(pos) != Some(&b'(') {
                    return Err(err(start, "dihedral types are written I2(m)"));
                }
                pos += 1;
                let m = number(&mut pos)?;
                if bytes.get(pos) != Some(&b')') {
                    return Err(err(pos, "expected ')'"));
                }
                pos += 1;
                match m {
                    0..=2 => return Err(err(start, "I2(m) needs m >= 3")),
                    3 => return Err(err(start, "I2(3) is spelled A2")),
                    4 => return Err(err(start, "I2(4) is spelled B2")),
                    6 => return Err(err(start, "I2(6) is spelled G2")),
                    m => Irreducible::I2(m as u32),
                }
            }
            _ => return Err(err(start, "unknown Coxeter family")),
        };
        factors.push(factor.validate()?);
        match bytes.get(pos) {
            None => break,
            Some(b'x') => pos += 1,
            Some(_) => return Err(err(pos, "expected 'x' between factors")),
        }
    }
    CoxeterType::new(factors)
}

/// A symmetric Coxeter matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(
                    "Coxeter matrix must be square".into(),
                ));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != 1 {
                    return Err(Error::InvalidArgument("diagonal entries must be 1".into()));
                }
                if i != j && (m < 2 || entries[j][i] != m) {
                    return Err(Error::InvalidArgument(format!(
                        "invalid off-diagonal label at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The `M` such that `Q(2cos(pi/M))` contains every `cos(pi/m_st)`: the lcm of
/// the labels above 3 (labels 2 and 3 give rational cosines).
pub fn field_label(matrix: &CoxeterMatrix) -> u32 {
    let mut l = 1;
    for row in matrix.entries() {
        for &m in row {
            if m > 3 {
                l = l / gcd(l, m) * m;
            }
        }
    }
    l.max(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let h4 = parse_type("H4").unwrap();
        assert_eq!(h4.rank(), 4);
        assert!(h4.is_irreducible());
        let ab = parse_type("A2xB3").unwrap();
        assert_eq!(ab.factors().len(), 2);
        assert_eq!(ab.rank(), 5);
        assert!(parse_type("I2(4)").is_err());
        assert!(parse_type("I2(6)").is_err());
        assert_eq!(parse_type("G2").unwrap().factors(), &[Irreducible::I2(6)]);
        assert_eq!(parse_type("I2(7)").unwrap().to_string(), "I2(7)");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_type("A2xQ3") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_type("D3"),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(matches!(
            parse_type("E9"),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(parse_type("A2x").is_err());
        assert!(parse_type("").is_err());
    }

    #[test]
    fn round_trip_symbols() {
        for s in ["A1", "A2xB3", "H4", "I2(7)", "G2", "D4xE8", "F4xH3xA1"] {
            assert_eq!(parse_type(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn degree_identities() {
        for s in [
            "A4", "B4", "D5", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)", "G2",
        ] {
            let t = parse_type(s).unwrap();
            let d = t.degree_table().unwrap();
            assert_eq!(d.coxeter_number, d.exponents.last().unwrap() + 1);
            assert_eq!(
                2 * d.reflections(),
                d.coxeter_number * t.rank() as u64,
                "{s}"
            );
        }
        assert_eq!(parse_type("E8").unwrap().order(), 696_729_600);
        assert_eq!(parse_type("H4").unwrap().order(), 14_400);
    }

    #[test]
    fn classification_recovers_types() {
        for s in [
            "A5", "B4", "D5", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)", "G2", "B2",
        ] {
            let t = parse_type(s).unwrap();
            assert_eq!(
                CoxeterType::classify(&t.coxeter_matrix()).unwrap(),
                t,
                "{s}"
            );
        }
        let prod = parse_type("A2xA1").unwrap();
        assert_eq!(
            CoxeterType::classify(&prod.coxeter_matrix())
                .unwrap()
                .to_string(),
            "A1xA2"
        );
        assert_eq!(
            CoxeterType::label_of(&[Irreducible::A(1), Irreducible::A(1)]),
            "A1^2"
        );
    }

    #[test]
    fn field_labels() {
        assert_eq!(field_label(&parse_type("E8").unwrap().coxeter_matrix()), 2);
        assert_eq!(field_label(&parse_type("B3").unwrap().coxeter_matrix()), 4);
        assert_eq!(field_label(&parse_type("H4").unwrap().coxeter_matrix()), 5);
        assert_eq!(
            field_label(&parse_type("B2xH3").unwrap().coxeter_matrix()),
            20
        );
    }
}
