use serde::Serialize;

use crate::coxeter::{field_label, CoxeterType, DegreeTable, RootSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSummary {
    pub factor: String,
    pub rank: usize,
    pub degrees: Vec<u64>,
    pub exponents: Vec<u64>,
    pub coxeter_number: u64,
    /// Number of reflections.
    pub reflections: u64,
    pub order: String,
    /// `2N = h n`.
    pub identity_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Description {
    pub group: String,
    pub rank: usize,
    pub reflections: usize,
    pub order: String,
    /// `m` such that roots live in `Q(2 cos(pi/m))`.
    pub field: u32,
    pub root_order_digest: String,
    pub factors: Vec<FactorSummary>,
}

impl Description {
    pub fn passed(&self) -> bool {
        self.factors.iter().all(|f| f.identity_holds)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "# {}\n\n- rank: {}\n- reflections N: {}\n- order |W|: {}\n- field: Q(2cos(pi/{}))\n- root order digest: {}\n",
            self.group, self.rank, self.reflections, self.order, self.field, self.root_order_digest
        );
        for f in &self.factors {
            let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
            out.push_str(&format!(
                "\n## {}\n\n- rank n: {}\n- degrees: {}\n- exponents: {}\n- Coxeter number h: {}\n- reflections N: {}\n- order: {}\n- 2N = hn: {} ({} = {})\n",
                f.factor,
                f.rank,
                list(&f.degrees),
                list(&f.exponents),
                f.coxeter_number,
                f.reflections,
                f.order,
                if f.identity_holds { "holds" } else { "FAILS" },
                2 * f.reflections,
                f.coxeter_number * f.rank as u64,
            ));
        }
        out
    }
}

/// Degree data of every factor, with `2N = hn` checked and the root count
/// checked against a generated root system.
pub fn describe(group: &CoxeterType) -> Result<Description> {
    let system = RootSystem::generate(group)?;
    let factors: Vec<FactorSummary> = group
        .factors()
        .iter()
        .map(|t| {
            let table = DegreeTable::of(t);
            let n = t.rank();
            FactorSummary {
                factor: t.to_string(),
                rank: n,
                identity_holds: 2 * table.reflections() == table.coxeter_number * n as u64,
                reflections: table.reflections(),
                order: table.order.to_string(),
                degrees: table.degrees,
                exponents: table.exponents,
                coxeter_number: table.coxeter_number,
            }
        })
        .collect();
    let total: u64 = factors.iter().map(|f| f.reflections).sum();
    if total != system.num_roots() as u64 {
        return Err(Error::InvariantViolation(format!(
            "degree data gives {total} reflections, root generation gives {}",
            system.num_roots()
        )));
    }
    Ok(Description {
        group: group.to_string(),
        rank: group.rank(),
        reflections: system.num_roots(),
        order: group.order().to_string(),
        field: field_label(&group.coxeter_matrix()),
        root_order_digest: system.root_order_digest(),
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_type;

    #[test]
    fn h4_a2_e8() {
        let d = describe(&parse_type("H4").unwrap()).unwrap();
        assert_eq!((d.rank, d.reflections, d.order.as_str()), (4, 60, "14400"));
        assert_eq!(d.factors[0].coxeter_number, 30);
        let d = describe(&parse_type("A2").unwrap()).unwrap();
        assert_eq!((d.rank, d.reflections, d.order.as_str()), (2, 3, "6"));
        assert_eq!(d.factors[0].coxeter_number, 3);
        let d = describe(&parse_type("E8").unwrap()).unwrap();
        assert_eq!(
            (d.rank, d.reflections, d.order.as_str()),
            (8, 120, "696729600")
        );
        assert_eq!(d.factors[0].coxeter_number, 30);
        assert!(d.passed());
    }
}
