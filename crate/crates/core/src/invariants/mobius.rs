use crate::arrangement::{FlatId, IntersectionLattice, Restriction};

/// `mu(V, X)` for every flat of the lattice, by recursion over codimension.
pub fn mobius(lattice: &IntersectionLattice) -> Vec<i64> {
    let mut mu = vec![0i64; lattice.len()];
    mu[0] = 1;
    for k in 1..=lattice.max_codim() {
        for x in lattice.level(k) {
            let rx = lattice.flat(x).roots();
            let above: i64 = (0..lattice.level(k).start)
                .filter(|&z| lattice.flat(z).roots().is_subset(rx))
                .map(|z| mu[z])
                .sum();
            mu[x] = -above;
        }
    }
    mu
}

/// `mu(X, Z)` for the flats `Z` of a restriction, in the order of
/// [`Restriction::flats`].
pub fn mobius_below(
    lattice: &IntersectionLattice,
    restriction: &Restriction,
) -> Vec<(FlatId, i64)> {
    let mut out: Vec<(FlatId, i64)> = Vec::new();
    for (r, level) in restriction.levels.iter().enumerate() {
        let done = out.len();
        for &z in level {
            let value = if r == 0 {
                1
            } else {
                let rz = lattice.flat(z).roots();
                -out[..done]
                    .iter()
                    .filter(|(y, _)| lattice.flat(*y).roots().is_subset(rz))
                    .map(|(_, m)| m)
                    .sum::<i64>()
            };
            out.push((z, value));
        }
    }
    out
}
