use crate::arrangement::{Chamber, ConeTester, Face, FlatId, IntersectionLattice};
use crate::coxeter::{RootSet, RootSystem};
use crate::error::{Error, Result};

/// Hyperplanes of `planes` meeting the chamber only at the origin.
pub fn faraway_planes(
    lattice: &IntersectionLattice,
    tester: &ConeTester<'_>,
    chamber: &Chamber,
    planes: &[FlatId],
) -> Vec<FlatId> {
    let inv = chamber.element().inverse();
    planes
        .iter()
        .copied()
        .filter(|&h| tester.trivial_with_inverse(lattice.flat(h).roots(), &inv))
        .collect()
}

fn reject_origin(lattice: &IntersectionLattice, q: &[FlatId]) -> Result<()> {
    if q.iter().any(|&z| lattice.flat(z).dim() == 0) {
        return Err(Error::InvalidArgument(
            "the origin is never a nearest faraway flat; remove it from the query".into(),
        ));
    }
    Ok(())
}

/// Nearest faraway flats of `q` for the chamber of `face` with associated
/// face `face`: the flats of `q` that are hyperplanes of the restriction to
/// the span of the face and miss the face away from the origin.
pub fn nearest_faraway_flats(
    lattice: &IntersectionLattice,
    tester: &ConeTester<'_>,
    face: &Face,
    q: &[FlatId],
) -> Result<Vec<FlatId>> {
    reject_origin(lattice, q)?;
    let system = lattice.system();
    let span = face.span_roots(system);
    let dim = face.dim(system);
    let inv = face.chamber.element().inverse();
    Ok(q.iter()
        .copied()
        .filter(|&z| {
            let f = lattice.flat(z);
            f.dim() + 1 == dim
                && span.is_subset(f.roots())
                && tester.trivial_with_inverse(f.roots(), &inv)
        })
        .collect())
}

/// Faces `J` of the chamber whose span contains `X`, of minimal dimension.
pub fn associated_faces(system: &RootSystem, roots: &RootSet, chamber: &Chamber) -> Vec<u64> {
    let back = chamber.element().inverse().map_set(roots);
    let containing: Vec<u64> = (0u64..(1 << system.rank()))
        .filter(|&j| system.standard_parabolic(j).is_subset(&back))
        .collect();
    let best = containing.iter().map(|j| j.count_ones()).max().unwrap_or(0);
    containing
        .into_iter()
        .filter(|j| j.count_ones() == best)
        .collect()
}

/// Nearest faraway flats straight from the definition: faraway for the
/// chamber, and the minimal face whose span contains the flat has
/// dimension one more and equals `C^J`. Errors if a flat has more than one
/// minimal face.
pub fn nearest_faraway_by_definition(
    lattice: &IntersectionLattice,
    tester: &ConeTester<'_>,
    chamber: &Chamber,
    walls: u64,
    q: &[FlatId],
) -> Result<Vec<FlatId>> {
    reject_origin(lattice, q)?;
    let system = lattice.system();
    let n = system.rank();
    let mut out = Vec::new();
    for &z in q {
        let f = lattice.flat(z);
        if !tester.trivial(f.roots(), chamber) {
            continue;
        }
        let faces = associated_faces(system, f.roots(), chamber);
        if faces.len() != 1 {
            return Err(Error::InvariantViolation(format!(
                "flat {:?} has {} minimal faces",
                f.roots(),
                faces.len()
            )));
        }
        let j = faces[0];
        if n - j.count_ones() as usize == f.dim() + 1 && j == walls {
            out.push(z);
        }
    }
    Ok(out)
}
