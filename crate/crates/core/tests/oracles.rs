//! Independent oracles for the cone test, the lattice, nearest faraway
//! flats and the chamber counts.

use std::collections::BTreeSet;
use std::sync::Arc;

use farflat::arith::matrix::{dot, kernel_basis};
use farflat::arith::{AlgebraicNumber, FieldVector};
use farflat::arrangement::{Chamber, ConeTester, Face, IntersectionLattice};
use farflat::coxeter::{enumerate_group, parse_type, GroupElement, RootSet, RootSystem};
use farflat::faraway::{
    faraway_planes, g_set, nearest_faraway_by_definition, nearest_faraway_flats, BuildOptions,
    Context,
};
use farflat::invariants::beta_via_chambers;

fn system(t: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::generate(&parse_type(t).unwrap()).unwrap())
}

fn context(t: &str) -> Context {
    let ct = parse_type(t).unwrap();
    Context::build(&ct, ct.rank(), BuildOptions::for_rank(ct.rank())).unwrap()
}

/// Rays of `w C0` in the simple-root basis: `w G^{-1} e_i`.
fn chamber_rays(sys: &RootSystem, w: &GroupElement) -> Vec<FieldVector> {
    let n = sys.rank();
    let ginv = sys.gram().inverse().expect("Gram matrix is invertible");
    let wm = w.matrix(sys).mul(&ginv);
    (0..n)
        .map(|i| (0..n).map(|r| wm.get(r, i).clone()).collect())
        .collect()
}

/// `X ∩ w C0 = {0}` by vertex enumeration: a nonzero point of the cone in
/// `X` exists iff some support set `T` of rays has a one-dimensional
/// kernel in `X`-coordinates spanned by a strictly one-signed vector.
fn meets_only_at_origin(sys: &RootSystem, roots: &RootSet, w: &GroupElement) -> bool {
    let rays = chamber_rays(sys, w);
    let n = sys.rank();
    let functionals: Vec<FieldVector> = roots
        .iter()
        .map(|b| sys.gram().mul_vec(sys.root(b)))
        .collect();
    for t in 1u32..(1 << n) {
        let cols: Vec<usize> = (0..n).filter(|i| t >> i & 1 == 1).collect();
        let rows: Vec<FieldVector> = functionals
            .iter()
            .map(|f| cols.iter().map(|&c| dot(f, &rays[c])).collect())
            .collect();
        let kernel = kernel_basis(&rows, cols.len(), sys.field());
        if kernel.len() != 1 {
            continue;
        }
        let signs: BTreeSet<i8> = kernel[0].iter().map(AlgebraicNumber::sign).collect();
        if signs.len() == 1 && !signs.contains(&0) {
            return false;
        }
    }
    true
}

#[test]
fn cone_test_agrees_with_vertex_enumeration() {
    for t in ["A2", "B2", "G2", "I2(5)", "A3", "B3", "H3"] {
        let sys = system(t);
        let lattice = IntersectionLattice::build(sys.clone(), sys.rank(), 100_000).unwrap();
        let elements = enumerate_group(&sys, 10_000).unwrap();
        let tester = ConeTester::new(&sys);
        for w in &elements {
            let c = Chamber::new(w.clone());
            for f in lattice.flats() {
                if f.dim() == 0 {
                    continue;
                }
                assert_eq!(
                    tester.trivial(f.roots(), &c),
                    meets_only_at_origin(&sys, f.roots(), w),
                    "{t}: flat {:?}",
                    f.roots()
                );
            }
        }
    }
}

/// Every intersection of up to `k` hyperplanes, saturated, grouped by rank.
fn brute_force_levels(sys: &RootSystem, k: usize) -> Vec<BTreeSet<RootSet>> {
    let n = sys.num_roots();
    let mut levels = vec![BTreeSet::new(); k + 1];
    levels[0].insert(RootSet::empty());
    let mut frontier = vec![RootSet::empty()];
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for s in &frontier {
            for b in 0..n {
                if s.contains(b) {
                    continue;
                }
                let mut t = *s;
                t.insert(b);
                let sat = sys.saturate(&t);
                let r = sys.rank_of(&sat);
                if r <= k && levels[r].insert(sat) {
                    next.insert(sat);
                }
            }
        }
        frontier = next.into_iter().collect();
    }
    levels
}

#[test]
fn lattice_agrees_with_brute_force() {
    for (t, k) in [
        ("A3", 3),
        ("B3", 3),
        ("H3", 3),
        ("A4", 4),
        ("B4", 4),
        ("D4", 4),
        ("F4", 4),
        ("H4", 2),
    ] {
        let sys = system(t);
        let lattice = IntersectionLattice::build(sys.clone(), k, 1_000_000).unwrap();
        let brute = brute_force_levels(&sys, k);
        for (codim, level) in lattice.levels_as_root_sets().into_iter().enumerate() {
            let got: BTreeSet<RootSet> = level.into_iter().collect();
            assert_eq!(got, brute[codim], "{t} codim {codim}");
        }
    }
}

#[test]
fn saturation_is_the_vanishing_set_of_the_flat() {
    let sys = system("H3");
    let lattice = IntersectionLattice::build(sys.clone(), 3, 100_000).unwrap();
    for (i, f) in lattice.flats().iter().enumerate() {
        assert_eq!(sys.roots_vanishing_on(lattice.basis(i)), *f.roots());
        assert_eq!(lattice.basis(i).len(), f.dim());
    }
}

#[test]
fn nearest_faraway_matches_the_definition_on_every_face() {
    for t in ["A2", "B2", "G2", "A3", "B3", "H3"] {
        let sys = system(t);
        let lattice = IntersectionLattice::build(sys.clone(), sys.rank(), 100_000).unwrap();
        let elements = enumerate_group(&sys, 10_000).unwrap();
        let tester = ConeTester::new(&sys);
        let q: Vec<usize> = (0..lattice.len())
            .filter(|&z| lattice.flat(z).dim() > 0)
            .collect();
        for w in &elements {
            let c = Chamber::new(w.clone());
            for walls in 0u64..(1 << sys.rank()) {
                let face = Face::new(c.clone(), walls);
                let via_restriction = nearest_faraway_flats(&lattice, &tester, &face, &q).unwrap();
                let direct =
                    nearest_faraway_by_definition(&lattice, &tester, &c, walls, &q).unwrap();
                assert_eq!(via_restriction, direct, "{t}, walls {walls:b}");
            }
        }
    }
}

#[test]
fn origin_is_rejected_as_a_nearest_faraway_candidate() {
    let sys = system("A3");
    let lattice = IntersectionLattice::build(sys.clone(), 3, 100_000).unwrap();
    let tester = ConeTester::new(&sys);
    let face = Face::new(Chamber::fundamental(&sys), 0);
    let origin = lattice.len() - 1;
    assert!(nearest_faraway_flats(&lattice, &tester, &face, &[origin]).is_err());
}

#[test]
fn middle_node_of_a3_by_definition() {
    let sys = system("A3");
    let lattice = IntersectionLattice::build(sys.clone(), 3, 100_000).unwrap();
    let tester = ConeTester::new(&sys);
    let c0 = Chamber::fundamental(&sys);
    let q: Vec<usize> = lattice.level(2).collect();
    let face = Face::new(c0.clone(), 0b010);
    let got = nearest_faraway_flats(&lattice, &tester, &face, &q).unwrap();
    let direct = nearest_faraway_by_definition(&lattice, &tester, &c0, 0b010, &q).unwrap();
    assert_eq!(got, direct);
    // the only full-support codim-2 flat with core {2}: roots e1-e4, e2-e3
    assert_eq!(got.len(), 1);
}

#[test]
fn core_sets_are_nearest_faraway_sets_at_the_fundamental_chamber() {
    for t in ["A3", "B3", "H3", "A4", "B4", "D4", "F4", "H4"] {
        let ctx = context(t);
        let sys = ctx.system();
        let tester = ConeTester::new(sys);
        let c0 = Chamber::fundamental(sys);
        let n = ctx.rank();
        for core in 0u64..(1 << n) {
            let k = core.count_ones() as usize;
            if k + 2 > n {
                continue;
            }
            let face = Face::new(c0.clone(), core);
            for y in ctx.orbits().at_codim(k + 1) {
                let members = ctx.orbits().members(y);
                let nf = nearest_faraway_flats(ctx.lattice(), &tester, &face, &members).unwrap();
                assert_eq!(g_set(&ctx, core, y), nf, "{t}, core {core:b}, type {y}");
            }
        }
    }
}

#[test]
fn faraway_planes_of_a2_and_h4_at_the_fundamental_chamber() {
    let ctx = context("A2");
    let sys = ctx.system();
    let tester = ConeTester::new(sys);
    let planes: Vec<usize> = ctx.lattice().hyperplanes().collect();
    let far = faraway_planes(ctx.lattice(), &tester, &Chamber::fundamental(sys), &planes);
    assert_eq!(far.len(), 1);
    let roots = ctx.lattice().flat(far[0]).roots();
    assert_eq!(sys.support(roots.iter().next().unwrap()), 0b11);
    assert!(faraway_planes(ctx.lattice(), &tester, &Chamber::fundamental(sys), &[]).is_empty());

    let ctx = context("H4");
    let sys = ctx.system();
    let tester = ConeTester::new(sys);
    let planes: Vec<usize> = ctx.lattice().hyperplanes().collect();
    assert_eq!(
        faraway_planes(ctx.lattice(), &tester, &Chamber::fundamental(sys), &planes).len(),
        42
    );
}

#[test]
fn beta_by_chambers_matches_known_values() {
    for (t, beta) in [("A2", 1u128), ("A3", 2), ("B3", 8), ("H3", 32)] {
        let sys = system(t);
        let elements = enumerate_group(&sys, 10_000).unwrap();
        let tester = ConeTester::new(&sys);
        for k in 0..sys.num_roots() {
            let got = beta_via_chambers(
                &tester,
                &elements,
                &RootSet::empty(),
                &RootSet::singleton(k),
            )
            .unwrap();
            assert_eq!(got, beta, "{t}, hyperplane {k}");
        }
    }
}
