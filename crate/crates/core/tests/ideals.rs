mod common;

use std::collections::{BTreeMap, BTreeSet};

use boundquiver_core::algebra::scalar;
use boundquiver_core::{
    AdmissibleIdeal, ArrowSubstitution, DecreasingProduct, Path, PathVector, Quiver, Scalar,
    SeedSearch, Transvection, TransvectionWord,
};
use common::*;
use rand::Rng;

fn row(r: &PathVector, paths: &[Path]) -> Vec<Scalar> {
    paths.iter().map(|p| r.coefficient(p)).collect()
}

/// All products `w·g·v` of generators with paths, restricted to one hom-space.
fn spanning_set(
    q: &Quiver,
    gens: &[PathVector],
    x: boundquiver_core::Vertex,
    y: boundquiver_core::Vertex,
) -> Vec<PathVector> {
    let mut out = Vec::new();
    for g in gens {
        for before in q.hom(x, g.source()).unwrap() {
            for after in q.hom(g.target(), y).unwrap() {
                out.push(g.extend(&before, &after).unwrap());
            }
        }
    }
    out
}

struct Instance {
    q: Quiver,
    i0: AdmissibleIdeal,
    psi: ArrowSubstitution,
    target: AdmissibleIdeal,
}

/// A word whose factors mostly move `i0`.
fn moving_word(g: &mut TestRng, q: &Quiver, i0: &AdmissibleIdeal) -> TransvectionWord {
    let bypasses = q.bypasses().unwrap();
    let (fixing, moving): (Vec<_>, Vec<_>) = bypasses
        .into_iter()
        .partition(|b| i0.preserved_by(q, b).unwrap());
    let mut factors = Vec::new();
    for _ in 0..g.gen_range(1..=6) {
        let pool = if !moving.is_empty() && (fixing.is_empty() || g.gen_bool(0.7)) {
            &moving
        } else {
            &fixing
        };
        if pool.is_empty() {
            break;
        }
        factors.push(Transvection::new(
            pool[g.gen_range(0..pool.len())].clone(),
            random_scalar(g),
        ));
    }
    TransvectionWord::new(factors)
}

fn instance(seed: u64) -> (Instance, TestRng) {
    let mut g = rng(seed);
    let q = random_quiver(&mut g, 6, 10);
    let i0 = random_monomial(&mut g, &q, 3);
    let psi = moving_word(&mut g, &q, &i0).evaluate(&q);
    let target = i0.image(&q, &psi).unwrap();
    (Instance { q, i0, psi, target }, g)
}

#[test]
fn ideal_spaces_match_independent_span() {
    for seed in 0..150 {
        let (inst, _) = instance(0x3_0000 + seed);
        let Instance { q, i0, psi, target } = &inst;
        let gens: Vec<PathVector> = i0.generators().iter().map(|r| psi.apply(r)).collect();
        for (x, y) in q.hom_keys().unwrap() {
            let paths = q.nontrivial_hom(x, y).unwrap();
            if paths.is_empty() {
                continue;
            }
            let span: Vec<Vec<Scalar>> = spanning_set(q, &gens, x, y)
                .iter()
                .map(|r| row(r, &paths))
                .collect();
            let dim = rank(span.clone());
            assert_eq!(target.dimension(x, y), dim);
            assert_eq!(
                i0.dimension(x, y),
                paths.iter().filter(|p| i0.contains_path(p)).count()
            );
            for r in target.component(x, y) {
                let mut with = span.clone();
                with.push(row(r, &paths));
                assert_eq!(rank(with), dim);
            }
        }
    }
}

#[test]
fn groebner_leads_biject_onto_monomial_paths() {
    let mut moved = 0;
    for seed in 0..300 {
        let (inst, _) = instance(0x3_5000 + seed);
        let Instance { q, i0, target, .. } = &inst;
        let monomials: BTreeSet<Path> = i0.monomial_paths().into_iter().collect();
        let leads: Vec<Path> = target
            .groebner_basis()
            .map(|r| r.leading_path().unwrap().clone())
            .collect();
        let lead_set: BTreeSet<Path> = leads.iter().cloned().collect();
        assert_eq!(leads.len(), lead_set.len());
        assert_eq!(lead_set, monomials);
        for r in target.groebner_basis() {
            let u = r.leading_path().unwrap();
            assert!(r.coefficient(u) == scalar(1));
            for v in r.support().iter().filter(|v| *v != u) {
                assert!(q.derivation_order(u, v).unwrap().is_some_and(|k| k >= 1));
            }
        }
        let table = i0.groebner_structure(q, target).unwrap();
        assert_eq!(table.keys().cloned().collect::<BTreeSet<_>>(), monomials);
        moved += usize::from(target != i0);
    }
    assert!(moved > 100);
}

#[test]
fn dilatations_fix_monomial_ideals() {
    for seed in 0..100 {
        let (inst, mut g) = instance(0x3_1000 + seed);
        let scales: BTreeMap<_, _> = inst
            .q
            .arrows()
            .map(|a| (a, random_scalar(&mut g)))
            .collect();
        let d = ArrowSubstitution::dilatation(&inst.q, &scales).unwrap();
        assert_eq!(inst.i0.image(&inst.q, &d).unwrap(), inst.i0);
    }
}

#[test]
fn preservation_does_not_depend_on_the_scalar() {
    for seed in 0..150 {
        let (inst, _) = instance(0x3_2000 + seed);
        let Instance { q, i0, .. } = &inst;
        for b in q.bypasses().unwrap() {
            let fixed: Vec<bool> = [1, -1, 3]
                .into_iter()
                .map(|t| {
                    i0.image(q, &ArrowSubstitution::transvection(q, &b, &scalar(t)))
                        .unwrap()
                        == *i0
                })
                .collect();
            assert!(fixed.iter().all(|&f| f == fixed[0]));
            assert_eq!(i0.preserved_by(q, &b).unwrap(), fixed[0]);
        }
    }
}

#[test]
fn decreasing_product_fixes_monomial_ideal_iff_every_factor_does() {
    let (mut fixing, mut moving) = (0, 0);
    for seed in 0..300 {
        let (inst, mut g) = instance(0x3_3000 + seed);
        let Instance { q, i0, .. } = &inst;
        let mut factors = Vec::new();
        for b in q.bypasses().unwrap() {
            let p = if i0.preserved_by(q, &b).unwrap() {
                0.5
            } else {
                0.25
            };
            if g.gen_bool(p) {
                factors.push(Transvection::new(b, random_scalar(&mut g)));
            }
        }
        let product = DecreasingProduct::new(factors).unwrap();
        let fixes = i0.image(q, &product.evaluate(q)).unwrap() == *i0;
        assert_eq!(fixes, i0.preserved_by_all(q, &product).unwrap());
        if fixes {
            fixing += 1;
        } else {
            moving += 1;
        }
    }
    assert!(fixing > 30 && moving > 30, "{fixing} {moving}");
}

#[test]
fn canonical_automorphism_is_independent_of_the_seed() {
    let mut nontrivial = 0;
    for seed in 0..200 {
        let (inst, mut g) = instance(0x3_6000 + seed);
        let Instance { q, i0, psi, target } = &inst;
        let canonical = i0.canonical_automorphism(q, target, psi).unwrap();
        assert_eq!(i0.image(q, &canonical.evaluate(q)).unwrap(), *target);
        for t in canonical.factors() {
            assert!(!i0.preserved_by(q, &t.bypass).unwrap());
        }
        let preserving: Vec<_> = q
            .bypasses()
            .unwrap()
            .into_iter()
            .filter(|b| i0.preserved_by(q, b).unwrap())
            .collect();
        for _ in 0..3 {
            let mut other = psi.clone();
            for _ in 0..g.gen_range(0..4) {
                if preserving.is_empty() {
                    break;
                }
                let b = preserving[g.gen_range(0..preserving.len())].clone();
                other = other.then_transvection(&Transvection::new(b, random_scalar(&mut g)));
            }
            let scales: BTreeMap<_, _> = q.arrows().map(|a| (a, random_scalar(&mut g))).collect();
            let other = other.compose(&ArrowSubstitution::dilatation(q, &scales).unwrap());
            assert_eq!(
                i0.canonical_automorphism(q, target, &other).unwrap(),
                canonical
            );
        }
        match i0.find_seed(q, target).unwrap() {
            SeedSearch::Found(found) => {
                assert_eq!(i0.image(q, &found).unwrap(), *target);
                assert_eq!(
                    i0.canonical_automorphism(q, target, &found).unwrap(),
                    canonical
                );
            }
            other => panic!("seed {seed}: {other:?}"),
        }
        nontrivial += usize::from(!canonical.is_empty());
    }
    assert!(nontrivial > 60, "{nontrivial}");
}

#[test]
fn ideals_with_other_dimensions_are_not_conjugate() {
    let mut checked = 0;
    for seed in 0..100 {
        let (inst, mut g) = instance(0x3_7000 + seed);
        let other = random_monomial(&mut g, &inst.q, 3);
        if other.dimensions() == inst.i0.dimensions() {
            continue;
        }
        let result = inst
            .i0
            .find_seed(&inst.q, &other.image(&inst.q, &inst.psi).unwrap())
            .unwrap();
        assert!(matches!(result, SeedSearch::NotConjugate(_)));
        checked += 1;
    }
    assert!(checked > 20);
}

/// Classes generated by the supports of minimal relations, found as the
/// minimal supports `S` with `I ∩ span(S) ≠ 0`.
fn circuit_classes(q: &Quiver, ideal: &AdmissibleIdeal) -> Vec<Vec<Path>> {
    let mut out = Vec::new();
    for (x, y) in q.hom_keys().unwrap() {
        let basis: Vec<&PathVector> = ideal.component(x, y);
        if basis.is_empty() {
            continue;
        }
        let paths = q.nontrivial_hom(x, y).unwrap();
        let n = paths.len();
        assert!(n <= 14);
        let dim_within = |mask: u32| -> usize {
            let outside: Vec<Path> = (0..n)
                .filter(|i| mask & (1 << i) == 0)
                .map(|i| paths[i].clone())
                .collect();
            basis.len() - rank(basis.iter().map(|r| row(r, &outside)).collect())
        };
        let dims: Vec<usize> = (0..1u32 << n).map(dim_within).collect();
        let mut classes: Vec<BTreeSet<Path>> = Vec::new();
        for mask in 1..1u32 << n {
            let minimal = dims[mask as usize] > 0
                && (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .all(|i| dims[(mask & !(1 << i)) as usize] == 0);
            if !minimal {
                continue;
            }
            let support: BTreeSet<Path> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| paths[i].clone())
                .collect();
            let (mut merged, rest): (Vec<_>, Vec<_>) =
                classes.into_iter().partition(|c| !c.is_disjoint(&support));
            let mut union = support;
            for c in merged.drain(..) {
                union.extend(c);
            }
            classes = rest;
            classes.push(union);
        }
        out.extend(
            classes
                .into_iter()
                .filter(|c| c.len() > 1)
                .map(|c| c.into_iter().collect::<Vec<_>>()),
        );
    }
    out.sort();
    out
}

#[test]
fn relation_classes_match_minimal_supports() {
    let mut linked = 0;
    for seed in 0..150 {
        let (inst, _) = instance(0x3_8000 + seed);
        let Instance { q, target, .. } = &inst;
        let expected = circuit_classes(q, target);
        assert_eq!(target.relation_classes(), expected);
        linked += usize::from(!expected.is_empty());
    }
    assert!(linked > 40, "{linked}");
}

#[test]
fn minimal_relations_decompose_members() {
    for seed in 0..150 {
        let (inst, mut g) = instance(0x3_9000 + seed);
        let Instance { target, .. } = &inst;
        let basis: Vec<PathVector> = target.groebner_basis().cloned().collect();
        if basis.is_empty() {
            continue;
        }
        let first = &basis[g.gen_range(0..basis.len())];
        let mut r = first.scale(&random_scalar(&mut g));
        for b in basis.iter().filter(|b| b.is_parallel_to(first)) {
            if g.gen_bool(0.5) {
                r.add_scaled(&random_scalar(&mut g), b).unwrap();
            }
        }
        if r.is_zero() || r.len() > 16 {
            continue;
        }
        let parts = target.minimal_relations(&r).unwrap();
        let mut sum = PathVector::zero(r.source(), r.target());
        let mut seen = BTreeSet::new();
        for m in &parts {
            let m = m.relation();
            assert!(target.contains(m));
            assert!(target.is_minimal(m, 20).unwrap());
            for p in m.support() {
                assert!(seen.insert(p.clone()));
                assert_eq!(m.coefficient(&p), r.coefficient(&p));
            }
            sum = sum.add(m).unwrap();
        }
        assert_eq!(sum, r);
    }
}
