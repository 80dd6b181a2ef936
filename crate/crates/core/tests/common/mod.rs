//! Seeded random instances shared by the property suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use boundquiver_core::algebra::{ratio, scalar};
use boundquiver_core::automorphism::{Transvection, TransvectionWord};
use boundquiver_core::{AdmissibleIdeal, Bypass, Path, PathVector, Quiver, Scalar};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const LABELS: &str = "abcdefghijklmnopqrstuvwxyz";

/// A connected acyclic quiver without multiple arrows; arrows go from lower to
/// higher vertex index, and the arrow order is a random permutation.
pub fn random_quiver(rng: &mut TestRng, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(3.min(max_vertices)..=max_vertices);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    let limit = max_arrows.max(n - 1).min(n * (n - 1) / 2);
    let target = rng.gen_range((n - 1).max(limit / 2)..=limit);
    while edges.len() < target {
        let u = rng.gen_range(0..n - 1);
        let v = rng.gen_range(u + 1..n);
        edges.insert((u, v));
    }
    let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
    edges.shuffle(rng);
    let mut b = Quiver::builder();
    for v in 0..n {
        b.add_vertex(format!("{}", v + 1));
    }
    let labels: Vec<String> = LABELS.chars().take(edges.len()).map(String::from).collect();
    for (l, (u, v)) in labels.iter().zip(&edges) {
        b.add_arrow(l.clone(), format!("{}", u + 1), format!("{}", v + 1));
    }
    let mut order = labels.clone();
    order.shuffle(rng);
    b.arrow_order(order);
    b.build().expect("valid random quiver")
}

pub fn random_scalar(rng: &mut TestRng) -> Scalar {
    loop {
        let p = rng.gen_range(-4i64..=4);
        if p == 0 {
            continue;
        }
        let q = [1i64, 1, 1, 2, 3][rng.gen_range(0..5)];
        return ratio(p, q);
    }
}

pub fn random_transvection(rng: &mut TestRng, bypasses: &[Bypass]) -> Transvection {
    let b = bypasses[rng.gen_range(0..bypasses.len())].clone();
    Transvection::new(b, random_scalar(rng))
}

pub fn random_word(rng: &mut TestRng, q: &Quiver, max_len: usize) -> TransvectionWord {
    let bypasses = q.bypasses().unwrap();
    if bypasses.is_empty() {
        return TransvectionWord::default();
    }
    let len = rng.gen_range(0..=max_len);
    TransvectionWord::new(
        (0..len)
            .map(|_| random_transvection(rng, &bypasses))
            .collect(),
    )
}

pub fn nontrivial_paths(q: &Quiver) -> Vec<Path> {
    q.enumerate_paths()
        .unwrap()
        .into_values()
        .flatten()
        .filter(|p| !p.is_stationary())
        .collect()
}

pub fn long_paths(q: &Quiver) -> Vec<Path> {
    nontrivial_paths(q)
        .into_iter()
        .filter(|p| p.len() >= 2)
        .collect()
}

/// A monomial ideal generated by a few random paths of length at least two,
/// mostly through arrows that have bypasses so that transvections move it.
pub fn random_monomial(rng: &mut TestRng, q: &Quiver, max_gens: usize) -> AdmissibleIdeal {
    let candidates = long_paths(q);
    let (movable, rest): (Vec<Path>, Vec<Path>) = candidates
        .into_iter()
        .partition(|p| p.arrows().iter().any(|&a| q.arrow_weight(a) > 0));
    let mut gens = Vec::new();
    let k = rng.gen_range(1..=max_gens.max(1));
    for _ in 0..k {
        let pool = if !movable.is_empty() && (rest.is_empty() || rng.gen_bool(0.8)) {
            &movable
        } else {
            &rest
        };
        // The shorter of two draws: short generators are moved more often.
        if let (Some(p), Some(p2)) = (pool.choose(rng), pool.choose(rng)) {
            let p = if p2.len() < p.len() { p2 } else { p };
            gens.push(PathVector::from_path(p.clone()));
        }
    }
    AdmissibleIdeal::from_generators(q, gens).unwrap()
}

/// A random combination of paths from one random hom-space.
pub fn random_vector(rng: &mut TestRng, q: &Quiver, min_len: usize) -> Option<PathVector> {
    let keys: Vec<_> = q
        .hom_keys()
        .unwrap()
        .into_iter()
        .filter(|&(x, y)| {
            q.hom(x, y)
                .unwrap()
                .iter()
                .any(|p| p.len() >= min_len.max(1))
        })
        .collect();
    let &(x, y) = keys.choose(rng)?;
    let paths: Vec<Path> = q
        .hom(x, y)
        .unwrap()
        .into_iter()
        .filter(|p| p.len() >= min_len.max(1))
        .collect();
    let mut terms = Vec::new();
    for p in &paths {
        if rng.gen_bool(0.6) {
            terms.push((random_scalar(rng), p.clone()));
        }
    }
    if terms.is_empty() {
        terms.push((scalar(1), paths[0].clone()));
    }
    Some(PathVector::normal_form(terms).unwrap())
}

/// Rank of rational row vectors by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for k in 0..cols {
                    let d = &rows[r][k] * &f;
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// A monomial ideal generated by length-two paths through arrows with
/// bypasses; most such instances are moved by some transvection.
pub fn bypass_monomial(rng: &mut TestRng, q: &Quiver, max_gens: usize) -> AdmissibleIdeal {
    let bypasses = q.bypasses().unwrap();
    let mut gens = Vec::new();
    for _ in 0..rng.gen_range(1..=max_gens.max(1)) {
        let Some(b) = bypasses.choose(rng) else {
            break;
        };
        let alpha = b.arrow();
        let through: Vec<Path> = long_paths(q)
            .into_iter()
            .filter(|p| p.len() == 2 && p.contains(alpha))
            .collect();
        if let Some(p) = through.choose(rng) {
            gens.push(PathVector::from_path(p.clone()));
        }
    }
    AdmissibleIdeal::from_generators(q, gens).unwrap()
}
